#pragma once

#include <string>
#include <vector>

#include "fpg/freeprod.hpp"

namespace fpg::testing {

// G = Z2∗Z2, B = Z2∗1, θ₀ = id, θ₁ trivial; a = 0:1, b = 1:1.
inline FactorSystem sys_a() {
  const auto z2 = FiniteGroup::cyclic(2);
  return FactorSystem({z2, z2}, {z2, FiniteGroup::trivial()}, {{0, 1}, {0, 0}});
}

inline std::vector<Word> sys_a_gens(const FreeProduct& g) { return {g.parse("0:1"), g.parse("1:1 0:1 1:1")}; }

// G = Z2∗Z3; H = ker(G → Z3, a ↦ 0, b ↦ 1).
inline FreeProduct sys_b() { return FreeProduct({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)}); }

inline std::vector<Word> sys_b_gens(const FreeProduct& g) {
  return {g.parse("0:1"), g.parse("1:1 0:1 1:2"), g.parse("1:2 0:1 1:1")};
}

/// Every single-syllable word of G: generators of H = G.
inline std::vector<Word> all_syllables(const FreeProduct& g) {
  std::vector<Word> out;
  for (Factor f = 0; f < g.rank(); ++f)
    for (Elem x = 1; x < g.factor(f).order(); ++x) out.push_back(Word::syllable(f, x));
  return out;
}

inline std::vector<std::string> words_text(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(format_word(w));
  return out;
}

}  // namespace fpg::testing
