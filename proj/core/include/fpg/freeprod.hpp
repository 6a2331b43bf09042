#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fpg/fingroup.hpp"

namespace fpg {

using Factor = std::uint32_t;

struct Syllable {
  Factor factor;
  Elem elem;  // never the identity

  auto operator<=>(const Syllable&) const = default;
};

/// An element of a free product, always held in normal form: no identity
/// syllables and no two adjacent syllables from the same factor. Equality of
/// group elements is therefore structural equality.
class Word {
 public:
  Word() = default;

  static Word syllable(Factor f, Elem e);

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  std::size_t size() const noexcept { return syl_.size(); }
  bool empty() const noexcept { return syl_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syl_[i]; }

  auto operator<=>(const Word&) const = default;

 private:
  friend class FreeProduct;
  std::vector<Syllable> syl_;
};

/// A free product of finitely many finite groups, indexed 0..|Λ|-1.
class FreeProduct {
 public:
  explicit FreeProduct(std::vector<FiniteGroup> factors);

  std::size_t rank() const noexcept { return factors_.size(); }
  const FiniteGroup& factor(Factor f) const { return factors_.at(f); }
  const std::vector<FiniteGroup>& factors() const noexcept { return factors_; }

  /// Normal form of an arbitrary syllable sequence (identity syllables
  /// allowed). Throws Error{MalformedWord} on out-of-range indices.
  Word normalize(const std::vector<Syllable>& raw) const;

  Word multiply(const Word& u, const Word& v) const;
  Word invert(const Word& w) const;
  /// x⁻¹·w·x.
  Word conjugate(const Word& w, const Word& x) const;
  /// Appends one letter (identity allowed) and reduces at the seam.
  void push(Word& w, Factor f, Elem e) const;

  /// Parses `λ:k λ:k ...`; the empty string is the identity.
  Word parse(std::string_view text) const;

  bool operator==(const FreeProduct& o) const noexcept { return factors_ == o.factors_; }

 private:
  std::vector<FiniteGroup> factors_;
};

std::string format_word(const Word& w);

/// The two sides of a factor-wise map Θ: G = ∗G_λ → B = ∗B_λ.
enum class Side { G, B };

/// G, B and the factor maps θ_λ. Every θ_λ must be surjective.
class FactorSystem {
 public:
  /// Throws Error{InvalidInput|NotSurjective} (and the GroupHom errors).
  FactorSystem(std::vector<FiniteGroup> g_factors, std::vector<FiniteGroup> b_factors,
               std::vector<std::vector<Elem>> theta_maps);

  /// System with B = G and Θ the identity; used for plain subgroup work.
  static FactorSystem identity(std::vector<FiniteGroup> factors);

  std::size_t rank() const noexcept { return g_.rank(); }
  const FreeProduct& g() const noexcept { return g_; }
  const FreeProduct& b() const noexcept { return b_; }
  const FreeProduct& side(Side s) const noexcept { return s == Side::G ? g_ : b_; }
  const GroupHom& theta(Factor f) const { return theta_.at(f); }
  const std::vector<GroupHom>& thetas() const noexcept { return theta_; }

  Word multiply(Side s, const Word& u, const Word& v) const { return side(s).multiply(u, v); }
  Word invert(Side s, const Word& w) const { return side(s).invert(w); }
  Word conjugate(const Word& w, const Word& x) const { return g_.conjugate(w, x); }

  /// Θ applied syllable-wise, then reduced over B.
  Word theta_word(const Word& w) const;

  /// Stable 64-bit FNV-1a digest of all tables; identifies the system in certificates.
  std::string hash() const;

 private:
  FreeProduct g_;
  FreeProduct b_;
  std::vector<GroupHom> theta_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace fpg
