#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpg/freeprod.hpp"

namespace fpg {

/// Limits shared by the decomposition pipeline and the verifier.
struct Bounds {
  std::size_t max_cosets = 10000;
  std::size_t tree_word_bound = 12;
  std::uint32_t tree_retries = 8;
  std::size_t free_test_len = 8;
  std::uint64_t seed = 0;
  /// Reduced words the bounded freeness test may enumerate exhaustively
  /// (8 bytes each) before it falls back to sampling that many.
  std::size_t free_test_budget = 16'000'000;
};

/// How the H_λ were found. `HigginsTree`: Schreier generators of a Θ-trivial
/// tree, then Kurosh inside each H_λ. `KuroshMoves`, the fallback when no tree
/// variant gives a free product: the Kurosh basis of H itself, moved by
/// partial conjugations and transvections until every piece maps into a
/// single B_λ; `betas` are then empty and `transversal` is the Kurosh tree's.
enum class Route : std::uint8_t { HigginsTree, KuroshMoves };

/// The per-factor part of a certificate: H_λ, how it was found, and its
/// decomposition H_λ = ∗_μ (H ∩ G_λ^{x_{λ,μ}}) ∗ F_λ.
///
/// `betas` are the representatives from the Θ-trivial tree, one per
/// λ-component of the coset graph. The remaining vectors are parallel, one
/// entry per nontrivial vertex group of H_λ: `beta_primes` are the Kurosh
/// representatives (a piece whose representative maps outside B_λ is first
/// conjugated by some h from the other free factors of H, turning β′ into
/// β′·h), `g_corrections` the elements of G_λ with
/// θ_λ(g) = Θ(β′), and `reps` = g⁻¹·β′. `stabilizers[i]` is S with
/// H ∩ G_λ^{x} = x⁻¹·S·x, and `vertex_groups[i]` lists its nontrivial elements.
struct FactorCertificate {
  Factor lambda = 0;
  std::vector<Word> h_gens;
  std::vector<Word> betas;
  std::vector<Word> beta_primes;
  std::vector<Elem> g_corrections;
  std::vector<Word> reps;
  std::vector<ElemSet> stabilizers;
  std::vector<std::vector<Word>> vertex_groups;
  std::vector<Word> free_basis;

  bool operator==(const FactorCertificate&) const = default;
};

struct ConjectureCertificate {
  std::string system_hash;
  /// Canonical generators of H read off its coset graph (independent of the
  /// generators the caller supplied).
  std::vector<Word> subgroup_gens;
  std::size_t index = 0;
  Route route = Route::HigginsTree;
  std::uint32_t tree_variant = 0;
  std::vector<Word> transversal;  // p_N per coset of the tree used
  std::vector<FactorCertificate> factors;

  bool operator==(const ConjectureCertificate&) const = default;
};

}  // namespace fpg
