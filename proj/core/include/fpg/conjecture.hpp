#pragma once

#include <span>
#include <string>
#include <vector>

#include "fpg/certificate.hpp"
#include "fpg/covgraph.hpp"
#include "fpg/freeprod.hpp"

namespace fpg {

/// Decomposes H = ⟨h_gens⟩ as ∗_λ H_λ with Θ(H_λ) = B_λ and
/// H_λ = ∗_μ (H ∩ G_λ^{x_{λ,μ}}) ∗ F_λ, every x_{λ,μ} in ker Θ.
///
/// Steps: check Θ(H) = B on the B side; complete the coset graph of H; build
/// a Θ-trivial tree and the Schreier generators of each H_λ; take the Kurosh
/// decomposition of each H_λ from its own core graph; correct each Kurosh
/// representative β′ by g ∈ G_λ with θ_λ(g) = Θ(β′) to get x = g⁻¹·β′.
///
/// Each attempt is checked for generation (C5) and Kurosh-invariant
/// additivity (C6); a failing tree is replaced by the next deterministic
/// variant, up to `bounds.tree_retries` more times. If every variant fails,
/// the Kurosh basis of H itself is normalized by free-product automorphisms
/// instead (Route::KuroshMoves).
///
/// Throws Error{ThetaNotSurjectiveOntoB|IndexBoundExceeded|TreeBoundExceeded|
/// CrossFactorPieceNontrivial|BetaImageNotInFactor|NotFreeProduct}.
ConjectureCertificate conjecture_decompose(const FactorSystem& sys, std::span<const Word> h_gens,
                                           const Bounds& bounds);

/// Θ(⟨h_gens⟩) = B, decided on the coset graph of the image subgroup in B.
bool theta_image_is_onto(const FactorSystem& sys, std::span<const Word> h_gens);

/// One attempt with a fixed Θ-trivial tree variant against a completed coset graph.
ConjectureCertificate conjecture_attempt(const FactorSystem& sys, const CoreGraph& h_graph, const Bounds& bounds,
                                         std::uint32_t variant);

/// The fallback route on a completed coset graph.
ConjectureCertificate conjecture_by_moves(const FactorSystem& sys, const CoreGraph& h_graph, const Bounds& bounds);

}  // namespace fpg
