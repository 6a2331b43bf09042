#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fpg/certificate.hpp"
#include "fpg/covgraph.hpp"
#include "fpg/freeprod.hpp"

namespace fpg {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string details;
  double elapsed_ms = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  /// True iff every check that ran passed.
  bool passed() const;
  const CheckResult* find(std::string_view name) const;
};

/// Runs the independent checks against a certificate for ⟨h_gens⟩:
///
///   C1 every x_{λ,μ} is Θ-trivial
///   C2 θ-images of the H_λ generators generate exactly B_λ
///   C3 each listed vertex group equals {x⁻¹gx ∈ H : g ∈ G_λ}, exhaustively
///   C4 reps sit in distinct double cosets G_λxH, cover every one with a
///      nontrivial vertex group, and ε represents G_λH when H ∩ G_λ ≠ 1
///   C5 vertex groups and free bases together generate H
///   C6 Kurosh invariants of H equal the union of those of the H_λ
///   C7 no reduced word of length ≤ L over the certificate's letters (vertex
///      group elements, free generators and their inverses) is trivial in G;
///      exhaustive within budget, otherwise sampled
///
/// Throws Error{MalformedCertificate} when the certificate does not match the
/// system or its parallel arrays disagree in length.
VerificationReport verify_certificate(const FactorSystem& sys, std::span<const Word> h_gens,
                                      const ConjectureCertificate& cert, const Bounds& bounds);

/// Same, against an already completed coset graph of H.
VerificationReport verify_certificate(const FactorSystem& sys, const CoreGraph& h_graph,
                                      const ConjectureCertificate& cert, const Bounds& bounds);

/// Only the checks named in `which` (e.g. {"C5", "C6"}); others are reported Skipped.
VerificationReport verify_certificate(const FactorSystem& sys, const CoreGraph& h_graph,
                                      const ConjectureCertificate& cert, const Bounds& bounds,
                                      std::span<const std::string_view> which);

/// Orbit id of every vertex under the λ-action; G_λ-orbits on right cosets
/// are in bijection with double cosets G_λxH (x ↦ orbit of H·x⁻¹). Ids are
/// assigned in order of smallest vertex. Throws Error{GraphNotComplete}.
std::vector<std::uint32_t> brute_force_double_cosets(const CoreGraph& graph, Factor lambda);

/// All products of at most `max_letters` generators or inverses, as normal forms.
std::unordered_set<Word, WordHash> product_ball(const FreeProduct& g, std::span<const Word> gens,
                                                std::size_t max_letters);

/// True iff w is a product of at most `max_letters` generators or inverses.
bool brute_force_membership(const FreeProduct& g, std::span<const Word> gens, const Word& w,
                            std::size_t max_letters);

}  // namespace fpg
