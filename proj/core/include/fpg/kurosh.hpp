#pragma once

#include <vector>

#include "fpg/covgraph.hpp"
#include "fpg/freeprod.hpp"

namespace fpg {

/// An edge u --label--> v of factor `lambda`.
struct Edge {
  Factor lambda;
  Vertex from;
  Elem label;
  Vertex to;

  auto operator<=>(const Edge&) const = default;
};

/// Spanning trees inside each λ-component, a global tree τ chosen inside
/// their union, and the transversal words read along τ.
struct SpanningData {
  std::vector<std::vector<LambdaComponent>> components;  // [λ][μ]
  std::vector<Edge> component_trees;                     // ∪ τ_{λ,μ}, parent -> child
  std::vector<Edge> global_tree;                         // τ ⊆ ∪ τ_{λ,μ}, as traversed from the base
  std::vector<Word> transversal;                         // p_N per vertex, p_base = ε
};

SpanningData spanning_data(const FreeProduct& g, const CoreGraph& graph);

/// H ∩ G_λ^x with x = rep. `stabilizer` is the subgroup S ≤ G_λ with
/// H ∩ G_λ^x = x⁻¹·S·x; `vertex_group` lists x⁻¹·s·x for s ∈ S \ {1}.
struct KuroshPiece {
  Factor lambda = 0;
  Word rep;
  ElemSet stabilizer;
  std::vector<Word> vertex_group;
};

/// H = ∗ (H ∩ G_λ^{x}) ∗ F with F free on `free_basis`.
///
/// The representative of a component rooted at N is x = p_N⁻¹, so that the
/// vertex group x⁻¹·S·x = p_N·S·p_N⁻¹ is read as loops at the base. Pieces
/// with trivial stabilizer are dropped.
struct KuroshDecomposition {
  std::vector<KuroshPiece> pieces;
  std::vector<Word> free_basis;
  std::size_t free_rank = 0;
};

KuroshDecomposition kurosh_decompose(const FreeProduct& g, const CoreGraph& graph);
KuroshDecomposition kurosh_decompose(const FreeProduct& g, const CoreGraph& graph, const SpanningData& span);

/// Isomorphism-invariant summary: sorted (λ, conjugacy-class key of the
/// stabilizer in G_λ) per piece, and the free rank.
struct KuroshInvariants {
  std::vector<std::pair<Factor, ElemSet>> classes;
  std::size_t free_rank = 0;

  bool operator==(const KuroshInvariants&) const = default;
};

KuroshInvariants kurosh_invariants(const FreeProduct& g, const KuroshDecomposition& decomp);

}  // namespace fpg
