#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fpg/freeprod.hpp"

namespace fpg {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Folded, saturated subgroup graph of H ≤ ∗G_λ.
///
/// Vertices are right cosets of H (vertex 0 is H itself); for each factor λ
/// the partial map `act(λ, v, g)` sends the coset of v to the coset of v·g.
/// Within a λ-component the present vertices are cosets S·a of a stabilizer
/// S ≤ G_λ and every induced edge between them is present. When every
/// action is defined the graph is the full coset table and the vertex count
/// is [G : H].
///
/// Vertices are numbered in canonical breadth-first order from the base
/// (edges visited by factor, then element), so equal subgroups give equal
/// graphs.
class CoreGraph {
 public:
  static constexpr Vertex base = 0;

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::uint32_t factor_order(Factor f) const { return orders_.at(f); }

  /// kNoVertex when undefined; g = 0 maps v to itself.
  Vertex act(Factor f, Vertex v, Elem g) const {
    if (g == 0) return v;
    return tables_[f][static_cast<std::size_t>(v) * orders_[f] + g];
  }

  bool complete() const noexcept { return complete_; }
  const std::vector<Word>& subgroup_gens() const noexcept { return gens_; }

  /// Endpoint of reading w from `start`, or kNoVertex if the path leaves the graph.
  Vertex trace(const Word& w, Vertex start = base) const;

 private:
  friend class GraphBuilder;

  std::size_t vertex_count_ = 1;
  std::vector<std::uint32_t> orders_;
  std::vector<std::vector<Vertex>> tables_;  // per factor, vertex-major
  std::vector<Word> gens_;
  bool complete_ = false;
};

/// Core graph of ⟨gens⟩ by folding and saturation.
CoreGraph build_core(const FreeProduct& g, std::span<const Word> gens);

/// Adds cosets until every action is defined. Throws
/// Error{IndexBoundExceeded} once the vertex count would exceed max_cosets.
CoreGraph complete_graph(const FreeProduct& g, const CoreGraph& core, std::size_t max_cosets);

/// True iff w reads a closed path at the base.
bool membership(const CoreGraph& graph, const Word& w);

/// One connected component of the λ-edges.
struct LambdaComponent {
  Factor lambda = 0;
  Vertex root = 0;                  // smallest vertex of the component
  std::vector<Vertex> vertices;     // breadth-first order from root
  std::vector<Elem> coset_label;    // a_u, parallel to vertices; root gets 0
  std::vector<Vertex> tree_parent;  // discovering vertex, kNoVertex for root
  std::vector<Elem> tree_label;     // edge label parent -> vertex
  ElemSet stabilizer;               // {g : root·g = root}
};

/// Components ordered by their smallest vertex; isolated vertices are
/// singleton components with trivial stabilizer.
std::vector<LambdaComponent> lambda_components(const FreeProduct& g, const CoreGraph& graph, Factor lambda);

/// Based-graph fingerprint: equal bytes iff the labelled graphs are isomorphic
/// by an isomorphism fixing the base.
std::vector<std::uint8_t> canonical_encoding(const CoreGraph& graph);

std::string to_dot(const CoreGraph& graph);

/// Generators of the subgroup a graph represents, read off the graph alone:
/// p_u·g·p_v⁻¹ over non-tree edges of the canonical breadth-first tree, ε
/// and inverse duplicates dropped. Depends only on the subgroup.
std::vector<Word> schreier_generators(const FreeProduct& g, const CoreGraph& graph);

}  // namespace fpg
