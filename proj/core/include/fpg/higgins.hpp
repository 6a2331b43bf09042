#pragma once

#include <cstdint>
#include <vector>

#include "fpg/covgraph.hpp"
#include "fpg/freeprod.hpp"

namespace fpg {

/// How a vertex was attached to the Θ-trivial tree.
enum class TreeLink : std::uint8_t {
  Base,       // the base vertex itself
  KernelEdge, // one λ-edge whose label lies in ker θ_λ
  Search,     // shortest readable word with trivial Θ-image
  Correction, // h⁻¹·g_N for some h ∈ H with Θ(h) = Θ(g_N)
};

/// A record of a Correction link: p_N = h⁻¹·path.
struct TreeCorrection {
  Vertex vertex;
  Word path;
  Word h;
};

/// Spanning tree of the coset graph whose transversal words all lie in ker Θ.
/// As group elements the tree isomorphisms β_N of the projection are p_N⁻¹.
struct ThetaTree {
  std::vector<Word> transversal;  // p_N, p_base = ε
  std::vector<Vertex> parent;     // kNoVertex for the base
  std::vector<Word> connector;    // p_N = p_parent · connector
  std::vector<TreeLink> link;
  std::vector<TreeCorrection> extension_log;
};

struct TreeBounds {
  std::size_t word_bound = 12;       // max |Θ-image| during the readable-word search
  std::size_t extension_bound = 12;  // max number of generator letters in h
  std::size_t state_cap = 1u << 18;  // per search
};

/// Builds the tree on a complete coset graph. `variant` selects a
/// deterministic edge ordering; 0 is the natural (λ, elem) order and larger
/// values are fixed shuffles used for retries.
/// Throws Error{TreeBoundExceeded|GraphNotComplete}.
ThetaTree build_theta_tree(const FactorSystem& sys, const CoreGraph& graph, const TreeBounds& bounds,
                           std::uint32_t variant = 0);

/// H = ∗ H_λ where H_λ is generated by p_N·g·p_{Ng}⁻¹ over the λ-edges.
struct HigginsFactor {
  Factor lambda = 0;
  std::vector<Word> gens;    // deduplicated up to inversion, ε dropped
  std::vector<Vertex> roots; // component roots, smallest vertex first
  std::vector<Word> betas;   // β_{λ,μ} = p_root⁻¹, parallel to roots
};

struct HigginsDecomposition {
  std::vector<HigginsFactor> factors;
};

HigginsDecomposition higgins_decompose(const FactorSystem& sys, const CoreGraph& graph, const ThetaTree& tree);

}  // namespace fpg
