#include "fpg/kurosh.hpp"

#include <algorithm>
#include <tuple>

#include "fpg/error.hpp"

namespace fpg {

SpanningData spanning_data(const FreeProduct& g, const CoreGraph& graph) {
  SpanningData sd;
  const std::size_t n = graph.vertex_count();
  for (Factor f = 0; f < graph.rank(); ++f) {
    sd.components.push_back(lambda_components(g, graph, f));
    for (const auto& c : sd.components.back())
      for (std::size_t i = 1; i < c.vertices.size(); ++i)
        sd.component_trees.push_back({f, c.tree_parent[i], c.tree_label[i], c.vertices[i]});
  }

  // Adjacency over ∪τ_{λ,μ}, both directions, ordered by (λ, elem, vertex).
  struct Arc {
    Factor lambda;
    Elem label;
    Vertex to;
    std::size_t edge;
    auto key() const { return std::tie(lambda, label, to); }
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t i = 0; i < sd.component_trees.size(); ++i) {
    const Edge& e = sd.component_trees[i];
    adj[e.from].push_back({e.lambda, e.label, e.to, i});
    adj[e.to].push_back({e.lambda, g.factor(e.lambda).inv(e.label), e.from, i});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end(), [](const Arc& x, const Arc& y) { return x.key() < y.key(); });

  sd.transversal.assign(n, Word{});
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{CoreGraph::base};
  seen[CoreGraph::base] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (const Arc& a : adj[u]) {
      if (seen[a.to]) continue;
      seen[a.to] = 1;
      queue.push_back(a.to);
      sd.transversal[a.to] = g.multiply(sd.transversal[u], Word::syllable(a.lambda, a.label));
      sd.global_tree.push_back({a.lambda, u, a.label, a.to});
    }
  }
  if (queue.size() != n)
    throw Error(ErrorKind::DisconnectedUnion, "component trees do not connect all " + std::to_string(n) + " vertices");
  return sd;
}

KuroshDecomposition kurosh_decompose(const FreeProduct& g, const CoreGraph& graph) {
  return kurosh_decompose(g, graph, spanning_data(g, graph));
}

KuroshDecomposition kurosh_decompose(const FreeProduct& g, const CoreGraph& /*graph*/, const SpanningData& sd) {
  KuroshDecomposition d;
  for (Factor f = 0; f < sd.components.size(); ++f)
    for (const auto& c : sd.components[f]) {
      if (c.stabilizer.size() < 2) continue;
      KuroshPiece p;
      p.lambda = f;
      const Word& path = sd.transversal[c.root];
      p.rep = g.invert(path);
      p.stabilizer = c.stabilizer;
      for (Elem s : c.stabilizer)
        if (s != 0) p.vertex_group.push_back(g.conjugate(Word::syllable(f, s), p.rep));
      d.pieces.push_back(std::move(p));
    }

  // Tree edges are stored parent -> child; τ may traverse them either way.
  std::vector<Edge> in_tau;
  for (const Edge& e : sd.global_tree) {
    in_tau.push_back(e);
    in_tau.push_back({e.lambda, e.to, g.factor(e.lambda).inv(e.label), e.from});
  }
  std::sort(in_tau.begin(), in_tau.end());
  for (const Edge& e : sd.component_trees) {
    if (std::binary_search(in_tau.begin(), in_tau.end(), e)) continue;
    d.free_basis.push_back(g.multiply(g.multiply(sd.transversal[e.from], Word::syllable(e.lambda, e.label)),
                                      g.invert(sd.transversal[e.to])));
  }
  d.free_rank = d.free_basis.size();
  return d;
}

KuroshInvariants kurosh_invariants(const FreeProduct& g, const KuroshDecomposition& decomp) {
  KuroshInvariants inv;
  for (const auto& p : decomp.pieces) inv.classes.emplace_back(p.lambda, conjugacy_class_key(g.factor(p.lambda), p.stabilizer));
  std::sort(inv.classes.begin(), inv.classes.end());
  inv.free_rank = decomp.free_rank;
  return inv;
}

}  // namespace fpg
