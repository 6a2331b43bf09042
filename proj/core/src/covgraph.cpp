#include "fpg/covgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "fpg/error.hpp"

namespace fpg {

/// Mutable graph under construction. Vertices are merged with union-find;
/// table entries may name stale vertices and are resolved through find().
class GraphBuilder {
 public:
  explicit GraphBuilder(const FreeProduct& g) : g_(g) {
    for (Factor f = 0; f < g.rank(); ++f) orders_.push_back(g.factor(f).order());
    tables_.resize(g.rank());
    add_vertex();
  }

  GraphBuilder(const FreeProduct& g, const CoreGraph& graph) : g_(g), orders_(graph.orders_) {
    tables_ = graph.tables_;
    parent_.resize(graph.vertex_count());
    for (Vertex v = 0; v < parent_.size(); ++v) parent_[v] = v;
  }

  Vertex add_vertex() {
    const auto v = static_cast<Vertex>(parent_.size());
    parent_.push_back(v);
    for (Factor f = 0; f < orders_.size(); ++f) tables_[f].resize(tables_[f].size() + orders_[f], kNoVertex);
    return v;
  }

  std::size_t size() const { return parent_.size(); }
  bool live(Vertex v) const { return parent_[v] == v; }

  Vertex find(Vertex v) {
    Vertex r = v;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[v] != r) v = std::exchange(parent_[v], r);
    return r;
  }

  Vertex target(Factor f, Vertex v, Elem g) {
    if (g == 0) return v;
    const Vertex t = slot(f, v, g);
    return t == kNoVertex ? kNoVertex : find(t);
  }

  /// Adds u --g--> v and its inverse edge.
  void add_edge(Factor f, Vertex u, Elem g, Vertex v) {
    if (g == 0) {
      queue_merge(u, v);
      return;
    }
    set_one(f, find(u), g, find(v));
    set_one(f, find(v), g_.factor(f).inv(g), find(u));
  }

  /// Adds a loop at `start` spelling w.
  void add_cycle(const Word& w, Vertex start) {
    Vertex cur = start;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Vertex next = i + 1 == w.size() ? start : add_vertex();
      add_edge(w[i].factor, cur, w[i].elem, next);
      cur = next;
    }
  }

  void fold() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      merge(a, b);
    }
  }

  /// One saturation pass over every component of every factor. Stops at the
  /// first component that forces a merge. Returns whether anything changed.
  bool saturate() {
    for (Factor f = 0; f < orders_.size(); ++f) {
      if (orders_[f] < 2) continue;
      std::vector<char> seen(size(), 0);
      for (Vertex v = 0; v < size(); ++v) {
        if (!live(v) || seen[v]) continue;
        const auto r = saturate_component(f, v, seen);
        if (r == Outcome::Merged) {
          fold();
          return true;
        }
        if (r == Outcome::EdgesAdded) changed_ = true;
      }
    }
    return std::exchange(changed_, false);
  }

  void normalize() {
    fold();
    while (saturate()) fold();
  }

  /// For the component of v: add one vertex per missing coset of its
  /// stabilizer, then saturate the component. Returns the number added.
  std::size_t fill_component(Factor f, Vertex v) {
    Component c = explore(f, v);
    const FiniteGroup& grp = g_.factor(f);
    std::vector<char> present(grp.order(), 0);
    for (Elem key : c.keys) present[key] = 1;
    std::size_t added = 0;
    // Every coset S·g has its minimal element as key; attach the missing ones
    // to the root through the edge labelled by that key.
    for (Elem g = 1; g < grp.order(); ++g) {
      const Elem key = coset_key(grp, c.stabilizer, g);
      if (present[key]) continue;
      present[key] = 1;
      const Vertex w = add_vertex();
      add_edge(f, c.vertices.front(), key, w);
      ++added;
    }
    if (added != 0) {
      std::vector<char> seen(size(), 0);
      saturate_component(f, find(v), seen);
      fold();
    }
    return added;
  }

  /// First (vertex, factor) with an undefined action at or after `from`.
  std::pair<Vertex, Factor> first_gap(Vertex from) const {
    for (Vertex v = from; v < size(); ++v) {
      if (parent_[v] != v) continue;
      for (Factor f = 0; f < orders_.size(); ++f)
        for (Elem g = 1; g < orders_[f]; ++g)
          if (slot(f, v, g) == kNoVertex) return {v, f};
    }
    return {kNoVertex, 0};
  }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (Vertex v = 0; v < size(); ++v) n += parent_[v] == v;
    return n;
  }

  /// Freezes into canonical breadth-first numbering.
  CoreGraph finish(std::vector<Word> gens) {
    normalize();
    std::vector<Vertex> id(size(), kNoVertex);
    std::vector<Vertex> order{find(0)};
    id[order[0]] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const Vertex u = order[head];
      for (Factor f = 0; f < orders_.size(); ++f)
        for (Elem g = 1; g < orders_[f]; ++g) {
          const Vertex t = target(f, u, g);
          if (t != kNoVertex && id[t] == kNoVertex) {
            id[t] = static_cast<Vertex>(order.size());
            order.push_back(t);
          }
        }
    }
    CoreGraph out;
    out.vertex_count_ = order.size();
    out.orders_ = orders_;
    out.tables_.resize(orders_.size());
    out.complete_ = true;
    for (Factor f = 0; f < orders_.size(); ++f) {
      auto& tab = out.tables_[f];
      tab.assign(order.size() * orders_[f], kNoVertex);
      for (Vertex nv = 0; nv < order.size(); ++nv) {
        tab[static_cast<std::size_t>(nv) * orders_[f]] = nv;
        for (Elem g = 1; g < orders_[f]; ++g) {
          const Vertex t = target(f, order[nv], g);
          if (t == kNoVertex)
            out.complete_ = false;
          else
            tab[static_cast<std::size_t>(nv) * orders_[f] + g] = id[t];
        }
      }
    }
    out.gens_ = std::move(gens);
    return out;
  }

 private:
  enum class Outcome { Unchanged, EdgesAdded, Merged };

  struct Component {
    std::vector<Vertex> vertices;
    std::vector<Elem> labels;
    std::vector<Elem> keys;
    ElemSet stabilizer;
  };

  Vertex& slot(Factor f, Vertex v, Elem g) { return tables_[f][static_cast<std::size_t>(v) * orders_[f] + g]; }
  Vertex slot(Factor f, Vertex v, Elem g) const { return tables_[f][static_cast<std::size_t>(v) * orders_[f] + g]; }

  void set_one(Factor f, Vertex u, Elem g, Vertex v) {
    Vertex& s = slot(f, u, g);
    if (s == kNoVertex) {
      s = v;
      return;
    }
    const Vertex cur = find(s);
    if (cur != v) queue_merge(cur, v);
  }

  void queue_merge(Vertex a, Vertex b) {
    if (find(a) != find(b)) pending_.emplace_back(a, b);
  }

  void merge(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // smallest index survives, so the base stays 0
    for (Factor f = 0; f < orders_.size(); ++f)
      for (Elem g = 1; g < orders_[f]; ++g) {
        const Vertex t = slot(f, b, g);
        if (t != kNoVertex) set_one(f, a, g, find(t));
      }
  }

  static Elem coset_key(const FiniteGroup& grp, const ElemSet& s, Elem a) {
    Elem best = a;
    for (Elem x : s) best = std::min(best, grp.mul(x, a));
    return best;
  }

  Component explore(Factor f, Vertex start) {
    const FiniteGroup& grp = g_.factor(f);
    Component c;
    std::vector<Elem> stab_gens;
    c.vertices.push_back(find(start));
    c.labels.push_back(0);
    label_of_.resize(size());
    in_comp_.resize(size(), 0);
    in_comp_[c.vertices[0]] = 1;
    label_of_[c.vertices[0]] = 0;
    for (std::size_t head = 0; head < c.vertices.size(); ++head) {
      const Vertex u = c.vertices[head];
      const Elem au = c.labels[head];
      for (Elem g = 1; g < grp.order(); ++g) {
        const Vertex t = target(f, u, g);
        if (t == kNoVertex) continue;
        const Elem aug = grp.mul(au, g);
        if (!in_comp_[t]) {
          in_comp_[t] = 1;
          label_of_[t] = aug;
          c.vertices.push_back(t);
          c.labels.push_back(aug);
        } else {
          const Elem s = grp.mul(aug, grp.inv(label_of_[t]));
          if (s != 0) stab_gens.push_back(s);
        }
      }
    }
    for (Vertex u : c.vertices) in_comp_[u] = 0;
    std::sort(stab_gens.begin(), stab_gens.end());
    stab_gens.erase(std::unique(stab_gens.begin(), stab_gens.end()), stab_gens.end());
    c.stabilizer = subgroup_closure(grp, stab_gens);
    for (Elem a : c.labels) c.keys.push_back(coset_key(grp, c.stabilizer, a));
    return c;
  }

  Outcome saturate_component(Factor f, Vertex v, std::vector<char>& seen) {
    Component c = explore(f, v);
    for (Vertex u : c.vertices) seen[u] = 1;
    if (c.vertices.size() == 1 && c.stabilizer.size() == 1) {
      // Either isolated or only undefined entries: nothing induced.
      bool any = false;
      for (Elem g = 1; g < orders_[f] && !any; ++g) any = slot(f, c.vertices[0], g) != kNoVertex;
      if (!any) return Outcome::Unchanged;
    }
    const FiniteGroup& grp = g_.factor(f);
    std::vector<Vertex> by_key(grp.order(), kNoVertex);
    bool merged = false;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      Vertex& slot_v = by_key[c.keys[i]];
      if (slot_v == kNoVertex) {
        slot_v = c.vertices[i];
      } else {
        queue_merge(slot_v, c.vertices[i]);
        merged = true;
      }
    }
    if (merged) return Outcome::Merged;

    bool added = false;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      const Vertex u = c.vertices[i];
      for (Elem g = 1; g < grp.order(); ++g) {
        if (slot(f, u, g) != kNoVertex) continue;
        const Vertex w = by_key[coset_key(grp, c.stabilizer, grp.mul(c.labels[i], g))];
        if (w == kNoVertex) continue;
        slot(f, u, g) = w;
        added = true;
      }
    }
    return added ? Outcome::EdgesAdded : Outcome::Unchanged;
  }

  const FreeProduct& g_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::vector<Vertex>> tables_;
  std::vector<Vertex> parent_;
  std::vector<std::pair<Vertex, Vertex>> pending_;
  std::vector<Elem> label_of_;
  std::vector<char> in_comp_;
  bool changed_ = false;
};

Vertex CoreGraph::trace(const Word& w, Vertex start) const {
  Vertex v = start;
  for (const auto& s : w.syllables()) {
    if (s.factor >= orders_.size() || s.elem >= orders_[s.factor]) return kNoVertex;
    v = act(s.factor, v, s.elem);
    if (v == kNoVertex) return kNoVertex;
  }
  return v;
}

CoreGraph build_core(const FreeProduct& g, std::span<const Word> gens) {
  GraphBuilder b(g);
  for (const Word& w : gens) {
    for (const auto& s : w.syllables())
      if (s.factor >= g.rank() || s.elem >= g.factor(s.factor).order())
        throw Error(ErrorKind::MalformedWord, "generator " + format_word(w) + " is not over this free product");
    b.add_cycle(w, 0);
    b.fold();
  }
  return b.finish({gens.begin(), gens.end()});
}

CoreGraph complete_graph(const FreeProduct& g, const CoreGraph& core, std::size_t max_cosets) {
  if (core.complete()) {
    if (core.vertex_count() > max_cosets)
      throw Error(ErrorKind::IndexBoundExceeded, "index " + std::to_string(core.vertex_count()) + " exceeds " +
                                                     std::to_string(max_cosets));
    return core;
  }
  GraphBuilder b(g, core);
  auto check = [&] {
    if (b.live_count() > max_cosets)
      throw Error(ErrorKind::IndexBoundExceeded, "more than " + std::to_string(max_cosets) + " cosets");
  };
  check();
  for (;;) {
    Vertex cursor = 0;
    for (;;) {
      auto [v, f] = b.first_gap(cursor);
      if (v == kNoVertex) break;
      b.fill_component(f, v);
      check();
      cursor = v;
    }
    // New cosets hang off the core as trees of components and never fold;
    // a final global pass confirms that.
    const std::size_t before = b.live_count();
    b.normalize();
    if (b.live_count() == before && b.first_gap(0).first == kNoVertex) break;
  }
  return b.finish(core.subgroup_gens());
}

bool membership(const CoreGraph& graph, const Word& w) { return graph.trace(w) == CoreGraph::base; }

std::vector<LambdaComponent> lambda_components(const FreeProduct& g, const CoreGraph& graph, Factor lambda) {
  const FiniteGroup& grp = g.factor(lambda);
  std::vector<LambdaComponent> out;
  std::vector<char> seen(graph.vertex_count(), 0);
  for (Vertex r = 0; r < graph.vertex_count(); ++r) {
    if (seen[r]) continue;
    LambdaComponent c;
    c.lambda = lambda;
    c.root = r;
    c.vertices.push_back(r);
    c.coset_label.push_back(0);
    c.tree_parent.push_back(kNoVertex);
    c.tree_label.push_back(0);
    seen[r] = 1;
    for (std::size_t head = 0; head < c.vertices.size(); ++head) {
      const Vertex u = c.vertices[head];
      for (Elem x = 1; x < grp.order(); ++x) {
        const Vertex t = graph.act(lambda, u, x);
        if (t == kNoVertex || seen[t]) continue;
        seen[t] = 1;
        c.vertices.push_back(t);
        c.coset_label.push_back(grp.mul(c.coset_label[head], x));
        c.tree_parent.push_back(u);
        c.tree_label.push_back(x);
      }
    }
    c.stabilizer.push_back(0);
    for (Elem x = 1; x < grp.order(); ++x)
      if (graph.act(lambda, r, x) == r) c.stabilizer.push_back(x);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::uint8_t> canonical_encoding(const CoreGraph& graph) {
  std::vector<std::uint8_t> out{'F', 'P', 'G', '1'};
  auto put = [&out](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  // Relabel in discovery order so the encoding is independent of how the
  // graph was numbered.
  const std::size_t n = graph.vertex_count();
  std::vector<Vertex> id(n, kNoVertex);
  std::vector<Vertex> order{CoreGraph::base};
  id[CoreGraph::base] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Factor f = 0; f < graph.rank(); ++f)
      for (Elem g = 1; g < graph.factor_order(f); ++g) {
        const Vertex t = graph.act(f, order[head], g);
        if (t != kNoVertex && id[t] == kNoVertex) {
          id[t] = static_cast<Vertex>(order.size());
          order.push_back(t);
        }
      }
  put(static_cast<std::uint32_t>(graph.rank()));
  for (Factor f = 0; f < graph.rank(); ++f) put(graph.factor_order(f));
  put(static_cast<std::uint32_t>(order.size()));
  for (Vertex v : order)
    for (Factor f = 0; f < graph.rank(); ++f)
      for (Elem g = 1; g < graph.factor_order(f); ++g) {
        const Vertex t = graph.act(f, v, g);
        put(t == kNoVertex ? kNoVertex : id[t]);
      }
  return out;
}

std::vector<Word> schreier_generators(const FreeProduct& g, const CoreGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<Word> path(n);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> order{CoreGraph::base};
  seen[CoreGraph::base] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Factor f = 0; f < graph.rank(); ++f)
      for (Elem x = 1; x < graph.factor_order(f); ++x) {
        const Vertex t = graph.act(f, order[head], x);
        if (t == kNoVertex || seen[t]) continue;
        seen[t] = 1;
        path[t] = g.multiply(path[order[head]], Word::syllable(f, x));
        order.push_back(t);
      }
  std::vector<Word> out;
  std::set<Word> known;
  for (Vertex v : order)
    for (Factor f = 0; f < graph.rank(); ++f)
      for (Elem x = 1; x < graph.factor_order(f); ++x) {
        const Vertex t = graph.act(f, v, x);
        if (t == kNoVertex) continue;
        Word w = g.multiply(g.multiply(path[v], Word::syllable(f, x)), g.invert(path[t]));
        if (w.empty() || known.count(w)) continue;
        known.insert(g.invert(w));
        known.insert(w);
        out.push_back(std::move(w));
      }
  return out;
}

std::string to_dot(const CoreGraph& graph) {
  std::ostringstream os;
  os << "digraph core {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    os << "  " << v << (v == CoreGraph::base ? " [shape=doublecircle];\n" : ";\n");
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    for (Factor f = 0; f < graph.rank(); ++f)
      for (Elem g = 1; g < graph.factor_order(f); ++g) {
        const Vertex t = graph.act(f, v, g);
        if (t != kNoVertex) os << "  " << v << " -> " << t << " [label=\"" << f << ':' << g << "\"];\n";
      }
  os << "}\n";
  return os.str();
}

}  // namespace fpg
