#include "fpg/higgins.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fpg/error.hpp"

namespace fpg {

namespace {

struct Letter {
  Factor f;
  Elem g;
};

std::vector<Letter> letter_order(const FreeProduct& g, std::uint32_t variant) {
  std::vector<Letter> out;
  for (Factor f = 0; f < g.rank(); ++f)
    for (Elem x = 1; x < g.factor(f).order(); ++x) out.push_back({f, x});
  if (variant != 0) {
    // Fisher–Yates with mt19937 so the order is the same on every platform.
    std::mt19937 rng(variant);
    for (std::size_t i = out.size(); i > 1; --i) {
      const std::size_t j = rng() % i;
      std::swap(out[i - 1], out[j]);
    }
  }
  return out;
}

class TreeSearch {
 public:
  TreeSearch(const FactorSystem& sys, const CoreGraph& graph, const TreeBounds& bounds, std::uint32_t variant)
      : sys_(sys), graph_(graph), bounds_(bounds), letters_(letter_order(sys.g(), variant)) {
    const std::size_t n = graph.vertex_count();
    tree_.transversal.assign(n, Word{});
    tree_.parent.assign(n, kNoVertex);
    tree_.connector.assign(n, Word{});
    tree_.link.assign(n, TreeLink::Base);
    reached_.assign(n, 0);
    reached_[CoreGraph::base] = 1;
    order_.push_back(CoreGraph::base);
  }

  ThetaTree run() {
    const std::size_t n = graph_.vertex_count();
    while (order_.size() < n) {
      expand_kernel_edges();
      if (order_.size() == n) break;
      if (search_readable()) continue;
      if (correct_with_subgroup()) continue;
      throw Error(ErrorKind::TreeBoundExceeded,
                  "no Θ-trivial connection within bounds; " + std::to_string(order_.size()) + " of " +
                      std::to_string(n) + " vertices reached");
    }
    return std::move(tree_);
  }

 private:
  void attach(Vertex v, Vertex parent, const Word& connector, TreeLink link) {
    reached_[v] = 1;
    order_.push_back(v);
    tree_.parent[v] = parent;
    tree_.connector[v] = connector;
    tree_.link[v] = link;
    tree_.transversal[v] = sys_.g().multiply(tree_.transversal[parent], connector);
  }

  void expand_kernel_edges() {
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const Vertex u = order_[head];
      for (const Letter& l : letters_) {
        if (sys_.theta(l.f)(l.g) != 0) continue;
        const Vertex t = graph_.act(l.f, u, l.g);
        if (!reached_[t]) attach(t, u, Word::syllable(l.f, l.g), TreeLink::KernelEdge);
      }
    }
  }

  /// Breadth-first over (vertex, Θ-image) from every reached vertex; the first
  /// unreached vertex hit with trivial image is attached.
  bool search_readable() {
    struct State {
      Vertex v;
      Word image;
      std::int64_t pred;
      Letter letter;
    };
    std::vector<State> states;
    struct KeyHash {
      std::size_t operator()(const std::pair<Vertex, Word>& k) const noexcept {
        return WordHash{}(k.second) * 1000003u ^ k.first;
      }
    };
    std::unordered_set<std::pair<Vertex, Word>, KeyHash> index;
    auto visit = [&](Vertex v, const Word& img) { return index.emplace(v, img).second; };
    for (Vertex v : std::set<Vertex>(order_.begin(), order_.end())) {
      visit(v, Word{});
      states.push_back({v, Word{}, -1, {0, 0}});
    }
    for (std::size_t head = 0; head < states.size(); ++head) {
      if (states.size() > bounds_.state_cap) return false;
      for (const Letter& l : letters_) {
        const Vertex t = graph_.act(l.f, states[head].v, l.g);
        Word img = states[head].image;
        sys_.b().push(img, l.f, sys_.theta(l.f)(l.g));
        if (img.size() > bounds_.word_bound) continue;
        if (!visit(t, img)) continue;
        states.push_back({t, img, static_cast<std::int64_t>(head), l});
        if (img.empty() && !reached_[t]) {
          std::vector<Syllable> raw;
          std::int64_t s = static_cast<std::int64_t>(states.size()) - 1;
          while (states[static_cast<std::size_t>(s)].pred >= 0) {
            raw.push_back({states[static_cast<std::size_t>(s)].letter.f, states[static_cast<std::size_t>(s)].letter.g});
            s = states[static_cast<std::size_t>(s)].pred;
          }
          std::reverse(raw.begin(), raw.end());
          attach(t, states[static_cast<std::size_t>(s)].v, sys_.g().normalize(raw), TreeLink::Search);
          return true;
        }
      }
    }
    return false;
  }

  /// Smallest unreached N: take a path word q to N, find h ∈ H with
  /// Θ(h) = Θ(q) among products of the subgroup generators, use h⁻¹·q.
  bool correct_with_subgroup() {
    Vertex target = kNoVertex;
    for (Vertex v = 0; v < graph_.vertex_count() && target == kNoVertex; ++v)
      if (!reached_[v]) target = v;
    const Word path = any_path(target);
    const Word goal = sys_.theta_word(path);

    std::vector<Word> letters_g;
    for (const Word& w : schreier_generators(sys_.g(), graph_)) {
      letters_g.push_back(w);
      letters_g.push_back(sys_.g().invert(w));
    }
    struct State {
      Word image;
      Word h;
      std::size_t depth;
    };
    std::vector<State> states{{Word{}, Word{}, 0}};
    std::unordered_map<Word, std::size_t, WordHash> seen{{Word{}, 0}};
    for (std::size_t head = 0; head < states.size(); ++head) {
      if (states[head].image == goal) {
        const Word h = states[head].h;
        const Word p = sys_.g().multiply(sys_.g().invert(h), path);
        attach(target, CoreGraph::base, p, TreeLink::Correction);
        tree_.extension_log.push_back({target, path, h});
        return true;
      }
      if (states[head].depth >= bounds_.extension_bound || states.size() > bounds_.state_cap) continue;
      for (const Word& l : letters_g) {
        Word img = sys_.b().multiply(states[head].image, sys_.theta_word(l));
        if (seen.count(img)) continue;
        seen.emplace(img, states.size());
        states.push_back({std::move(img), sys_.g().multiply(states[head].h, l), states[head].depth + 1});
      }
    }
    return false;
  }

  Word any_path(Vertex target) const {
    std::vector<Vertex> pred(graph_.vertex_count(), kNoVertex);
    std::vector<Letter> via(graph_.vertex_count());
    std::vector<Vertex> queue{CoreGraph::base};
    pred[CoreGraph::base] = CoreGraph::base;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Letter& l : letters_) {
        const Vertex t = graph_.act(l.f, queue[head], l.g);
        if (pred[t] != kNoVertex) continue;
        pred[t] = queue[head];
        via[t] = l;
        queue.push_back(t);
      }
    std::vector<Syllable> raw;
    for (Vertex v = target; v != CoreGraph::base; v = pred[v]) raw.push_back({via[v].f, via[v].g});
    std::reverse(raw.begin(), raw.end());
    return sys_.g().normalize(raw);
  }

  const FactorSystem& sys_;
  const CoreGraph& graph_;
  TreeBounds bounds_;
  std::vector<Letter> letters_;
  ThetaTree tree_;
  std::vector<char> reached_;
  std::vector<Vertex> order_;
};

}  // namespace

ThetaTree build_theta_tree(const FactorSystem& sys, const CoreGraph& graph, const TreeBounds& bounds,
                           std::uint32_t variant) {
  if (!graph.complete()) throw Error(ErrorKind::GraphNotComplete, "Θ-trivial tree needs the full coset graph");
  return TreeSearch(sys, graph, bounds, variant).run();
}

HigginsDecomposition higgins_decompose(const FactorSystem& sys, const CoreGraph& graph, const ThetaTree& tree) {
  const FreeProduct& g = sys.g();
  HigginsDecomposition d;
  for (Factor f = 0; f < g.rank(); ++f) {
    HigginsFactor hf;
    hf.lambda = f;
    std::set<Word> seen;
    for (Vertex v = 0; v < graph.vertex_count(); ++v)
      for (Elem x = 1; x < g.factor(f).order(); ++x) {
        const Vertex t = graph.act(f, v, x);
        Word w = g.multiply(g.multiply(tree.transversal[v], Word::syllable(f, x)), g.invert(tree.transversal[t]));
        if (w.empty() || seen.count(w)) continue;
        seen.insert(g.invert(w));
        seen.insert(w);
        hf.gens.push_back(std::move(w));
      }
    for (const auto& c : lambda_components(g, graph, f)) {
      hf.roots.push_back(c.root);
      hf.betas.push_back(g.invert(tree.transversal[c.root]));
    }
    d.factors.push_back(std::move(hf));
  }
  return d;
}

}  // namespace fpg
