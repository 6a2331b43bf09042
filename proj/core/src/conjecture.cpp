#include "fpg/conjecture.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>

#include "fpg/error.hpp"
#include "fpg/higgins.hpp"
#include "fpg/kurosh.hpp"
#include "fpg/verify.hpp"

namespace fpg {

bool theta_image_is_onto(const FactorSystem& sys, std::span<const Word> h_gens) {
  std::vector<Word> images;
  for (const Word& w : h_gens) images.push_back(sys.theta_word(w));
  const CoreGraph core = build_core(sys.b(), images);
  return core.complete() && core.vertex_count() == 1;
}

namespace {

bool in_factor(const Word& b, Factor f) { return b.empty() || (b.size() == 1 && b[0].factor == f); }

/// The vertex group x⁻¹·S·x, x = rep, S ≤ G_λ.
struct Piece {
  Factor lambda;
  Word rep;
  ElemSet stabilizer;
};

struct FreeGen {
  Word w;
  std::optional<Factor> lambda;
};

std::vector<Word> piece_generators(const FreeProduct& g, const Piece& p) {
  std::vector<Word> out;
  for (Elem s : p.stabilizer)
    if (s != 0) out.push_back(g.conjugate(Word::syllable(p.lambda, s), p.rep));
  return out;
}

/// Collects a free basis of H (vertex groups and free generators), moves it
/// by free-product automorphisms until every element maps into one B_λ, and
/// groups it into per-factor certificates.
///
/// Two moves are used, both automorphisms of H = K ∗ L: K ↦ h⁻¹·K·h, and for
/// a free generator f ↦ h₁·f·h₂, with h, h₁, h₂ ∈ L.
class Assembly {
 public:
  Assembly(const FactorSystem& sys, const CoreGraph& h_graph, const Bounds& bounds)
      : sys_(sys), h_graph_(h_graph), bounds_(bounds) {}

  /// Kurosh decomposition of H_λ inside G, with the cross-factor checks.
  void add_factor(const HigginsFactor& hf) {
    const FreeProduct& g = sys_.g();
    const Factor lambda = hf.lambda;
    const std::string lam = std::to_string(lambda);
    const FiniteGroup& grp = g.factor(lambda);

    const CoreGraph core = build_core(g, hf.gens);
    KuroshDecomposition dec = kurosh_decompose(g, core);
    for (KuroshPiece& p : dec.pieces) {
      if (p.lambda != lambda)
        throw Error(ErrorKind::CrossFactorPieceNontrivial, "H_" + lam + " has a nontrivial vertex group in factor " +
                                                               std::to_string(p.lambda) + " at '" +
                                                               format_word(p.rep) + "'");
      // H_λ ∩ G_λ^δ must already be all of H ∩ G_λ^δ.
      ElemSet in_h{0};
      for (Elem x = 1; x < grp.order(); ++x)
        if (membership(h_graph_, g.conjugate(Word::syllable(lambda, x), p.rep))) in_h.push_back(x);
      if (in_h != p.stabilizer)
        throw Error(ErrorKind::CrossFactorPieceNontrivial,
                    "H_" + lam + " ∩ G_" + lam + "^δ differs from H ∩ G_" + lam + "^δ at δ = '" + format_word(p.rep) +
                        "'");
      pieces_.push_back({lambda, std::move(p.rep), std::move(p.stabilizer)});
    }
    for (Word& w : dec.free_basis) free_.push_back({std::move(w), lambda});
  }

  /// The Kurosh basis of H itself; free generators get a factor when moved.
  void add_whole(const KuroshDecomposition& dec) {
    for (const KuroshPiece& p : dec.pieces) pieces_.push_back({p.lambda, p.rep, p.stabilizer});
    for (const Word& w : dec.free_basis) free_.push_back({w, std::nullopt});
  }

  /// Runs the moves and groups by factor. With `hig` the H_λ keep their
  /// Schreier generators unless a move changed the basis.
  std::vector<FactorCertificate> finish(const HigginsDecomposition* hig) {
    bool moved = false;
    std::vector<char> settled_piece(pieces_.size(), 0), settled_free(free_.size(), 0);
    sweep(settled_piece, settled_free, moved);
    const bool stuck = std::count(settled_piece.begin(), settled_piece.end(), 0) +
                           std::count(settled_free.begin(), settled_free.end(), 0) >
                       0;
    if (stuck && joint_search()) {
      moved = true;
      std::fill(settled_piece.begin(), settled_piece.end(), 0);
      std::fill(settled_free.begin(), settled_free.end(), 0);
      sweep(settled_piece, settled_free, moved);
    }

    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (!settled_piece[i])
        throw Error(ErrorKind::BetaImageNotInFactor, "no conjugate of the piece at '" + format_word(pieces_[i].rep) +
                                                         "' has a representative mapping into B_" +
                                                         std::to_string(pieces_[i].lambda));
    for (std::size_t j = 0; j < free_.size(); ++j)
      if (!settled_free[j])
        throw Error(ErrorKind::NotFreeProduct,
                    "free generator '" + format_word(free_[j].w) + "' cannot be moved into a single B_λ");

    std::vector<FactorCertificate> out(sys_.g().rank());
    for (Factor f = 0; f < out.size(); ++f) {
      FactorCertificate& fc = out[f];
      fc.lambda = f;
      for (const FreeGen& e : free_)
        if (e.lambda.value_or(0) == f) fc.free_basis.push_back(e.w);
      if (hig) fc.betas = hig->factors[f].betas;
      if (hig && !moved) {
        fc.h_gens = hig->factors[f].gens;
      } else {
        for (const Piece& p : pieces_)
          if (p.lambda == f)
            for (Word& w : piece_generators(sys_.g(), p)) fc.h_gens.push_back(std::move(w));
        fc.h_gens.insert(fc.h_gens.end(), fc.free_basis.begin(), fc.free_basis.end());
      }
      for (const Piece& p : pieces_)
        if (p.lambda == f) add_piece(fc, p);
    }
    return out;
  }

 private:
  /// Settles elements one at a time against the current rest. A stuck
  /// element may come loose once the others have moved, so this sweeps until
  /// nothing changes.
  void sweep(std::vector<char>& settled_piece, std::vector<char>& settled_free, bool& moved) {
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (!settled_piece[i]) {
          const auto r = settle_piece(i);
          if (r == Outcome::Stuck) continue;
          settled_piece[i] = 1;
          progress = true;
          moved |= r == Outcome::Moved;
        }
      for (std::size_t j = 0; j < free_.size(); ++j)
        if (!settled_free[j]) {
          const auto r = settle_free(j);
          if (r == Outcome::Stuck) continue;
          settled_free[j] = 1;
          progress = true;
          moved |= r == Outcome::Moved;
        }
    }
  }

  /// Best-first search over whole configurations, for when single moves
  /// against a fixed rest are not enough. Only elements with nontrivial
  /// Θ-image take part; the state is the tuple of their images and a move
  /// multiplies one element by a generator of another. Returns true once
  /// every participant is settled, with the words written back.
  bool joint_search() {
    const FreeProduct& g = sys_.g();
    struct Item {
      bool piece;
      std::size_t index;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (!trivial_image(pieces_[i])) items.push_back({true, i});
    for (std::size_t j = 0; j < free_.size(); ++j)
      if (!sys_.theta_word(free_[j].w).empty()) items.push_back({false, j});
    if (items.empty()) return false;

    struct Node {
      std::vector<Word> words;   // rep or free generator, parallel to items
      std::vector<Word> images;  // Θ of words
      std::size_t score;
    };
    auto settled = [&](const Node& n, std::size_t k) {
      const Item& it = items[k];
      if (it.piece) return in_factor(n.images[k], pieces_[it.index].lambda);
      const auto& want = free_[it.index].lambda;
      return want ? in_factor(n.images[k], *want) : n.images[k].size() <= 1;
    };
    auto score = [&](Node& n) {
      std::size_t total = 0;
      for (std::size_t k = 0; k < items.size(); ++k) total += n.images[k].size() + (settled(n, k) ? 0 : 4);
      n.score = total;
    };
    auto key = [](const Node& n) {
      std::string k;
      for (const Word& w : n.images) k += format_word(w) + "|";
      return k;
    };

    Node start;
    for (const Item& it : items) {
      start.words.push_back(it.piece ? pieces_[it.index].rep : free_[it.index].w);
      start.images.push_back(sys_.theta_word(start.words.back()));
    }
    score(start);
    std::vector<Node> nodes{start};
    std::unordered_set<std::string> seen{key(start)};
    using Entry = std::pair<std::size_t, std::size_t>;  // score, node id
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    open.push({start.score, 0});
    const std::size_t cap = 1u << 15;

    while (!open.empty() && nodes.size() < cap) {
      const std::size_t id = open.top().second;
      open.pop();
      bool all = true;
      for (std::size_t k = 0; k < items.size() && all; ++k) all = settled(nodes[id], k);
      if (all) {
        for (std::size_t k = 0; k < items.size(); ++k) {
          const Item& it = items[k];
          if (it.piece) {
            pieces_[it.index].rep = nodes[id].words[k];
          } else {
            free_[it.index].w = nodes[id].words[k];
            if (!free_[it.index].lambda && !nodes[id].images[k].empty())
              free_[it.index].lambda = nodes[id].images[k][0].factor;
          }
        }
        return true;
      }
      // Generators of each participant in the current configuration.
      std::vector<std::vector<Word>> gens(items.size());
      for (std::size_t k = 0; k < items.size(); ++k) {
        const Word& w = nodes[id].words[k];
        if (items[k].piece) {
          const Piece& p = pieces_[items[k].index];
          for (Elem s : p.stabilizer)
            if (s != 0) gens[k].push_back(g.conjugate(Word::syllable(p.lambda, s), w));
        } else {
          gens[k] = {w, g.invert(w)};
        }
      }
      for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t k = 0; k < items.size(); ++k) {
          if (k == i) continue;
          for (const Word& l : gens[k])
            for (int side = 0; side < (items[i].piece ? 1 : 2); ++side) {
              Node next = nodes[id];
              next.words[i] = side == 0 ? g.multiply(next.words[i], l) : g.multiply(l, next.words[i]);
              next.images[i] = sys_.theta_word(next.words[i]);
              if (!seen.insert(key(next)).second) continue;
              score(next);
              open.push({next.score, nodes.size()});
              nodes.push_back(std::move(next));
            }
        }
    }
    return false;
  }

  bool trivial_image(const Piece& p) const {
    return std::all_of(p.stabilizer.begin(), p.stabilizer.end(),
                       [&](Elem s) { return sys_.theta(p.lambda)(s) == 0; });
  }

  /// Generators of everything except piece `skip_piece` / free generator `skip_free`, with inverses.
  std::vector<Word> complement(std::size_t skip_piece, std::size_t skip_free) const {
    std::vector<Word> out;
    auto add = [&](const Word& w) {
      out.push_back(w);
      out.push_back(sys_.g().invert(w));
    };
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (i != skip_piece)
        for (const Word& w : piece_generators(sys_.g(), pieces_[i])) add(w);
    for (std::size_t j = 0; j < free_.size(); ++j)
      if (j != skip_free) add(free_[j].w);
    return out;
  }

  struct Found {
    Word left, right;
  };

  /// Breadth-first over c₁·b·c₂ with c₁, c₂ Θ-images of products of
  /// `letters` (c₁ = 1 unless `two_sided`), until `done` holds.
  template <class Done>
  std::optional<Found> search(const Word& start, const std::vector<Word>& letters, bool two_sided, Done done) const {
    const FreeProduct& g = sys_.g();
    const FreeProduct& b = sys_.b();
    std::vector<Word> images;
    for (const Word& l : letters) images.push_back(sys_.theta_word(l));
    struct State {
      Word image;
      Word left, right;
      std::size_t depth;
    };
    std::vector<State> states{{start, Word{}, Word{}, 0}};
    std::unordered_set<Word, WordHash> seen{start};
    const std::size_t cap = 1u << 16;
    for (std::size_t head = 0; head < states.size(); ++head) {
      if (done(states[head].image)) return Found{states[head].left, states[head].right};
      if (states[head].depth >= bounds_.tree_word_bound || states.size() > cap) continue;
      for (std::size_t k = 0; k < letters.size(); ++k) {
        Word img = b.multiply(states[head].image, images[k]);
        if (seen.insert(img).second)
          states.push_back({std::move(img), states[head].left, g.multiply(states[head].right, letters[k]),
                            states[head].depth + 1});
        if (!two_sided) continue;
        img = b.multiply(images[k], states[head].image);
        if (seen.insert(img).second)
          states.push_back({std::move(img), g.multiply(letters[k], states[head].left), states[head].right,
                            states[head].depth + 1});
      }
    }
    return std::nullopt;
  }

  enum class Outcome { Already, Moved, Stuck };

  Outcome settle_piece(std::size_t i) {
    Piece& p = pieces_[i];
    const Word image = sys_.theta_word(p.rep);
    if (in_factor(image, p.lambda)) return Outcome::Already;
    const Factor lambda = p.lambda;
    const auto found =
        search(image, complement(i, free_.size()), false, [lambda](const Word& w) { return in_factor(w, lambda); });
    if (!found) return Outcome::Stuck;
    p.rep = sys_.g().multiply(p.rep, found->right);
    return Outcome::Moved;
  }

  Outcome settle_free(std::size_t j) {
    FreeGen& e = free_[j];
    const std::optional<Factor> want = e.lambda;
    auto done = [want](const Word& w) { return want ? in_factor(w, *want) : w.size() <= 1; };
    const Word image = sys_.theta_word(e.w);
    if (done(image)) {
      if (!e.lambda && !image.empty()) e.lambda = image[0].factor;
      return Outcome::Already;
    }
    const auto found = search(image, complement(pieces_.size(), j), true, done);
    if (!found) return Outcome::Stuck;
    e.w = sys_.g().multiply(sys_.g().multiply(found->left, e.w), found->right);
    const Word moved = sys_.theta_word(e.w);
    if (!e.lambda && !moved.empty()) e.lambda = moved[0].factor;
    return Outcome::Moved;
  }

  void add_piece(FactorCertificate& fc, const Piece& p) const {
    const FreeProduct& g = sys_.g();
    const FiniteGroup& grp = g.factor(p.lambda);
    const Word image = sys_.theta_word(p.rep);
    Elem correction = 0;
    if (!image.empty()) correction = sys_.theta(p.lambda).solve_preimage(image[0].elem);
    const Word x = g.multiply(Word::syllable(p.lambda, grp.inv(correction)), p.rep);
    if (!sys_.theta_word(x).empty())
      throw Error(ErrorKind::BetaImageNotInFactor, "corrected rep '" + format_word(x) + "' is not Θ-trivial");

    // β′ = g·x, so β′⁻¹·s·β′ = x⁻¹·(g⁻¹·s·g)·x.
    ElemSet stab;
    for (Elem s : p.stabilizer) stab.push_back(grp.mul(grp.mul(grp.inv(correction), s), correction));
    std::sort(stab.begin(), stab.end());
    std::vector<Word> group;
    for (Elem s : stab)
      if (s != 0) group.push_back(g.conjugate(Word::syllable(p.lambda, s), x));

    fc.beta_primes.push_back(p.rep);
    fc.g_corrections.push_back(correction);
    fc.reps.push_back(x);
    fc.stabilizers.push_back(std::move(stab));
    fc.vertex_groups.push_back(std::move(group));
  }

  const FactorSystem& sys_;
  const CoreGraph& h_graph_;
  const Bounds& bounds_;
  std::vector<Piece> pieces_;
  std::vector<FreeGen> free_;
};

void self_check(const FactorSystem& sys, const CoreGraph& h_graph, const ConjectureCertificate& cert,
                const Bounds& bounds, const std::string& what) {
  static constexpr std::string_view exact[] = {"C5", "C6"};
  const VerificationReport rep = verify_certificate(sys, h_graph, cert, bounds, exact);
  if (rep.passed()) return;
  std::string why;
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::Fail) why += c.name + ": " + c.details + "; ";
  throw Error(ErrorKind::NotFreeProduct, what + " gives " + why);
}

ConjectureCertificate blank(const FactorSystem& sys, const CoreGraph& h_graph) {
  ConjectureCertificate cert;
  cert.system_hash = sys.hash();
  cert.subgroup_gens = schreier_generators(sys.g(), h_graph);
  cert.index = h_graph.vertex_count();
  return cert;
}

}  // namespace

ConjectureCertificate conjecture_attempt(const FactorSystem& sys, const CoreGraph& h_graph, const Bounds& bounds,
                                         std::uint32_t variant) {
  TreeBounds tb;
  tb.word_bound = bounds.tree_word_bound;
  tb.extension_bound = bounds.tree_word_bound;
  const ThetaTree tree = build_theta_tree(sys, h_graph, tb, variant);
  const HigginsDecomposition hig = higgins_decompose(sys, h_graph, tree);

  ConjectureCertificate cert = blank(sys, h_graph);
  cert.route = Route::HigginsTree;
  cert.tree_variant = variant;
  cert.transversal = tree.transversal;
  Assembly a(sys, h_graph, bounds);
  for (const HigginsFactor& hf : hig.factors) a.add_factor(hf);
  cert.factors = a.finish(&hig);
  self_check(sys, h_graph, cert, bounds, "tree variant " + std::to_string(variant));
  return cert;
}

ConjectureCertificate conjecture_by_moves(const FactorSystem& sys, const CoreGraph& h_graph, const Bounds& bounds) {
  if (!h_graph.complete()) throw Error(ErrorKind::GraphNotComplete, "the fallback needs the full coset graph");
  const SpanningData span = spanning_data(sys.g(), h_graph);
  ConjectureCertificate cert = blank(sys, h_graph);
  cert.route = Route::KuroshMoves;
  cert.transversal = span.transversal;
  Assembly a(sys, h_graph, bounds);
  a.add_whole(kurosh_decompose(sys.g(), h_graph, span));
  cert.factors = a.finish(nullptr);
  self_check(sys, h_graph, cert, bounds, "the Kurosh-move fallback");
  return cert;
}

ConjectureCertificate conjecture_decompose(const FactorSystem& sys, std::span<const Word> h_gens,
                                           const Bounds& bounds) {
  const CoreGraph core = build_core(sys.g(), h_gens);
  if (!theta_image_is_onto(sys, h_gens))
    throw Error(ErrorKind::ThetaNotSurjectiveOntoB, "the images of the subgroup generators do not generate B");
  const CoreGraph graph = complete_graph(sys.g(), core, bounds.max_cosets);

  auto retryable = [](ErrorKind k) {
    return k == ErrorKind::CrossFactorPieceNontrivial || k == ErrorKind::BetaImageNotInFactor ||
           k == ErrorKind::NotFreeProduct || k == ErrorKind::TreeBoundExceeded;
  };
  std::string failures;
  ErrorKind first = ErrorKind::NotFreeProduct;
  for (std::uint32_t variant = 0; variant <= bounds.tree_retries; ++variant) {
    try {
      return conjecture_attempt(sys, graph, bounds, variant);
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      if (variant == 0) first = e.kind();
      failures += std::string(e.what()) + " | ";
      // Variants only reorder letters; a search that ran out of bounds will again.
      if (e.kind() == ErrorKind::TreeBoundExceeded) break;
    }
  }
  try {
    return conjecture_by_moves(sys, graph, bounds);
  } catch (const Error& e) {
    if (!retryable(e.kind())) throw;
    throw Error(first, "no decomposition found by the tree variants or the Kurosh-move fallback: " + failures +
                           e.what());
  }
}

}  // namespace fpg
