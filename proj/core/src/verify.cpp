#include "fpg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <cstdint>

#include "fpg/error.hpp"
#include "fpg/kurosh.hpp"

namespace fpg {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::uint32_t> brute_force_double_cosets(const CoreGraph& graph, Factor lambda) {
  if (!graph.complete()) throw Error(ErrorKind::GraphNotComplete, "double cosets need the full coset graph");
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> orbit(graph.vertex_count(), none);
  std::uint32_t next = 0;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (orbit[v] != none) continue;
    std::vector<Vertex> stack{v};
    orbit[v] = next;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Elem g = 1; g < graph.factor_order(lambda); ++g) {
        const Vertex t = graph.act(lambda, u, g);
        if (orbit[t] == none) {
          orbit[t] = next;
          stack.push_back(t);
        }
      }
    }
    ++next;
  }
  return orbit;
}

std::unordered_set<Word, WordHash> product_ball(const FreeProduct& g, std::span<const Word> gens,
                                                std::size_t max_letters) {
  std::vector<Word> letters;
  for (const Word& w : gens) {
    letters.push_back(w);
    letters.push_back(g.invert(w));
  }
  std::unordered_set<Word, WordHash> ball{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 0; depth < max_letters && !frontier.empty(); ++depth) {
    std::vector<Word> next;
    for (const Word& u : frontier)
      for (const Word& l : letters) {
        Word p = g.multiply(u, l);
        if (ball.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return ball;
}

bool brute_force_membership(const FreeProduct& g, std::span<const Word> gens, const Word& w, std::size_t max_letters) {
  if (w.empty()) return true;
  std::vector<Word> letters;
  for (const Word& x : gens) {
    letters.push_back(x);
    letters.push_back(g.invert(x));
  }
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 0; depth < max_letters && !frontier.empty(); ++depth) {
    std::vector<Word> next;
    for (const Word& u : frontier)
      for (const Word& l : letters) {
        Word p = g.multiply(u, l);
        if (p == w) return true;
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

void check_shape(const FactorSystem& sys, const ConjectureCertificate& cert) {
  if (cert.system_hash != sys.hash())
    throw Error(ErrorKind::MalformedCertificate, "system hash " + cert.system_hash + " does not match " + sys.hash());
  if (cert.factors.size() != sys.rank())
    throw Error(ErrorKind::MalformedCertificate, "certificate lists " + std::to_string(cert.factors.size()) +
                                                     " factors, system has " + std::to_string(sys.rank()));
  auto valid = [&](const Word& w, Side side) {
    const FreeProduct& fp = sys.side(side);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].factor >= fp.rank() || w[i].elem == 0 || w[i].elem >= fp.factor(w[i].factor).order()) return false;
      if (i > 0 && w[i - 1].factor == w[i].factor) return false;
    }
    return true;
  };
  for (std::size_t f = 0; f < cert.factors.size(); ++f) {
    const auto& fc = cert.factors[f];
    if (fc.lambda != f) throw Error(ErrorKind::MalformedCertificate, "factor entries out of order");
    const std::size_t n = fc.reps.size();
    if (fc.beta_primes.size() != n || fc.g_corrections.size() != n || fc.stabilizers.size() != n ||
        fc.vertex_groups.size() != n)
      throw Error(ErrorKind::MalformedCertificate, "per-piece arrays of factor " + std::to_string(f) + " differ in length");
    for (const auto* list : {&fc.h_gens, &fc.betas, &fc.beta_primes, &fc.reps, &fc.free_basis})
      for (const Word& w : *list)
        if (!valid(w, Side::G)) throw Error(ErrorKind::MalformedCertificate, "word '" + format_word(w) + "' is not over G");
    for (const auto& vg : fc.vertex_groups)
      for (const Word& w : vg)
        if (!valid(w, Side::G)) throw Error(ErrorKind::MalformedCertificate, "word '" + format_word(w) + "' is not over G");
    for (Elem g : fc.g_corrections)
      if (g >= sys.g().factor(fc.lambda).order()) throw Error(ErrorKind::MalformedCertificate, "g correction out of range");
    for (const auto& s : fc.stabilizers)
      for (Elem g : s)
        if (g >= sys.g().factor(fc.lambda).order()) throw Error(ErrorKind::MalformedCertificate, "stabilizer element out of range");
  }
}

struct Checker {
  const FactorSystem& sys;
  const CoreGraph& graph;
  const ConjectureCertificate& cert;
  const Bounds& bounds;

  const FreeProduct& g() const { return sys.g(); }

  CheckResult c1() const {
    CheckResult r{"C1", CheckStatus::Pass, "", 0};
    std::size_t n = 0;
    for (const auto& fc : cert.factors)
      for (const Word& x : fc.reps) {
        ++n;
        const Word img = sys.theta_word(x);
        if (!img.empty()) {
          r.status = CheckStatus::Fail;
          r.details = "rep '" + format_word(x) + "' of factor " + std::to_string(fc.lambda) + " maps to '" +
                      format_word(img) + "'";
          return r;
        }
      }
    r.details = std::to_string(n) + " representatives are Θ-trivial";
    return r;
  }

  CheckResult c2() const {
    CheckResult r{"C2", CheckStatus::Pass, "", 0};
    for (const auto& fc : cert.factors) {
      std::vector<Elem> images;
      for (const Word& w : fc.h_gens) {
        if (membership(graph, w) == false) {
          r.status = CheckStatus::Fail;
          r.details = "H_" + std::to_string(fc.lambda) + " generator '" + format_word(w) + "' is not in H";
          return r;
        }
        const Word img = sys.theta_word(w);
        if (img.empty()) continue;
        if (img.size() != 1 || img[0].factor != fc.lambda) {
          r.status = CheckStatus::Fail;
          r.details = "H_" + std::to_string(fc.lambda) + " generator '" + format_word(w) + "' maps to '" +
                      format_word(img) + "' outside B_" + std::to_string(fc.lambda);
          return r;
        }
        images.push_back(img[0].elem);
      }
      const FiniteGroup& b = sys.b().factor(fc.lambda);
      const ElemSet closure = subgroup_closure(b, images);
      if (closure.size() != b.order()) {
        r.status = CheckStatus::Fail;
        r.details = "images of H_" + std::to_string(fc.lambda) + " generate " + std::to_string(closure.size()) +
                    " of " + std::to_string(b.order()) + " elements of B_" + std::to_string(fc.lambda);
        return r;
      }
    }
    r.details = "every H_λ maps onto B_λ";
    return r;
  }

  CheckResult c3() const {
    CheckResult r{"C3", CheckStatus::Pass, "", 0};
    std::size_t n = 0;
    for (const auto& fc : cert.factors) {
      const FiniteGroup& grp = g().factor(fc.lambda);
      for (std::size_t i = 0; i < fc.reps.size(); ++i) {
        std::set<Word> expected;
        ElemSet stab{0};
        for (Elem x = 1; x < grp.order(); ++x) {
          Word c = g().conjugate(Word::syllable(fc.lambda, x), fc.reps[i]);
          if (membership(graph, c)) {
            expected.insert(std::move(c));
            stab.push_back(x);
          }
        }
        const std::set<Word> listed(fc.vertex_groups[i].begin(), fc.vertex_groups[i].end());
        if (listed != expected || fc.vertex_groups[i].size() != listed.size() || stab != fc.stabilizers[i]) {
          r.status = CheckStatus::Fail;
          r.details = "vertex group at rep '" + format_word(fc.reps[i]) + "' of factor " + std::to_string(fc.lambda) +
                      " lists " + std::to_string(listed.size()) + " elements, H contains " +
                      std::to_string(expected.size());
          return r;
        }
        if (expected.empty()) {
          r.status = CheckStatus::Fail;
          r.details = "trivial vertex group listed at rep '" + format_word(fc.reps[i]) + "'";
          return r;
        }
        ++n;
      }
    }
    r.details = std::to_string(n) + " vertex groups match H ∩ G_λ^x exactly";
    return r;
  }

  CheckResult c4() const {
    CheckResult r{"C4", CheckStatus::Pass, "", 0};
    for (const auto& fc : cert.factors) {
      const auto orbit = brute_force_double_cosets(graph, fc.lambda);
      const std::string lam = std::to_string(fc.lambda);
      std::set<std::uint32_t> used;
      bool has_identity = false;
      for (const Word& x : fc.reps) {
        const Vertex v = graph.trace(g().invert(x));
        if (!used.insert(orbit[v]).second) {
          r.status = CheckStatus::Fail;
          r.details = "rep '" + format_word(x) + "' of factor " + lam + " repeats a double coset";
          return r;
        }
        has_identity |= x.empty();
      }
      std::set<std::uint32_t> needed;
      for (Vertex v = 0; v < graph.vertex_count(); ++v)
        for (Elem x = 1; x < graph.factor_order(fc.lambda); ++x)
          if (graph.act(fc.lambda, v, x) == v) needed.insert(orbit[v]);
      if (needed != used) {
        r.status = CheckStatus::Fail;
        r.details = "factor " + lam + ": " + std::to_string(needed.size()) +
                    " double cosets carry a nontrivial vertex group, reps cover " + std::to_string(used.size());
        return r;
      }
      if (needed.count(orbit[CoreGraph::base]) && !has_identity) {
        r.status = CheckStatus::Fail;
        r.details = "H ∩ G_" + lam + " is nontrivial but ε is not a representative";
        return r;
      }
    }
    r.details = "representatives are distinct and complete for every factor";
    return r;
  }

  std::vector<Word> parts_generators() const {
    std::vector<Word> gens;
    for (const auto& fc : cert.factors) {
      for (const auto& vg : fc.vertex_groups) gens.insert(gens.end(), vg.begin(), vg.end());
      gens.insert(gens.end(), fc.free_basis.begin(), fc.free_basis.end());
    }
    return gens;
  }

  CheckResult c5() const {
    CheckResult r{"C5", CheckStatus::Pass, "", 0};
    const std::vector<Word> gens = parts_generators();
    try {
      const CoreGraph sub = complete_graph(g(), build_core(g(), gens), bounds.max_cosets);
      if (canonical_encoding(sub) != canonical_encoding(graph)) {
        r.status = CheckStatus::Fail;
        r.details = "subgroup generated by the parts has a different coset graph (index " +
                    std::to_string(sub.vertex_count()) + " vs " + std::to_string(graph.vertex_count()) + ")";
        return r;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IndexBoundExceeded) throw;
      r.status = CheckStatus::Fail;
      r.details = "parts generate a subgroup of index above " + std::to_string(bounds.max_cosets);
      return r;
    }
    r.details = std::to_string(gens.size()) + " part generators generate H";
    return r;
  }

  CheckResult c6() const {
    CheckResult r{"C6", CheckStatus::Pass, "", 0};
    const KuroshInvariants whole = kurosh_invariants(g(), kurosh_decompose(g(), graph));
    KuroshInvariants sum;
    for (const auto& fc : cert.factors) {
      const KuroshInvariants part = kurosh_invariants(g(), kurosh_decompose(g(), build_core(g(), fc.h_gens)));
      sum.classes.insert(sum.classes.end(), part.classes.begin(), part.classes.end());
      sum.free_rank += part.free_rank;
    }
    std::sort(sum.classes.begin(), sum.classes.end());
    if (!(sum == whole)) {
      r.status = CheckStatus::Fail;
      r.details = "H has " + std::to_string(whole.classes.size()) + " vertex groups and free rank " +
                  std::to_string(whole.free_rank) + "; the H_λ together have " + std::to_string(sum.classes.size()) +
                  " and " + std::to_string(sum.free_rank);
      return r;
    }
    r.details = std::to_string(whole.classes.size()) + " vertex group classes and free rank " +
                std::to_string(whole.free_rank) + " add up";
    return r;
  }

  /// Free factors of the claimed decomposition: each vertex group, and the
  /// cyclic group of each free-basis letter (exponents ±1, ±2).
  /// Letters of the claimed free product: every nontrivial vertex-group
  /// element, and each free-basis element with its inverse.
  struct Letter {
    Word w;
    std::uint32_t part;
    std::uint32_t inverse;
    bool free;
  };

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    std::uint32_t part = 0;
    for (const auto& fc : cert.factors) {
      for (const auto& vg : fc.vertex_groups) {
        const auto first = static_cast<std::uint32_t>(out.size());
        for (const Word& w : vg) out.push_back({w, part, 0, false});
        for (auto i = first; i < out.size(); ++i) {
          const Word inv = g().invert(out[i].w);
          out[i].inverse = i;
          for (auto j = first; j < out.size(); ++j)
            if (out[j].w == inv) out[i].inverse = j;
        }
        ++part;
      }
      for (const Word& f : fc.free_basis) {
        const auto i = static_cast<std::uint32_t>(out.size());
        out.push_back({f, part, i + 1, true});
        out.push_back({g().invert(f), part, i, true});
        ++part;
      }
    }
    return out;
  }

  /// b may follow a in a reduced word of the abstract free product.
  static bool may_follow(const Letter& a, std::uint32_t ai, const Letter& b, std::uint32_t bi) {
    if (a.part != b.part) return true;
    return a.free && ai == bi;
  }

  CheckResult c7() const {
    CheckResult r{"C7", CheckStatus::Pass, "", 0};
    const auto alpha = letters();
    const std::size_t len = bounds.free_test_len;
    for (const Letter& l : alpha)
      if (l.w.empty()) {
        r.status = CheckStatus::Fail;
        r.details = "part " + std::to_string(l.part) + " contains the identity";
        return r;
      }

    // A relation of length k ≤ L splits as u·v = 1 with |u| = ⌈k/2⌉ and
    // |v| = ⌊k/2⌋, so u and v⁻¹ are different reduced words of length
    // ≤ ⌈L/2⌉ with the same value in G. Conversely two such words with one
    // value give a relation of length ≤ L + 1. So it suffices to check that
    // the ball of radius ⌈L/2⌉ maps injectively into G.
    const std::size_t radius = (len + 1) / 2;
    const std::size_t n = alpha.size();

    // Depth-first walk of the ball; `visit` sees each reduced word once.
    std::vector<std::uint32_t> path;
    auto walk = [&](auto&& visit) {
      std::function<bool(const Word&)> grow = [&](const Word& prod) {
        if (!visit(prod)) return false;
        if (path.size() == radius) return true;
        for (std::uint32_t b = 0; b < n; ++b) {
          if (!path.empty() && !may_follow(alpha[path.back()], path.back(), alpha[b], b)) continue;
          path.push_back(b);
          const bool go = grow(g().multiply(prod, alpha[b].w));
          path.pop_back();
          if (!go) return false;
        }
        return true;
      };
      grow(Word{});
    };

    // First pass keeps only hashes; words are regenerated for colliding ones.
    std::vector<std::uint64_t> hashes;
    bool over_budget = false;
    walk([&](const Word& w) {
      if (hashes.size() >= bounds.free_test_budget) return !(over_budget = true);
      hashes.push_back(WordHash{}(w));
      return true;
    });

    if (!over_budget) {
      const std::size_t total = hashes.size();
      std::sort(hashes.begin(), hashes.end());
      std::vector<std::uint64_t> dup;
      for (std::size_t i = 1; i < hashes.size(); ++i)
        if (hashes[i] == hashes[i - 1] && (dup.empty() || dup.back() != hashes[i])) dup.push_back(hashes[i]);
      hashes = {};

      if (!dup.empty()) {
        std::unordered_map<Word, std::vector<std::uint32_t>, WordHash> seen;
        std::string witness;
        walk([&](const Word& w) {
          if (!std::binary_search(dup.begin(), dup.end(), WordHash{}(w))) return true;
          auto [it, fresh] = seen.emplace(w, path);
          if (fresh) return true;
          auto spell = [](const std::vector<std::uint32_t>& p) {
            std::string s = "[";
            for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
            return s + "]";
          };
          witness = "letter words " + spell(it->second) + " and " + spell(path) + " both equal '" +
                    format_word(w) + "'";
          return false;
        });
        if (!witness.empty()) {
          r.status = CheckStatus::Fail;
          r.details = "relation: " + witness;
          return r;
        }
      }
      r.details = "bounded L=" + std::to_string(len) + ", exhaustive: " + std::to_string(total) +
                  " reduced words of length <= " + std::to_string(radius) + " over " + std::to_string(n) +
                  " letters are distinct in G";
      return r;
    }

    // Ball too large: sample reduced words of length ≤ L instead.
    std::mt19937_64 rng(bounds.seed);
    const std::size_t samples = std::min<std::size_t>(bounds.free_test_budget, 1'000'000);
    for (std::size_t s = 0; s < samples && n > 0; ++s) {
      const std::size_t k = 1 + rng() % len;
      Word prod;
      std::uint32_t last = static_cast<std::uint32_t>(n);
      for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t b;
        do b = static_cast<std::uint32_t>(rng() % n);
        while (last < n && !may_follow(alpha[last], last, alpha[b], b));
        prod = g().multiply(prod, alpha[b].w);
        last = b;
      }
      if (prod.empty()) {
        r.status = CheckStatus::Fail;
        r.details = "sampled reduced word of length " + std::to_string(k) + " is trivial (seed " +
                    std::to_string(bounds.seed) + ", sample " + std::to_string(s) + ")";
        return r;
      }
    }
    r.details = "bounded L=" + std::to_string(len) + ", sampled " + std::to_string(samples) +
                " reduced words over " + std::to_string(n) + " letters (ball exceeds the budget)";
    return r;
  }
};

}  // namespace

VerificationReport verify_certificate(const FactorSystem& sys, const CoreGraph& h_graph,
                                      const ConjectureCertificate& cert, const Bounds& bounds,
                                      std::span<const std::string_view> which) {
  check_shape(sys, cert);
  if (!h_graph.complete()) throw Error(ErrorKind::GraphNotComplete, "verification needs the full coset graph of H");
  const Checker chk{sys, h_graph, cert, bounds};
  using Fn = CheckResult (Checker::*)() const;
  const std::pair<std::string_view, Fn> all[] = {{"C1", &Checker::c1}, {"C2", &Checker::c2}, {"C3", &Checker::c3},
                                                 {"C4", &Checker::c4}, {"C5", &Checker::c5}, {"C6", &Checker::c6},
                                                 {"C7", &Checker::c7}};
  VerificationReport report;
  for (const auto& [name, fn] : all) {
    if (std::find(which.begin(), which.end(), name) == which.end()) {
      report.checks.push_back({std::string(name), CheckStatus::Skipped, "not requested", 0});
      continue;
    }
    const auto start = Clock::now();
    CheckResult res = (chk.*fn)();
    res.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    report.checks.push_back(std::move(res));
  }
  return report;
}

VerificationReport verify_certificate(const FactorSystem& sys, const CoreGraph& h_graph,
                                      const ConjectureCertificate& cert, const Bounds& bounds) {
  static constexpr std::string_view all[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7"};
  return verify_certificate(sys, h_graph, cert, bounds, all);
}

VerificationReport verify_certificate(const FactorSystem& sys, std::span<const Word> h_gens,
                                      const ConjectureCertificate& cert, const Bounds& bounds) {
  check_shape(sys, cert);
  const CoreGraph graph = complete_graph(sys.g(), build_core(sys.g(), h_gens), bounds.max_cosets);
  return verify_certificate(sys, graph, cert, bounds);
}

}  // namespace fpg
