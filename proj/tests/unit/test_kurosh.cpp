#include <random>

#include "doctest.h"
#include "fpg/covgraph.hpp"
#include "fpg/kurosh.hpp"
#include "fpg/verify.hpp"
#include "helpers.hpp"
#include "random_systems.hpp"

using namespace fpg;
using fpg::testing::words_text;

TEST_SUITE("kurosh") {
  TEST_CASE("examples: spanning_data") {
    const auto sys = fpg::testing::sys_a();
    const FreeProduct& g = sys.g();
    const auto one = spanning_data(g, build_core(g, {}));
    CHECK(one.global_tree.empty());
    CHECK(one.transversal == std::vector<Word>{Word{}});

    const auto a = spanning_data(g, complete_graph(g, build_core(g, fpg::testing::sys_a_gens(g)), 10));
    REQUIRE(a.global_tree.size() == 1);
    CHECK(a.global_tree[0].lambda == 1);
    CHECK(a.component_trees.size() == 1);
    CHECK(words_text(a.transversal) == std::vector<std::string>{"", "1:1"});

    const auto b = fpg::testing::sys_b();
    const auto sb = spanning_data(b, complete_graph(b, build_core(b, fpg::testing::sys_b_gens(b)), 10));
    CHECK(sb.component_trees.size() == 2);
    CHECK(sb.global_tree.size() == 2);
    // p(Hb) = b and p(Hb²) = b·b = b² in normal form.
    std::vector<std::string> t = words_text(sb.transversal);
    std::sort(t.begin(), t.end());
    CHECK(t == std::vector<std::string>{"", "1:1", "1:2"});
  }

  TEST_CASE("examples: kurosh_decompose") {
    const FreeProduct h({FiniteGroup::cyclic(2), FiniteGroup::sym(3)});
    const auto whole = kurosh_decompose(h, build_core(h, fpg::testing::all_syllables(h)));
    REQUIRE(whole.pieces.size() == 2);
    for (Factor f = 0; f < 2; ++f) {
      CHECK(whole.pieces[f].lambda == f);
      CHECK(whole.pieces[f].rep.empty());
      CHECK(whole.pieces[f].vertex_group.size() == h.factor(f).order() - 1);
    }
    CHECK(whole.free_rank == 0);

    const auto sys = fpg::testing::sys_a();
    const FreeProduct& g = sys.g();
    const auto a = kurosh_decompose(g, complete_graph(g, build_core(g, fpg::testing::sys_a_gens(g)), 10));
    REQUIRE(a.pieces.size() == 2);
    CHECK(a.pieces[0].lambda == 0);
    CHECK(format_word(a.pieces[0].rep) == "");
    CHECK(words_text(a.pieces[0].vertex_group) == std::vector<std::string>{"0:1"});
    CHECK(a.pieces[1].lambda == 0);
    CHECK(format_word(a.pieces[1].rep) == "1:1");
    CHECK(words_text(a.pieces[1].vertex_group) == std::vector<std::string>{"1:1 0:1 1:1"});
    CHECK(a.free_rank == 0);

    const auto b = fpg::testing::sys_b();
    const auto kb = kurosh_decompose(b, complete_graph(b, build_core(b, fpg::testing::sys_b_gens(b)), 10));
    REQUIRE(kb.pieces.size() == 3);
    std::vector<std::string> reps, vgs;
    for (const auto& p : kb.pieces) {
      CHECK(p.lambda == 0);
      reps.push_back(format_word(p.rep));
      vgs.push_back(format_word(p.vertex_group.at(0)));
    }
    CHECK(reps == std::vector<std::string>{"", "1:2", "1:1"});
    CHECK(vgs == std::vector<std::string>{"0:1", "1:1 0:1 1:2", "1:2 0:1 1:1"});
    CHECK(kb.free_rank == 0);
    CHECK(kb.free_basis.empty());
  }

  TEST_CASE("examples: kurosh_invariants") {
    const auto sys = fpg::testing::sys_a();
    const FreeProduct& g = sys.g();
    const auto a = kurosh_invariants(g, kurosh_decompose(g, complete_graph(g, build_core(g, fpg::testing::sys_a_gens(g)), 10)));
    CHECK(a.classes.size() == 2);
    CHECK(a.classes[0] == std::pair<Factor, ElemSet>{0, {0, 1}});
    CHECK(a.classes[1] == a.classes[0]);
    CHECK(a.free_rank == 0);
    const auto b = fpg::testing::sys_b();
    const auto kb = kurosh_invariants(b, kurosh_decompose(b, build_core(b, fpg::testing::sys_b_gens(b))));
    CHECK(kb.classes.size() == 3);
    CHECK(kb.free_rank == 0);
  }

  TEST_CASE("infinite index: free group of rank 2 inside Z2∗Z2∗Z2") {
    const auto z2 = FiniteGroup::cyclic(2);
    const FreeProduct g({z2, z2, z2});
    const std::vector<Word> gens{g.parse("0:1 1:1"), g.parse("1:1 2:1")};
    const auto d = kurosh_decompose(g, build_core(g, gens));
    CHECK(d.pieces.empty());
    CHECK(d.free_rank == 2);
  }

  TEST_CASE("properties: rank formula, vertex groups, double cosets") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 200; ++round) {
      const auto rs = fpg::testing::random_system(rng);
      const FreeProduct g(rs.g_factors);
      const auto graph = complete_graph(g, build_core(g, rs.h_gens), 100);
      const auto span = spanning_data(g, graph);
      const auto d = kurosh_decompose(g, graph, span);

      std::size_t sum = 0;
      for (const auto& per : span.components)
        for (const auto& c : per) sum += c.vertices.size() - 1;
      CHECK(d.free_rank == sum - (graph.vertex_count() - 1));
      CHECK(d.free_rank == d.free_basis.size());
      CHECK(d.free_rank == span.component_trees.size() - span.global_tree.size());
      CHECK(span.global_tree.size() == graph.vertex_count() - 1);

      for (const Word& w : d.free_basis) CHECK(rs.action.apply(w) == 0);
      for (Factor f = 0; f < g.rank(); ++f) {
        const auto orbit = brute_force_double_cosets(graph, f);
        std::set<std::uint32_t> seen;
        bool has_eps = false;
        for (const auto& p : d.pieces) {
          if (p.lambda != f) continue;
          has_eps |= p.rep.empty();
          // x ↦ orbit of the coset H·x⁻¹.
          CHECK(seen.insert(orbit[graph.trace(g.invert(p.rep))]).second);
          for (Elem x = 1; x < g.factor(f).order(); ++x) {
            const bool in_h = rs.action.apply(g.conjugate(Word::syllable(f, x), p.rep)) == 0;
            CHECK(in_h == std::binary_search(p.stabilizer.begin(), p.stabilizer.end(), x));
          }
          for (const Word& w : p.vertex_group) CHECK(rs.action.apply(w) == 0);
        }
        // H ∩ G_λ ≠ 1 forces a piece at ε.
        bool meets = false;
        for (Elem x = 1; x < g.factor(f).order(); ++x) meets |= rs.action.apply(Word::syllable(f, x)) == 0;
        CHECK(meets == has_eps);
      }
    }
  }
}
