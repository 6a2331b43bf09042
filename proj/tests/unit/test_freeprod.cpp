#include <random>

#include "doctest.h"
#include "fpg/error.hpp"
#include "fpg/freeprod.hpp"
#include "helpers.hpp"
#include "random_systems.hpp"

using namespace fpg;

namespace {

Word random_word(const FreeProduct& g, std::mt19937_64& rng, std::size_t max_len) {
  std::vector<Syllable> raw;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Factor f = static_cast<Factor>(rng() % g.rank());
    raw.push_back({f, static_cast<Elem>(rng() % g.factor(f).order())});
  }
  return g.normalize(raw);
}

bool normal(const FreeProduct& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].elem == 0 || w[i].elem >= g.factor(w[i].factor).order()) return false;
    if (i && w[i].factor == w[i - 1].factor) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("freeprod") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto z3 = FiniteGroup::cyclic(3);

  TEST_CASE("examples: multiply") {
    const FreeProduct g({z2, z2});
    const Word w = g.parse("0:1 1:1");
    CHECK(g.multiply(Word{}, w) == w);
    const Word aba = g.parse("0:1 1:1 0:1");
    CHECK(g.multiply(aba, aba).empty());
    const FreeProduct h({z2, z3});
    CHECK(h.multiply(h.parse("0:1 1:1"), h.parse("1:2 0:1")).empty());
  }

  TEST_CASE("examples: invert") {
    const FreeProduct h({z2, z3});
    CHECK(h.invert(Word{}).empty());
    CHECK(format_word(h.invert(h.parse("0:1 1:1"))) == "1:2 0:1");
    const FreeProduct g({z2, z2});
    CHECK(g.invert(g.parse("0:1")) == g.parse("0:1"));
  }

  TEST_CASE("examples: conjugate") {
    const FreeProduct g({z2, z2});
    const Word w = g.parse("0:1 1:1");
    CHECK(g.conjugate(w, Word{}) == w);
    CHECK(format_word(g.conjugate(g.parse("0:1"), g.parse("1:1"))) == "1:1 0:1 1:1");
    const FreeProduct h({z2, z3});
    CHECK(h.conjugate(h.parse("1:1"), h.parse("1:1")) == h.parse("1:1"));
  }

  TEST_CASE("examples: theta_word") {
    const auto id = FactorSystem::identity({z2, z3});
    const Word w = id.g().parse("0:1 1:2 0:1 1:1");
    CHECK(id.theta_word(w) == w);
    const auto sys = fpg::testing::sys_a();
    CHECK(format_word(sys.theta_word(sys.g().parse("1:1 0:1 1:1"))) == "0:1");
    CHECK(sys.theta_word(sys.g().parse("0:1 1:1 0:1")).empty());
  }

  TEST_CASE("word syntax") {
    const FreeProduct h({z2, z3});
    CHECK(h.parse("").empty());
    CHECK(h.parse("  ").empty());
    CHECK(format_word(h.parse("0:1 1:1 1:2")) == "0:1");
    CHECK(format_word(h.parse("1:0 0:1")) == "0:1");
    for (const char* bad : {"2:1", "1:3", "x", "0:", ":1", "0:1:1", "0 1", "-1:1"}) {
      CAPTURE(bad);
      try {
        h.parse(bad);
        FAIL("accepted malformed word");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MalformedWord);
      }
    }
  }

  TEST_CASE("system validation") {
    CHECK_THROWS_AS(FactorSystem({z2}, {z2, z2}, {{0, 1}}), Error);
    try {
      FactorSystem({z2}, {z2}, {{0, 0}});
      FAIL("accepted a non-surjective theta");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotSurjective);
    }
    CHECK(fpg::testing::sys_a().hash() == fpg::testing::sys_a().hash());
    CHECK(fpg::testing::sys_a().hash() != FactorSystem::identity({z2, z2}).hash());
  }

  TEST_CASE("properties: normal form, group laws, homomorphism") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
      const auto rs = fpg::testing::random_system(rng);
      const FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
      const FreeProduct& g = sys.g();
      for (int k = 0; k < 10; ++k) {
        const Word u = random_word(g, rng, 8), v = random_word(g, rng, 8), w = random_word(g, rng, 8);
        const Word uv = g.multiply(u, v);
        CHECK(normal(g, uv));
        CHECK(uv.size() <= u.size() + v.size());
        CHECK(g.multiply(uv, w) == g.multiply(u, g.multiply(v, w)));
        CHECK(g.invert(g.invert(u)) == u);
        CHECK(g.multiply(u, g.invert(u)).empty());
        CHECK(sys.theta_word(uv) == sys.b().multiply(sys.theta_word(u), sys.theta_word(v)));
        CHECK(g.parse(format_word(u)) == u);
      }
    }
  }
}
