#include <random>

#include "doctest.h"
#include "fpg/conjecture.hpp"
#include "fpg/error.hpp"
#include "fpg/verify.hpp"
#include "helpers.hpp"
#include "random_systems.hpp"

using namespace fpg;
using fpg::testing::words_text;

namespace {

/// The system at position `index` of the random stream for `seed`.
fpg::testing::RandomSystem nth_system(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed);
  fpg::testing::RandomSystem rs;
  for (int i = 0; i <= index; ++i) rs = fpg::testing::random_system(rng);
  return rs;
}

}  // namespace

TEST_SUITE("conjecture") {
  TEST_CASE("examples: H = G with Θ = id") {
    const auto sys = FactorSystem::identity({FiniteGroup::cyclic(2), FiniteGroup::sym(3)});
    const auto cert = conjecture_decompose(sys, fpg::testing::all_syllables(sys.g()), {});
    CHECK(cert.index == 1);
    REQUIRE(cert.factors.size() == 2);
    for (const auto& f : cert.factors) {
      REQUIRE(f.reps.size() == 1);
      CHECK(f.reps[0].empty());
      CHECK(f.vertex_groups[0].size() == sys.g().factor(f.lambda).order() - 1);
      CHECK(f.free_basis.empty());
    }
  }

  TEST_CASE("examples: SYS-A") {
    const auto sys = fpg::testing::sys_a();
    const auto gens = fpg::testing::sys_a_gens(sys.g());
    const auto cert = conjecture_decompose(sys, gens, {});
    CHECK(cert.route == Route::HigginsTree);
    REQUIRE(cert.factors.size() == 2);
    const auto& f0 = cert.factors[0];
    CHECK(words_text(f0.reps) == std::vector<std::string>{"", "1:1"});
    CHECK(words_text(f0.betas) == std::vector<std::string>{"", "1:1"});
    CHECK(words_text(f0.beta_primes) == std::vector<std::string>{"", "1:1"});
    CHECK(f0.g_corrections == std::vector<Elem>{0, 0});
    REQUIRE(f0.vertex_groups.size() == 2);
    CHECK(words_text(f0.vertex_groups[0]) == std::vector<std::string>{"0:1"});
    CHECK(words_text(f0.vertex_groups[1]) == std::vector<std::string>{"1:1 0:1 1:1"});
    CHECK(f0.free_basis.empty());
    CHECK(cert.factors[1].h_gens.empty());
    CHECK(cert.factors[1].reps.empty());
    CHECK(cert.factors[1].free_basis.empty());
    CHECK(sys.theta_word(sys.g().parse("1:1")).empty());
  }

  TEST_CASE("examples: determinism under permuted and redundant generators") {
    const auto sys = fpg::testing::sys_a();
    auto gens = fpg::testing::sys_a_gens(sys.g());
    const auto first = conjecture_decompose(sys, gens, {});
    CHECK(conjecture_decompose(sys, gens, {}) == first);
    std::reverse(gens.begin(), gens.end());
    gens.push_back(sys.g().multiply(gens[1], gens[0]));
    CHECK(conjecture_decompose(sys, gens, {}) == first);
  }

  TEST_CASE("certificate invariants on random systems") {
    std::mt19937_64 rng(19);
    for (int round = 0; round < 150; ++round) {
      const auto rs = fpg::testing::random_system(rng);
      const FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
      if (!theta_image_is_onto(sys, rs.h_gens)) continue;
      const auto cert = conjecture_decompose(sys, rs.h_gens, {});
      CHECK(cert.index == rs.index);
      for (const auto& f : cert.factors) {
        bool meets = false;
        for (Elem x = 1; x < sys.g().factor(f.lambda).order(); ++x)
          meets |= rs.action.apply(Word::syllable(f.lambda, x)) == 0;
        bool has_eps = false;
        for (std::size_t i = 0; i < f.reps.size(); ++i) {
          CHECK(sys.theta_word(f.reps[i]).empty());
          CHECK(f.reps[i] == sys.g().multiply(sys.g().normalize({{f.lambda, sys.g().factor(f.lambda).inv(f.g_corrections[i])}}),
                                              f.beta_primes[i]));
          has_eps |= f.reps[i].empty();
          for (const Word& w : f.vertex_groups[i]) {
            CHECK(rs.action.apply(w) == 0);
            // Conjugate of an element of G_λ by the representative.
            const Word inner = sys.g().multiply(sys.g().multiply(f.reps[i], w), sys.g().invert(f.reps[i]));
            CHECK(inner.size() == 1);
            CHECK(inner[0].factor == f.lambda);
          }
        }
        CHECK(meets == has_eps);
        for (const Word& w : f.free_basis) CHECK(rs.action.apply(w) == 0);
      }
    }
  }

  // Systems on which no Θ-trivial tree variant yields a free product; the
  // Kurosh-move fallback must take over and still verify.
  TEST_CASE("fallback route on known tree failures") {
    for (auto [seed, index] : {std::pair{1, 19}, std::pair{3, 241}}) {
      CAPTURE(seed);
      CAPTURE(index);
      const auto rs = nth_system(seed, index);
      const FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
      REQUIRE(theta_image_is_onto(sys, rs.h_gens));
      const auto cert = conjecture_decompose(sys, rs.h_gens, {});
      CHECK(cert.route == Route::KuroshMoves);
      for (const auto& f : cert.factors) CHECK(f.betas.empty());
      const auto report = verify_certificate(sys, rs.h_gens, cert, {});
      for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.details);
        CHECK(c.status == CheckStatus::Pass);
      }
    }
  }

  TEST_CASE("errors") {
    const auto sys = fpg::testing::sys_a();
    Bounds tight;
    tight.max_cosets = 1;
    try {
      conjecture_decompose(sys, fpg::testing::sys_a_gens(sys.g()), tight);
      FAIL("index bound ignored");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IndexBoundExceeded);
    }
    try {
      conjecture_decompose(sys, std::vector<Word>{sys.g().parse("1:1")}, {});
      FAIL("HΘ ≠ B accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ThetaNotSurjectiveOntoB);
    }
  }
}
