#include <benchmark/benchmark.h>

#include <random>

#include "fpg/conjecture.hpp"
#include "fpg/covgraph.hpp"
#include "fpg/kurosh.hpp"
#include "fpg/verify.hpp"
#include "random_systems.hpp"

using namespace fpg;

namespace {

// A fixed batch of random systems; every benchmark iterates over all of them.
const std::vector<fpg::testing::RandomSystem>& batch() {
  static const auto systems = [] {
    std::mt19937_64 rng(99);
    std::vector<fpg::testing::RandomSystem> out;
    while (out.size() < 32) {
      auto rs = fpg::testing::random_system(rng);
      const FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
      if (theta_image_is_onto(sys, rs.h_gens)) out.push_back(std::move(rs));
    }
    return out;
  }();
  return systems;
}

void BM_Multiply(benchmark::State& state) {
  const FreeProduct g({FiniteGroup::sym(3), FiniteGroup::cyclic(4), FiniteGroup::cyclic(3)});
  std::mt19937_64 rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 256; ++i) {
    std::vector<Syllable> raw(static_cast<std::size_t>(state.range(0)));
    for (auto& s : raw) {
      s.factor = static_cast<Factor>(rng() % 3);
      s.elem = static_cast<Elem>(1 + rng() % (g.factor(s.factor).order() - 1));
    }
    words.push_back(g.normalize(raw));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.multiply(words[i % 256], words[(i + 1) % 256]));
    ++i;
  }
}
BENCHMARK(BM_Multiply)->Arg(4)->Arg(16)->Arg(64);

void BM_BuildAndComplete(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& rs : batch()) {
      const FreeProduct g(rs.g_factors);
      benchmark::DoNotOptimize(complete_graph(g, build_core(g, rs.h_gens), 100));
    }
}
BENCHMARK(BM_BuildAndComplete)->Unit(benchmark::kMillisecond);

void BM_Kurosh(benchmark::State& state) {
  std::vector<std::pair<FreeProduct, CoreGraph>> graphs;
  for (const auto& rs : batch()) {
    const FreeProduct g(rs.g_factors);
    graphs.emplace_back(g, complete_graph(g, build_core(g, rs.h_gens), 100));
  }
  for (auto _ : state)
    for (const auto& [g, gr] : graphs) benchmark::DoNotOptimize(kurosh_decompose(g, gr));
}
BENCHMARK(BM_Kurosh)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& rs : batch()) {
      const FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
      benchmark::DoNotOptimize(conjecture_decompose(sys, rs.h_gens, {}));
    }
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

// Verification at a given freeness-test length L.
void BM_Verify(benchmark::State& state) {
  std::vector<std::pair<FactorSystem, ConjectureCertificate>> certs;
  for (const auto& rs : batch()) {
    FactorSystem sys(rs.g_factors, rs.b_factors, rs.theta);
    auto cert = conjecture_decompose(sys, rs.h_gens, {});
    certs.emplace_back(std::move(sys), std::move(cert));
  }
  Bounds b;
  b.free_test_len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    for (std::size_t i = 0; i < certs.size(); ++i)
      benchmark::DoNotOptimize(verify_certificate(certs[i].first, batch()[i].h_gens, certs[i].second, b));
}
BENCHMARK(BM_Verify)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
