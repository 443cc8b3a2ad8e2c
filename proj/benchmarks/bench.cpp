#include <benchmark/benchmark.h>

#include <random>

#include "roblev/classical.hpp"
#include "roblev/dataset.hpp"
#include "roblev/mcd.hpp"
#include "roblev/pipeline.hpp"

namespace {

roblev::Matrix gaussian(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n * p);
  for (auto& x : v) x = z(rng);
  return roblev::Matrix(n, p, std::move(v));
}

roblev::Matrix with_intercept(const roblev::Matrix& x) {
  roblev::Matrix out(x.rows(), x.cols() + 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out(i, 0) = 1.0;
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j + 1) = x(i, j);
  }
  return out;
}

void BM_HatValues(benchmark::State& state) {
  const auto x = with_intercept(gaussian(static_cast<std::size_t>(state.range(0)), 5, 7));
  for (auto _ : state) benchmark::DoNotOptimize(roblev::hat_values(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HatValues)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_FastMcd(benchmark::State& state) {
  const auto x = gaussian(static_cast<std::size_t>(state.range(0)),
                          static_cast<std::size_t>(state.range(1)), 11);
  roblev::McdConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(roblev::fast_mcd(x, cfg));
}
BENCHMARK(BM_FastMcd)
    ->Args({100, 2, 1})
    ->Args({1000, 2, 1})
    ->Args({1000, 5, 1})
    ->Args({1000, 5, 4})
    ->Unit(benchmark::kMillisecond);

void BM_EpilepsyPipeline(benchmark::State& state) {
  const auto data = roblev::ingest_csv(std::string(ROBLEV_FIXTURE_DIR) + "/epilepsy.csv");
  roblev::RunConfig cfg;
  cfg.formula = "~ Age10 + Base4 * Trt";
  for (auto _ : state) benchmark::DoNotOptimize(roblev::analyze(cfg, data));
}
BENCHMARK(BM_EpilepsyPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
