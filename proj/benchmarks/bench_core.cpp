#include <benchmark/benchmark.h>

#include <random>

#include "baortho/config.hpp"
#include "baortho/verify.hpp"

namespace {

using namespace baortho;

const RunConfig& s2_config() {
  static const RunConfig cfg =
      load_config(std::string(BAORTHO_CONFIG_DIR) + "/s2.json");
  return cfg;
}

const CoordinateChart& s2_chart() {
  static const CoordinateChart chart =
      CoordinateChart::build(s2_config().sd, s2_config().omega);
  return chart;
}

void BM_SolveAtPoint(benchmark::State& state) {
  const BASolver solver(s2_config().sd);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> box(0.0, 6.0);
  for (auto _ : state) {
    const double u[2] = {box(rng), box(rng)};
    benchmark::DoNotOptimize(solver.solve(u));
  }
}
BENCHMARK(BM_SolveAtPoint);

void BM_ResidueExtraction(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_residue_data(s2_config().sd, s2_config().omega));
}
BENCHMARK(BM_ResidueExtraction);

void BM_ChartPosition(benchmark::State& state) {
  const CoordinateChart& chart = s2_chart();
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> box(0.0, 6.0);
  for (auto _ : state) {
    const double u[2] = {box(rng), box(rng)};
    benchmark::DoNotOptimize(chart.position(u));
  }
}
BENCHMARK(BM_ChartPosition);

void BM_RotationCoefficients(benchmark::State& state) {
  const CoordinateChart& chart = s2_chart();
  const double u[2] = {0.7, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(chart.rotation_coefficients(u));
}
BENCHMARK(BM_RotationCoefficients);

void BM_CurvaturePoint(benchmark::State& state) {
  const CoordinateChart& chart = s2_chart();
  const GridSpec one_point{{0.7, 0.3}, {0.7, 0.3}, {1, 1}};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_gauss_curvature(chart, one_point));
}
BENCHMARK(BM_CurvaturePoint);

void BM_IdentitySweep(benchmark::State& state) {
  const CoordinateChart& chart = s2_chart();
  const GridSpec grid{{0.0, 0.0}, {6.0, 6.0},
                      {static_cast<int>(state.range(0)),
                       static_cast<int>(state.range(0))}};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_theorem_identities(chart, grid));
}
BENCHMARK(BM_IdentitySweep)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
