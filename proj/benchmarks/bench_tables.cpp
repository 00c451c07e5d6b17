#include <benchmark/benchmark.h>

#include "twistkl/app/pipeline.hpp"

using namespace twistkl;

namespace {

struct Sys {
  const char* group;
  const char* sigma;
};

// Indexed by state.range(0).
const Sys kSystems[] = {{"A3", "id"}, {"A3", "flip"}, {"B3", "id"}, {"A4", "id"}, {"A5", "flip"}, {"D4", "flip"}};

Setup setup_for(const benchmark::State& state, unsigned jobs = 1) {
  const auto& s = kSystems[state.range(0)];
  RunConfig c;
  c.group = s.group;
  c.sigma = s.sigma;
  c.use_cache = false;
  c.jobs = jobs;
  return validate(c);
}

void label(benchmark::State& state, const Setup& s) { state.SetLabel(s.system->descriptor()); }

void BM_RTable(benchmark::State& state) {
  const auto s = setup_for(state);
  HeckeAlgebra h(s.system);
  for (auto _ : state) benchmark::DoNotOptimize(compute_r_table(h));
  label(state, s);
}

void BM_PQTables(benchmark::State& state) {
  const auto s = setup_for(state);
  HeckeAlgebra h(s.system);
  const auto r = compute_r_table(h);
  for (auto _ : state) {
    auto p = compute_p_table(*s.system, r);
    benchmark::DoNotOptimize(compute_q_table(*s.system, p));
  }
  label(state, s);
}

void BM_StructureConstants(benchmark::State& state) {
  const auto s = setup_for(state, static_cast<unsigned>(state.range(1)));
  HeckeAlgebra h(s.system);
  const auto p = compute_p_table(*s.system, compute_r_table(h));
  const auto c = c_basis_unsigned(h, p);
  for (auto _ : state) benchmark::DoNotOptimize(compute_structure_constants(h, c, p, s.config.jobs));
  label(state, s);
}

void BM_CellsJPsi(benchmark::State& state) {
  const auto s = setup_for(state);
  Pipeline pipe(s);
  auto& t = pipe.tables();
  const auto h = compute_structure_constants(*t.hecke, t.cprime, t.p);
  for (auto _ : state) {
    auto cells = compute_cells(*t.sys, h, t.p);
    benchmark::DoNotOptimize(build_j_ring(*t.sys, h, cells));
    benchmark::DoNotOptimize(build_phi(*t.sys, h, cells, t.p));
  }
  label(state, s);
}

void BM_Representations(benchmark::State& state) {
  const auto s = setup_for(state);
  Pipeline pipe(s);
  auto& t = pipe.cell_tables();
  for (auto _ : state)
    benchmark::DoNotOptimize(build_reps(*t.hecke, t.cprime, t.p, t.cells, t.phi, s.system_delta));
  label(state, s);
}

void BM_FlagOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), q = static_cast<int>(state.range(1));
  const bool twisted = state.range(2) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_flag_oracle(n, q, twisted));
}

void BM_RCounts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), q = static_cast<int>(state.range(1));
  const bool twisted = state.range(2) != 0;
  RunConfig c;
  c.group = "A" + std::to_string(n - 1);
  c.sigma = twisted ? "flip" : "id";
  c.use_cache = false;
  Pipeline pipe(validate(c));
  const auto o = build_flag_oracle(n, q, twisted);
  const auto& r = pipe.tables().r;
  for (auto _ : state) benchmark::DoNotOptimize(verify_r_counts(o, r));
}

}  // namespace

BENCHMARK(BM_RTable)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PQTables)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureConstants)->Args({0, 1})->Args({2, 1})->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellsJPsi)->Args({0})->Args({2})->Args({3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Representations)->Args({0})->Args({1})->Args({2})->Args({3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlagOracle)->Args({3, 2, 1})->Args({4, 2, 1})->Args({4, 2, 0})->Args({4, 3, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RCounts)->Args({4, 2, 1})->Args({4, 3, 0})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
