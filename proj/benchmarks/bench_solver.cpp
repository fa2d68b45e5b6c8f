#include <benchmark/benchmark.h>

#include "urllc/beamform/initialization.hpp"
#include "urllc/beamform/penalty.hpp"
#include "urllc/beamform/subproblem.hpp"
#include "urllc/conic/solver.hpp"
#include "urllc/protocol/targets.hpp"
#include "urllc/radio/channels.hpp"

using namespace urllc;

namespace {

// First subproblem of the leader-selection iteration on realization 0.
conic::ConicProgram first_subproblem(int groups, int users_per_group) {
  SystemConfig cfg;
  cfg.set_groups(groups, users_per_group);
  const auto real = radio::make_realization(cfg, 0);
  const auto p = beamform::make_problem(real.channels, cfg, protocol::phase1_targets(cfg),
                                        beamform::BeamVariant::per_group);
  const auto v = beamform::mrt_median_init(p);
  const auto t = beamform::exact_slack(p, v);
  const auto lin = beamform::linearize_penalty(t, cfg.layout(), cfg.penalty_weights, cfg.sca.slack_floor);
  return beamform::build_subproblem(p, v, t, beamform::ScaMode::leader_penalty, &lin).program;
}

void solve_subproblem(benchmark::State& state, conic::LinearAlgebra mode) {
  const auto prog = first_subproblem(static_cast<int>(state.range(0)), 8);
  conic::SolverOptions opt;
  opt.tol = 1e-9;
  opt.linear_algebra = mode;
  int iters = 0;
  for (auto _ : state) {
    const auto s = conic::solve(prog, opt);
    iters = s.iterations;
    benchmark::DoNotOptimize(s.objective);
  }
  state.counters["vars"] = prog.num_vars;
  state.counters["ipm_iters"] = iters;
}

void BM_SubproblemDense(benchmark::State& state) { solve_subproblem(state, conic::LinearAlgebra::dense); }
void BM_SubproblemLowRank(benchmark::State& state) { solve_subproblem(state, conic::LinearAlgebra::low_rank); }

}  // namespace

BENCHMARK(BM_SubproblemDense)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubproblemLowRank)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
