#pragma once

// Experiment orchestration: run policies against schedules, account
// per-step expected regret, and aggregate across queries and runs. The
// job loop has a serial reference path and an OpenMP path; both produce
// identical results because every (query, run) cell derives its own seeds
// and aggregation happens after the join in a fixed order.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cnsb/policies.hpp"
#include "cnsb/schedule.hpp"

namespace cnsb {

struct PolicySpec {
  std::string name;       // cascade_ducb | cascade_swucb | cascade_ucb1 |
                          // cascade_klucb | ranked_exp3
  double gamma = 0.0;     // <= 0: schedule default 1 - 1/(4 sqrt(n))
  long tau = 0;           // <= 0: schedule default ceil(2 sqrt(n ln n))
  double epsilon = 0.5;
  double explore_rate = 0.0;  // <= 0: sqrt(ln L / (L n))
};

enum class EnvironmentKind { kSynthetic, kLowerBound, kQueryFile };

struct EnvironmentSpec {
  EnvironmentKind kind = EnvironmentKind::kSynthetic;
  // synthetic / query-file
  AttractionVector base;              // used when no query file is given
  PerturbationSpec perturbation;
  std::string query_file;             // per-query base vectors
  // lower-bound instance
  double p = 0.5;
  double delta = 0.25;
  std::vector<long> flip_steps;
};

struct ExperimentConfig {
  int num_items = 10;       // L
  int num_positions = 3;    // K
  long horizon = 100000;    // n
  std::vector<PolicySpec> policies;
  EnvironmentSpec environment;
  int runs_per_query = 10;
  std::uint64_t master_seed = 1;
  long trace_stride = 100;
  int workers = 1;
};

struct RunTrace {
  std::vector<long> sample_steps;       // every trace_stride steps, plus n
  std::vector<double> cumulative;       // cumulative expected regret
  double final_regret = 0.0;
  std::vector<double> epoch_regret;     // per schedule segment
};

struct AggregateResult {
  std::vector<long> sample_steps;
  std::vector<double> mean;
  std::vector<double> stderr_;          // sample sd / sqrt(num traces)
  std::size_t num_traces = 0;
};

// One policy instance per run, seeded for the policy's own randomness.
using PolicyFactory =
    std::function<std::unique_ptr<Policy>(std::uint64_t policy_seed)>;

PolicyFactory make_policy_factory(const PolicySpec& spec, int num_items,
                                  int num_positions, long horizon);

// Algorithm main loop for one run; deterministic given feedback_rng state.
RunTrace run_single(const AttractionSchedule& schedule, Policy& policy,
                    long horizon, int num_positions, long trace_stride,
                    Rng& feedback_rng);

// Mean and stderr over traces, point-wise, accumulated in input order.
AggregateResult aggregate(const std::vector<RunTrace>& traces);

// Every (query, run) cell of one policy. Schedules are built per cell from
// seeds that do not depend on the policy, so several policies can face
// identical environment draws. workers <= 1 runs the serial reference
// loop; larger counts run the OpenMP loop with identical output.
std::vector<RunTrace> run_policy_cells(const ExperimentConfig& config,
                                       std::size_t policy_index);

// Results per configured policy, in configuration order.
std::vector<AggregateResult> run_experiment(const ExperimentConfig& config);

// Schedule for one (query, run) cell; synthetic perturbation draws come
// from a seed stream shared by all policies.
AttractionSchedule build_cell_schedule(const ExperimentConfig& config,
                                       std::size_t query_index,
                                       std::size_t run_index);

// Base vectors per query (a single entry unless a query file is set).
std::vector<AttractionVector> resolve_query_bases(const ExperimentConfig& config);

// Cumulative trace differenced at the schedule's segment boundaries.
std::vector<double> per_epoch_regret(const RunTrace& trace,
                                     const AttractionSchedule& schedule);

}  // namespace cnsb
