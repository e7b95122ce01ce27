#include "cnsb/harness.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cnsb/bounds.hpp"
#include "cnsb/model.hpp"

namespace cnsb {

namespace {

// Seed stream tags within one (query, run) cell.
constexpr std::uint64_t kEnvStream = 0;
constexpr std::uint64_t kFeedbackStreamBase = 100;
constexpr std::uint64_t kPolicyStreamBase = 200;

}  // namespace

PolicyFactory make_policy_factory(const PolicySpec& spec, int num_items,
                                  int num_positions, long horizon) {
  if (spec.name == "cascade_ducb") {
    const double gamma =
        spec.gamma > 0.0 ? spec.gamma : gamma_for_horizon(horizon, std::nullopt);
    return [=](std::uint64_t) {
      return std::make_unique<CascadeDucb>(num_items, num_positions, gamma,
                                           spec.epsilon);
    };
  }
  if (spec.name == "cascade_swucb") {
    const long tau = spec.tau > 0 ? spec.tau : tau_for_horizon(horizon, std::nullopt);
    return [=](std::uint64_t) {
      return std::make_unique<CascadeSwucb>(num_items, num_positions, tau,
                                            spec.epsilon);
    };
  }
  if (spec.name == "cascade_ucb1") {
    return [=](std::uint64_t) {
      return std::make_unique<CascadeUcb1>(num_items, num_positions);
    };
  }
  if (spec.name == "cascade_klucb") {
    return [=](std::uint64_t) {
      return std::make_unique<CascadeKlUcb>(num_items, num_positions);
    };
  }
  if (spec.name == "ranked_exp3") {
    return [=](std::uint64_t policy_seed) {
      return std::make_unique<RankedExp3>(num_items, num_positions,
                                          spec.explore_rate, horizon, policy_seed);
    };
  }
  throw std::invalid_argument("unknown policy name: " + spec.name);
}

RunTrace run_single(const AttractionSchedule& schedule, Policy& policy,
                    long horizon, int num_positions, long trace_stride,
                    Rng& feedback_rng) {
  if (schedule.horizon() < horizon)
    throw std::invalid_argument("schedule horizon shorter than the run horizon");
  if (trace_stride < 1) throw std::invalid_argument("trace stride must be >= 1");

  RunTrace trace;
  double cumulative = 0.0;
  std::size_t segment = 0;
  double optimal_reward = expected_reward(
      optimal_list(schedule.segments()[0].alpha, num_positions),
      schedule.segments()[0].alpha);
  trace.epoch_regret.assign(1, 0.0);

  for (long t = 1; t <= horizon; ++t) {
    // Advance the cached optimal reward at segment boundaries.
    if (segment + 1 < schedule.segments().size() &&
        t >= schedule.segments()[segment + 1].start_step) {
      ++segment;
      const AttractionVector& alpha = schedule.segments()[segment].alpha;
      optimal_reward =
          expected_reward(optimal_list(alpha, num_positions), alpha);
      trace.epoch_regret.push_back(0.0);
    }
    const AttractionVector& alpha = schedule.segments()[segment].alpha;

    const RankedList list = policy.select(t);
    if (static_cast<int>(list.size()) != num_positions)
      throw std::runtime_error("policy " + policy.name() +
                               " emitted a list of wrong length");
    check_ranked_list(list, alpha.size());

    const double regret = optimal_reward - expected_reward(list, alpha);
    cumulative += regret;
    trace.epoch_regret[segment] += regret;

    const ClickOutcome click = sample_feedback(schedule, list, t, feedback_rng);
    policy.update(t, list, click);

    if (t % trace_stride == 0 || t == horizon) {
      trace.sample_steps.push_back(t);
      trace.cumulative.push_back(cumulative);
    }
  }
  trace.final_regret = cumulative;
  return trace;
}

AggregateResult aggregate(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("no traces to aggregate");
  AggregateResult result;
  result.sample_steps = traces.front().sample_steps;
  result.num_traces = traces.size();
  const std::size_t num_points = result.sample_steps.size();
  for (const RunTrace& trace : traces)
    if (trace.sample_steps != result.sample_steps)
      throw std::invalid_argument("traces disagree on sample steps");

  result.mean.assign(num_points, 0.0);
  result.stderr_.assign(num_points, 0.0);
  // Fixed accumulation order keyed by trace index keeps floating-point
  // sums reproducible across worker counts.
  for (std::size_t p = 0; p < num_points; ++p) {
    double sum = 0.0;
    for (const RunTrace& trace : traces) sum += trace.cumulative[p];
    const double mean = sum / static_cast<double>(traces.size());
    result.mean[p] = mean;
    if (traces.size() > 1) {
      double sq = 0.0;
      for (const RunTrace& trace : traces) {
        const double d = trace.cumulative[p] - mean;
        sq += d * d;
      }
      const double sd = std::sqrt(sq / static_cast<double>(traces.size() - 1));
      result.stderr_[p] = sd / std::sqrt(static_cast<double>(traces.size()));
    }
  }
  return result;
}

std::vector<AttractionVector> resolve_query_bases(const ExperimentConfig& config) {
  const EnvironmentSpec& env = config.environment;
  if (env.kind == EnvironmentKind::kLowerBound) return {};
  std::vector<AttractionVector> bases;
  if (env.kind == EnvironmentKind::kQueryFile || !env.query_file.empty()) {
    QueryModelSet set = load_query_models(env.query_file);
    for (auto& query : set.queries) {
      if (static_cast<int>(query.alpha.size()) != config.num_items)
        throw std::invalid_argument("query " + query.query_id +
                                    " has inconsistent L");
      bases.push_back(std::move(query.alpha));
    }
  } else {
    if (static_cast<int>(env.base.size()) != config.num_items)
      throw std::invalid_argument("base attraction vector must have length L");
    bases.push_back(env.base);
  }
  return bases;
}

AttractionSchedule build_cell_schedule(const ExperimentConfig& config,
                                       std::size_t query_index,
                                       std::size_t run_index) {
  const EnvironmentSpec& env = config.environment;
  if (env.kind == EnvironmentKind::kLowerBound) {
    return build_lower_bound_instance(config.num_items, env.p, env.delta,
                                      env.flip_steps, config.horizon);
  }
  const auto bases = resolve_query_bases(config);
  if (query_index >= bases.size())
    throw std::out_of_range("query index out of range");
  Rng env_rng(derive_seed(config.master_seed, query_index, run_index, kEnvStream));
  return build_synthetic_schedule(bases[query_index], config.num_positions,
                                  env.perturbation, env_rng);
}

namespace {

std::size_t num_queries(const ExperimentConfig& config) {
  if (config.environment.kind == EnvironmentKind::kLowerBound) return 1;
  return resolve_query_bases(config).size();
}

RunTrace run_one_cell(const ExperimentConfig& config, std::size_t policy_index,
                      std::size_t query, std::size_t run) {
  const PolicySpec& spec = config.policies[policy_index];
  PolicyFactory factory = make_policy_factory(
      spec, config.num_items, config.num_positions, config.horizon);
  AttractionSchedule schedule = build_cell_schedule(config, query, run);
  auto policy = factory(derive_seed(config.master_seed, query, run,
                                    kPolicyStreamBase + policy_index));
  Rng feedback_rng(derive_seed(config.master_seed, query, run,
                               kFeedbackStreamBase + policy_index));
  return run_single(schedule, *policy, config.horizon, config.num_positions,
                    config.trace_stride, feedback_rng);
}

}  // namespace

std::vector<RunTrace> run_policy_cells(const ExperimentConfig& config,
                                       std::size_t policy_index) {
  const std::size_t queries = num_queries(config);
  const std::size_t runs = static_cast<std::size_t>(config.runs_per_query);
  std::vector<RunTrace> traces(queries * runs);

  if (config.workers <= 1) {
    // Serial reference path. Kept plain; the parallel loop below must
    // produce identical traces.
    for (std::size_t job = 0; job < traces.size(); ++job)
      traces[job] = run_one_cell(config, policy_index, job / runs, job % runs);
    return traces;
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(config.workers)
  for (long job = 0; job < static_cast<long>(traces.size()); ++job) {
    const std::size_t j = static_cast<std::size_t>(job);
    traces[j] = run_one_cell(config, policy_index, j / runs, j % runs);
  }
#else
  for (std::size_t job = 0; job < traces.size(); ++job)
    traces[job] = run_one_cell(config, policy_index, job / runs, job % runs);
#endif
  return traces;
}

std::vector<AggregateResult> run_experiment(const ExperimentConfig& config) {
  if (config.num_positions < 1 || config.num_positions > config.num_items)
    throw std::invalid_argument("need 1 <= K <= L");
  if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (config.runs_per_query < 1)
    throw std::invalid_argument("runs_per_query must be >= 1");
  if (config.policies.empty())
    throw std::invalid_argument("no policies configured");

  std::vector<AggregateResult> results;
  for (std::size_t p = 0; p < config.policies.size(); ++p)
    results.push_back(aggregate(run_policy_cells(config, p)));
  return results;
}

std::vector<double> per_epoch_regret(const RunTrace& trace,
                                     const AttractionSchedule& schedule) {
  const long horizon = trace.sample_steps.empty() ? 0 : trace.sample_steps.back();
  std::size_t epochs_in_horizon = 0;
  for (const Segment& seg : schedule.segments())
    if (seg.start_step <= horizon) ++epochs_in_horizon;
  if (epochs_in_horizon != trace.epoch_regret.size())
    throw std::invalid_argument("trace and schedule horizons disagree");
  return trace.epoch_regret;
}

}  // namespace cnsb
