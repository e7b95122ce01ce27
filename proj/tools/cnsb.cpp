// Command-line front end: `run` executes a configured experiment and
// writes regret curves, `bounds` prints the closed-form bound table,
// `synth` dumps a synthetic schedule for inspection or replay.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cnsb/bounds.hpp"
#include "cnsb/config.hpp"
#include "cnsb/harness.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_path,
            int workers) {
  cnsb::ExperimentConfig config;
  try {
    config = cnsb::load_experiment_config(config_path);
    if (workers > 0) config.workers = workers;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << " (" << config_path << ")\n";
    return 1;
  }
  try {
    const auto results = cnsb::run_experiment(config);
    cnsb::write_regret_csv_file(out_path, config, results);
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_bounds(int num_items, int num_positions, long horizon, long upsilon,
               std::optional<double> gamma, std::optional<long> tau,
               double epsilon, double p, double delta, bool strict) {
  try {
    if (strict && !(epsilon > 0.5 && epsilon < 1.0)) {
      std::cerr << "bounds: epsilon = " << epsilon
                << " violates the theorem range ε ∈ (1/2,1)\n";
      return 1;
    }
    const std::optional<long> known_upsilon =
        upsilon > 0 ? std::optional<long>(upsilon) : std::nullopt;
    const double gamma_value =
        gamma.value_or(cnsb::gamma_for_horizon(horizon, known_upsilon));
    const long tau_value = tau.value_or(cnsb::tau_for_horizon(horizon, known_upsilon));

    cnsb::BoundInputs inputs;
    inputs.num_items = num_items;
    inputs.num_positions = num_positions;
    inputs.horizon = horizon;
    inputs.breakpoints = upsilon;
    inputs.gamma = gamma_value;
    inputs.tau = tau_value;
    inputs.epsilon = epsilon;
    const auto gaps = cnsb::GapProfile::uniform(num_items, delta);

    std::cout << "bound_name,value\n";
    std::cout << "gamma_schedule," << cnsb::format_double(gamma_value) << "\n";
    std::cout << "tau_schedule," << tau_value << "\n";
    std::cout << "ducb_upper,"
              << cnsb::format_double(cnsb::ducb_upper_bound(inputs, gaps, strict))
              << "\n";
    std::cout << "swucb_upper,"
              << cnsb::format_double(cnsb::swucb_upper_bound(inputs, gaps, strict))
              << "\n";
    std::cout << "lower_bound,"
              << cnsb::format_double(cnsb::regret_lower_bound(
                     num_items, num_positions, delta, p, horizon))
              << "\n";
  } catch (const std::exception& e) {
    std::cerr << "bounds: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_synth(int num_items, int num_positions, const cnsb::PerturbationSpec& spec,
              const std::vector<double>& base_override, std::uint64_t seed,
              const std::string& out_path) {
  try {
    cnsb::AttractionVector base = base_override.empty()
                                      ? cnsb::descending_base(num_items)
                                      : cnsb::AttractionVector(base_override);
    cnsb::Rng rng(seed);
    const auto schedule =
        cnsb::build_synthetic_schedule(base, num_positions, spec, rng);
    cnsb::dump_schedule_csv(schedule, out_path);
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascading non-stationary bandit simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a configured experiment");
  std::string config_path, out_path;
  int workers = 0;
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--out", out_path, "Output regret CSV")->required();
  run->add_option("--workers", workers, "Worker threads (overrides config)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate regret bounds");
  int b_L = 10, b_K = 3;
  long b_n = 100000, b_upsilon = 0;
  double b_eps = 0.51, b_p = 0.5, b_delta = 0.25;
  std::optional<double> b_gamma;
  std::optional<long> b_tau;
  bool b_strict = false;
  bounds->add_option("--L", b_L, "Number of items");
  bounds->add_option("--K", b_K, "Number of positions");
  bounds->add_option("--n", b_n, "Horizon");
  bounds->add_option("--upsilon", b_upsilon, "Breakpoint count");
  bounds->add_option("--gamma", b_gamma, "Discount (default: schedule)");
  bounds->add_option("--tau", b_tau, "Window (default: schedule)");
  bounds->add_option("--epsilon", b_eps, "Confidence scale");
  bounds->add_option("--p", b_p, "Attraction level of optimal items");
  bounds->add_option("--delta", b_delta, "Gap");
  bounds->add_flag("--strict", b_strict, "Enforce theorem parameter ranges");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic schedule");
  int s_L = 10, s_K = 3, s_boosted = 3, s_cycles = 5;
  long s_m1 = 10000, s_m2 = 10000;
  double s_boost = 0.9;
  std::uint64_t s_seed = 1;
  std::string s_out, s_phase = "perturbed";
  bool s_fixed = false;
  std::vector<double> s_base;
  synth->add_option("--L", s_L, "Number of items");
  synth->add_option("--K", s_K, "Number of protected top positions");
  synth->add_option("--m1", s_m1, "Perturbed epoch length");
  synth->add_option("--m2", s_m2, "Default epoch length");
  synth->add_option("--cycles", s_cycles, "Perturbation cycles");
  synth->add_option("--boost", s_boost, "Boosted attraction value");
  synth->add_option("--boosted", s_boosted, "Items boosted per cycle");
  synth->add_option("--seed", s_seed, "RNG seed");
  synth->add_option("--base", s_base, "Base attraction vector")->delimiter(',');
  synth->add_option("--start-phase", s_phase, "perturbed|default");
  synth->add_flag("--fixed-subset", s_fixed, "Reuse the first boosted subset");
  synth->add_option("--out", s_out, "Output schedule CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_path, workers);
  if (bounds->parsed())
    return cmd_bounds(b_L, b_K, b_n, b_upsilon, b_gamma, b_tau, b_eps, b_p,
                      b_delta, b_strict);
  if (synth->parsed()) {
    cnsb::PerturbationSpec spec;
    spec.m1 = s_m1;
    spec.m2 = s_m2;
    spec.num_boosted = s_boosted;
    spec.boost_value = s_boost;
    spec.num_cycles = s_cycles;
    spec.fixed_subset = s_fixed;
    if (s_phase == "perturbed")
      spec.start_phase = cnsb::StartPhase::kPerturbed;
    else if (s_phase == "default")
      spec.start_phase = cnsb::StartPhase::kDefault;
    else {
      std::cerr << "synth: --start-phase must be perturbed or default\n";
      return 1;
    }
    return cmd_synth(s_L, s_K, spec, s_base, s_seed, s_out);
  }
  return 1;
}
