#include "cnsb/config.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cnsb/bounds.hpp"

namespace cnsb {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

PolicySpec parse_policy(const json& node) {
  reject_unknown_keys(node, {"name", "gamma", "tau", "epsilon", "explore_rate"},
                      "policy spec");
  PolicySpec spec;
  spec.name = node.at("name").get<std::string>();
  spec.gamma = node.value("gamma", 0.0);
  spec.tau = node.value("tau", 0L);
  spec.epsilon = node.value("epsilon", 0.5);
  spec.explore_rate = node.value("explore_rate", 0.0);
  return spec;
}

EnvironmentSpec parse_environment(const json& node) {
  reject_unknown_keys(node,
                      {"type", "base", "query_file", "m1", "m2", "num_boosted",
                       "boost_value", "cycles", "start_phase", "fixed_subset",
                       "p", "delta", "flip_steps"},
                      "environment spec");
  EnvironmentSpec env;
  const std::string type = node.value("type", "synthetic");
  if (type == "synthetic")
    env.kind = EnvironmentKind::kSynthetic;
  else if (type == "lower_bound")
    env.kind = EnvironmentKind::kLowerBound;
  else if (type == "query_file")
    env.kind = EnvironmentKind::kQueryFile;
  else
    throw std::invalid_argument("unknown environment type: " + type);

  if (node.contains("base")) env.base = node["base"].get<AttractionVector>();
  env.query_file = node.value("query_file", std::string{});
  if (env.kind == EnvironmentKind::kQueryFile && env.query_file.empty())
    throw std::invalid_argument("environment type query_file needs query_file");

  env.perturbation.m1 = node.value("m1", 10000L);
  env.perturbation.m2 = node.value("m2", 10000L);
  env.perturbation.num_boosted = node.value("num_boosted", 3);
  env.perturbation.boost_value = node.value("boost_value", 0.9);
  env.perturbation.num_cycles = node.value("cycles", 5);
  env.perturbation.fixed_subset = node.value("fixed_subset", false);
  const std::string phase = node.value("start_phase", "perturbed");
  if (phase == "perturbed")
    env.perturbation.start_phase = StartPhase::kPerturbed;
  else if (phase == "default")
    env.perturbation.start_phase = StartPhase::kDefault;
  else
    throw std::invalid_argument("start_phase must be 'perturbed' or 'default'");

  env.p = node.value("p", 0.5);
  env.delta = node.value("delta", 0.25);
  if (node.contains("flip_steps"))
    env.flip_steps = node["flip_steps"].get<std::vector<long>>();
  return env;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown_keys(doc,
                      {"L", "K", "n", "policies", "environment", "runs_per_query",
                       "master_seed", "trace_stride", "workers"},
                      "config");
  ExperimentConfig config;
  config.num_items = doc.at("L").get<int>();
  config.num_positions = doc.at("K").get<int>();
  config.horizon = doc.at("n").get<long>();
  config.runs_per_query = doc.value("runs_per_query", 1);
  config.master_seed = doc.value("master_seed", 1ULL);
  config.trace_stride = doc.value("trace_stride", 100L);
  config.workers = doc.value("workers", 1);

  if (!doc.contains("policies") || !doc["policies"].is_array() ||
      doc["policies"].empty())
    throw std::invalid_argument("config needs a non-empty 'policies' array");
  for (const json& node : doc["policies"])
    config.policies.push_back(parse_policy(node));

  if (doc.contains("environment"))
    config.environment = parse_environment(doc["environment"]);
  if (config.environment.kind != EnvironmentKind::kLowerBound &&
      config.environment.base.empty() && config.environment.query_file.empty())
    config.environment.base = descending_base(config.num_items);

  if (config.num_positions < 1 || config.num_positions > config.num_items)
    throw std::invalid_argument("config violates 1 <= K <= L");
  if (config.horizon < 1) throw std::invalid_argument("config needs n >= 1");
  if (config.runs_per_query < 1)
    throw std::invalid_argument("config needs runs_per_query >= 1");
  if (config.trace_stride < 1)
    throw std::invalid_argument("config needs trace_stride >= 1");
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

AttractionVector descending_base(int num_items) {
  AttractionVector base(num_items);
  for (int i = 0; i < num_items; ++i)
    base[i] = std::max(0.0, 0.90 - 0.05 * i);
  return base;
}

void write_regret_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<AggregateResult>& results) {
  out << "# L=" << config.num_items << " K=" << config.num_positions
      << " n=" << config.horizon << " runs_per_query=" << config.runs_per_query
      << " master_seed=" << config.master_seed
      << " trace_stride=" << config.trace_stride << "\n";
  out << "# policies:";
  for (const PolicySpec& spec : config.policies) {
    out << ' ' << spec.name << "(epsilon=" << format_double(spec.epsilon);
    if (spec.name == "cascade_ducb")
      out << ",gamma="
          << format_double(spec.gamma > 0.0
                               ? spec.gamma
                               : gamma_for_horizon(config.horizon, std::nullopt));
    if (spec.name == "cascade_swucb")
      out << ",tau="
          << (spec.tau > 0 ? spec.tau
                           : tau_for_horizon(config.horizon, std::nullopt));
    out << ')';
  }
  out << "\n";
  out << "policy,step,mean_cum_regret,stderr\n";
  for (std::size_t p = 0; p < results.size(); ++p) {
    const AggregateResult& result = results[p];
    for (std::size_t i = 0; i < result.sample_steps.size(); ++i) {
      out << config.policies[p].name << ',' << result.sample_steps[i] << ','
          << format_double(result.mean[i]) << ','
          << format_double(result.stderr_[i]) << "\n";
    }
  }
}

void write_regret_csv_file(const std::string& path,
                           const ExperimentConfig& config,
                           const std::vector<AggregateResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_regret_csv(out, config, results);
}

}  // namespace cnsb
