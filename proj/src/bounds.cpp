#include "cnsb/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cnsb {

double bernoulli_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("bernoulli_kl: arguments must be in [0,1]");
  constexpr double kEps = 1e-15;
  q = std::min(std::max(q, kEps), 1.0 - kEps);
  double kl = 0.0;
  if (p > 0.0) kl += p * std::log(p / q);
  if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return kl;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// ln(1 + 4 sqrt(1 - 1/(2 epsilon))), shared by both upper bounds.
double eta_log(double epsilon) {
  return std::log(1.0 + 4.0 * std::sqrt(std::max(0.0, 1.0 - 1.0 / (2.0 * epsilon))));
}

}  // namespace

double ducb_upper_bound(const BoundInputs& inputs, const GapProfile& gaps,
                        bool validate) {
  if (validate) {
    require(inputs.epsilon > 0.5 && inputs.epsilon < 1.0,
            "ducb_upper_bound: epsilon must be in (1/2, 1)");
    require(inputs.gamma > 0.5 && inputs.gamma < 1.0,
            "ducb_upper_bound: gamma must be in (1/2, 1)");
  }
  require(inputs.num_items >= 1 && inputs.horizon >= 1,
          "ducb_upper_bound: need L >= 1 and n >= 1");
  require(static_cast<int>(gaps.gaps.size()) == inputs.num_items,
          "ducb_upper_bound: gap profile size must equal L");

  const double gamma = inputs.gamma;
  const double eps = inputs.epsilon;
  const double breakpoint_term = static_cast<double>(inputs.num_items) *
                                 static_cast<double>(inputs.breakpoints) *
                                 std::log((1.0 - gamma) * eps) / std::log(gamma);

  const double steps_factor =
      std::ceil(static_cast<double>(inputs.horizon) * (1.0 - gamma)) *
      std::log(1.0 / (1.0 - gamma));
  const double concentration_constant = 4.0 / (1.0 - 1.0 / std::exp(1.0)) * eta_log(eps);
  const double gamma_power = std::pow(gamma, 1.0 / (1.0 - gamma));

  double item_sum = 0.0;
  for (const auto& gap : gaps.gaps) {
    if (!gap.has_value()) continue;  // perpetually optimal item
    require(*gap > 0.0, "ducb_upper_bound: gaps must be positive");
    const double item_constant =
        concentration_constant + 32.0 * eps / (*gap * gamma_power);
    item_sum += item_constant * steps_factor;
  }
  return breakpoint_term + item_sum;
}

double swucb_upper_bound(const BoundInputs& inputs, const GapProfile& gaps,
                         bool validate) {
  if (validate) {
    require(inputs.epsilon > 0.5 && inputs.epsilon < 1.0,
            "swucb_upper_bound: epsilon must be in (1/2, 1)");
    require(inputs.tau >= 1, "swucb_upper_bound: tau must be a positive integer");
  }
  require(inputs.num_items >= 1 && inputs.horizon >= 1,
          "swucb_upper_bound: need L >= 1 and n >= 1");
  require(static_cast<int>(gaps.gaps.size()) == inputs.num_items,
          "swucb_upper_bound: gap profile size must equal L");

  const double tau = static_cast<double>(inputs.tau);
  const double n = static_cast<double>(inputs.horizon);
  const double log_tau = std::log(tau);
  const double num_items = static_cast<double>(inputs.num_items);

  const double breakpoint_term =
      num_items * static_cast<double>(inputs.breakpoints) * tau;
  const double concentration_term = num_items * log_tau * log_tau / eta_log(inputs.epsilon);

  const double window_ratio = std::ceil(n / tau) / (n / tau);
  double item_sum = 0.0;
  for (const auto& gap : gaps.gaps) {
    if (!gap.has_value()) continue;
    require(*gap > 0.0, "swucb_upper_bound: gaps must be positive");
    double item_constant = 0.0;
    if (log_tau > 0.0)
      item_constant = 2.0 / log_tau * std::ceil(log_tau / eta_log(inputs.epsilon));
    item_constant += 8.0 * inputs.epsilon / *gap * window_ratio;
    item_sum += item_constant * n * log_tau / tau;
  }
  return breakpoint_term + concentration_term + item_sum;
}

double swucb_item_constant_limit(double epsilon, double gap) {
  return 2.0 / eta_log(epsilon) + 8.0 * epsilon / gap;
}

double regret_lower_bound(int num_items, int num_positions, double delta,
                          double p, long horizon) {
  require(num_items >= 1 && num_positions >= 1, "regret_lower_bound: need L, K >= 1");
  require(delta > 1e-12, "regret_lower_bound: delta too small (KL degenerates)");
  require(delta <= p && p < 1.0, "regret_lower_bound: need 0 < delta <= p < 1");
  const double kl = bernoulli_kl(p - delta, p);
  require(kl > 0.0, "regret_lower_bound: degenerate KL divergence");
  return static_cast<double>(num_items) * delta *
         std::pow(1.0 - p, num_positions - 1) *
         std::sqrt(2.0 * static_cast<double>(horizon) / (3.0 * kl));
}

double gamma_for_horizon(long horizon, std::optional<long> breakpoints) {
  require(horizon >= 1, "gamma_for_horizon: n must be >= 1");
  double gamma;
  if (breakpoints.has_value() && *breakpoints > 0) {
    gamma = 1.0 - 0.25 * std::sqrt(static_cast<double>(*breakpoints) /
                                   static_cast<double>(horizon));
  } else {
    gamma = 1.0 - 1.0 / (4.0 * std::sqrt(static_cast<double>(horizon)));
  }
  constexpr double kLow = 0.5 + 1e-12;
  constexpr double kHigh = 1.0 - 1e-12;
  return std::min(std::max(gamma, kLow), kHigh);
}

long tau_for_horizon(long horizon, std::optional<long> breakpoints) {
  require(horizon >= 2, "tau_for_horizon: n must be >= 2");
  const double n = static_cast<double>(horizon);
  const double upsilon =
      (breakpoints.has_value() && *breakpoints > 0) ? static_cast<double>(*breakpoints)
                                                    : 1.0;
  const double tau = 2.0 * std::sqrt(n * std::log(n) / upsilon);
  return std::max<long>(1, static_cast<long>(std::ceil(tau)));
}

DoublingParams doubling_schedule(long t) {
  require(t >= 1, "doubling_schedule: t must be >= 1");
  int k = 0;
  while ((2L << k) <= t) ++k;  // k = floor(log2 t)
  const double block = std::pow(2.0, k);
  DoublingParams params;
  params.gamma = 1.0 - 1.0 / (4.0 * std::sqrt(block));
  const double log_block = std::log(block);
  params.tau = (k == 0) ? 1
                        : std::max<long>(1, static_cast<long>(std::ceil(
                                                2.0 * std::sqrt(block * log_block))));
  return params;
}

}  // namespace cnsb
