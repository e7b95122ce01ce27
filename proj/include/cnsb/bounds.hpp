#pragma once

// Closed-form regret bound evaluators and the gamma/tau parameter
// schedules, including the doubling-trick variant for unknown horizons.

#include <optional>
#include <vector>

namespace cnsb {

// Per-item minimal gaps to the K-th most attractive item. An unset entry
// marks an item that is optimal at every step; such items are excluded
// from the bound sums.
struct GapProfile {
  std::vector<std::optional<double>> gaps;

  static GapProfile uniform(int num_items, double gap) {
    GapProfile profile;
    profile.gaps.assign(num_items, gap);
    return profile;
  }
};

struct BoundInputs {
  int num_items = 0;        // L
  int num_positions = 0;    // K
  long horizon = 0;         // n
  long breakpoints = 0;     // Upsilon_n
  double gamma = 0.0;
  long tau = 0;
  double epsilon = 0.5;
};

// d(p || q) for Bernoulli means, with a 1e-15 clamp on q and 0 ln 0 = 0.
double bernoulli_kl(double p, double q);

// CascadeDUCB n-step regret upper bound. With validate set, rejects
// epsilon or gamma outside (1/2, 1).
double ducb_upper_bound(const BoundInputs& inputs, const GapProfile& gaps,
                        bool validate = true);

// CascadeSWUCB n-step regret upper bound, using the general form of the
// per-item constant (with the ceil(n/tau)/(n/tau) factor).
double swucb_upper_bound(const BoundInputs& inputs, const GapProfile& gaps,
                         bool validate = true);

// tau -> infinity limit of the SWUCB per-item constant; cross-check only.
double swucb_item_constant_limit(double epsilon, double gap);

// L * Delta * (1-p)^(K-1) * sqrt(2n / (3 KL(p-Delta || p))).
double regret_lower_bound(int num_items, int num_positions, double delta,
                          double p, long horizon);

// Discount schedule: 1 - (1/4) sqrt(Upsilon/n) when the breakpoint count
// is known, 1 - 1/(4 sqrt(n)) otherwise; clamped into (1/2, 1).
double gamma_for_horizon(long horizon, std::optional<long> breakpoints);

// Window schedule: ceil(2 sqrt(n ln n / Upsilon)), Upsilon defaulting to 1.
long tau_for_horizon(long horizon, std::optional<long> breakpoints);

// Doubling-trick parameters at step t: k = floor(log2 t), gamma and tau
// from the 2^k horizon.
struct DoublingParams {
  double gamma;
  long tau;
};
DoublingParams doubling_schedule(long t);

}  // namespace cnsb
