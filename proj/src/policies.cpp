#include "cnsb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cnsb {

RankedList select_list(const std::vector<double>& ucbs, int num_positions) {
  if (num_positions < 1 || static_cast<std::size_t>(num_positions) > ucbs.size())
    throw std::invalid_argument("select_list: K must be in [1..L]");
  RankedList ids(ucbs.size());
  std::iota(ids.begin(), ids.end(), 1);
  std::partial_sort(ids.begin(), ids.begin() + num_positions, ids.end(),
                    [&ucbs](ItemId a, ItemId b) {
                      if (ucbs[a - 1] != ucbs[b - 1])
                        return ucbs[a - 1] > ucbs[b - 1];
                      return a < b;
                    });
  ids.resize(num_positions);
  return ids;
}

namespace {

void check_click(const RankedList& list, ClickOutcome click) {
  if (click < 1 || click > static_cast<ClickOutcome>(list.size()) + 1)
    throw std::invalid_argument("click position outside [1..K+1]");
}

}  // namespace

// --- CascadeDUCB --------------------------------------------------------

std::vector<double> ducb_ucbs(const DucbState& state) {
  const long t = std::max<long>(state.t, 1);
  // Discounted time horizon N_t(gamma) = (1 - gamma^t) / (1 - gamma),
  // which degenerates to t at gamma = 1.
  const double horizon =
      state.gamma == 1.0
          ? static_cast<double>(t)
          : (1.0 - std::pow(state.gamma, static_cast<double>(t))) /
                (1.0 - state.gamma);
  const double log_horizon = std::log(std::max(horizon, 1.0));
  std::vector<double> ucbs(state.counts.size());
  for (std::size_t a = 0; a < ucbs.size(); ++a) {
    if (state.counts[a] <= 0.0) {
      ucbs[a] = kUcbSentinel;
      continue;
    }
    const double mean = state.clicks[a] / state.counts[a];
    const double radius =
        2.0 * std::sqrt(state.epsilon * log_horizon / state.counts[a]);
    ucbs[a] = mean + radius;
  }
  return ucbs;
}

void ducb_update(DucbState& state, const RankedList& list, ClickOutcome click) {
  check_click(list, click);
  for (std::size_t a = 0; a < state.counts.size(); ++a) {
    state.counts[a] *= state.gamma;
    state.clicks[a] *= state.gamma;
  }
  const int observed = std::min<int>(click, static_cast<int>(list.size()));
  for (int i = 1; i <= observed; ++i) {
    const ItemId id = list[i - 1];
    state.counts[id - 1] += 1.0;
    if (i == click) state.clicks[id - 1] += 1.0;
  }
  ++state.t;
}

CascadeDucb::CascadeDucb(int num_items, int num_positions, double gamma,
                         double epsilon)
    : num_positions_(num_positions) {
  if (!(gamma > 0.0 && gamma < 1.0) && gamma != 1.0)
    throw std::invalid_argument("discount gamma must be in (0,1]");
  state_.gamma = gamma;
  state_.epsilon = epsilon;
  state_.counts.assign(num_items, 0.0);
  state_.clicks.assign(num_items, 0.0);
}

RankedList CascadeDucb::select(long t) {
  state_.t = t;
  return select_list(ducb_ucbs(state_), num_positions_);
}

void CascadeDucb::update(long /*t*/, const RankedList& list, ClickOutcome click) {
  ducb_update(state_, list, click);
}

// --- CascadeSWUCB -------------------------------------------------------

std::vector<double> swucb_ucbs(const SwucbState& state) {
  const double log_span =
      std::log(static_cast<double>(std::max<long>(std::min(state.t, state.tau), 1)));
  std::vector<double> ucbs(state.counts.size());
  for (std::size_t a = 0; a < ucbs.size(); ++a) {
    if (state.counts[a] <= 0) {
      ucbs[a] = kUcbSentinel;
      continue;
    }
    const double n = static_cast<double>(state.counts[a]);
    const double mean = static_cast<double>(state.clicks[a]) / n;
    ucbs[a] = mean + std::sqrt(state.epsilon * log_span / n);
  }
  return ucbs;
}

void swucb_update(SwucbState& state, const RankedList& list, ClickOutcome click) {
  check_click(list, click);
  if (static_cast<long>(state.window.size()) == state.tau) {
    const SwucbState::WindowEntry& old = state.window.front();
    for (ItemId id : old.observed) --state.counts[id - 1];
    if (old.clicked >= 1) --state.clicks[old.clicked - 1];
    state.window.pop_front();
  }
  SwucbState::WindowEntry entry;
  const int observed = std::min<int>(click, static_cast<int>(list.size()));
  entry.observed.assign(list.begin(), list.begin() + observed);
  entry.clicked = (click <= static_cast<ClickOutcome>(list.size()))
                      ? list[click - 1]
                      : -1;
  for (ItemId id : entry.observed) ++state.counts[id - 1];
  if (entry.clicked >= 1) ++state.clicks[entry.clicked - 1];
  state.window.push_back(std::move(entry));
  ++state.t;
}

CascadeSwucb::CascadeSwucb(int num_items, int num_positions, long tau,
                           double epsilon)
    : num_positions_(num_positions) {
  if (tau < 1) throw std::invalid_argument("window tau must be >= 1");
  state_.tau = tau;
  state_.epsilon = epsilon;
  state_.counts.assign(num_items, 0);
  state_.clicks.assign(num_items, 0);
}

RankedList CascadeSwucb::select(long t) {
  state_.t = t;
  return select_list(swucb_ucbs(state_), num_positions_);
}

void CascadeSwucb::update(long /*t*/, const RankedList& list, ClickOutcome click) {
  swucb_update(state_, list, click);
}

// --- CascadeUCB1 --------------------------------------------------------

std::vector<double> ucb1_index(const Ucb1State& state) {
  const double log_t = std::log(static_cast<double>(std::max<long>(state.t, 1)));
  std::vector<double> ucbs(state.counts.size());
  for (std::size_t a = 0; a < ucbs.size(); ++a) {
    if (state.counts[a] <= 0) {
      ucbs[a] = kUcbSentinel;
      continue;
    }
    const double n = static_cast<double>(state.counts[a]);
    ucbs[a] = static_cast<double>(state.clicks[a]) / n + std::sqrt(1.5 * log_t / n);
  }
  return ucbs;
}

CascadeUcb1::CascadeUcb1(int num_items, int num_positions)
    : num_positions_(num_positions) {
  state_.counts.assign(num_items, 0);
  state_.clicks.assign(num_items, 0);
}

RankedList CascadeUcb1::select(long t) {
  state_.t = t;
  return select_list(ucb1_index(state_), num_positions_);
}

void CascadeUcb1::update(long /*t*/, const RankedList& list, ClickOutcome click) {
  check_click(list, click);
  const int observed = std::min<int>(click, static_cast<int>(list.size()));
  for (int i = 1; i <= observed; ++i) {
    const ItemId id = list[i - 1];
    ++state_.counts[id - 1];
    if (i == click) ++state_.clicks[id - 1];
  }
  ++state_.t;
}

// --- CascadeKL-UCB ------------------------------------------------------

namespace {

double bernoulli_kl_local(double p, double q) {
  constexpr double kEps = 1e-15;
  q = std::min(std::max(q, kEps), 1.0 - kEps);
  double kl = 0.0;
  if (p > 0.0) kl += p * std::log(p / q);
  if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return kl;
}

}  // namespace

double klucb_root(double p_hat, double budget_over_n) {
  if (budget_over_n <= 0.0) return p_hat;
  if (p_hat >= 1.0) return 1.0;
  double lo = p_hat, hi = 1.0;
  for (int iter = 0; iter < 64 && hi - lo > 1e-9; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (bernoulli_kl_local(p_hat, mid) <= budget_over_n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::vector<double> klucb_index(const KlUcbState& state) {
  const long t = std::max<long>(state.t, 1);
  double budget = std::log(static_cast<double>(t));
  if (t >= 2) {
    const double log_log = std::log(std::log(static_cast<double>(t)));
    budget += 3.0 * log_log;
  }
  budget = std::max(budget, 0.0);
  std::vector<double> ucbs(state.counts.size());
  for (std::size_t a = 0; a < ucbs.size(); ++a) {
    if (state.counts[a] <= 0) {
      ucbs[a] = kUcbSentinel;
      continue;
    }
    const double n = static_cast<double>(state.counts[a]);
    const double p_hat = static_cast<double>(state.clicks[a]) / n;
    ucbs[a] = klucb_root(p_hat, budget / n);
  }
  return ucbs;
}

CascadeKlUcb::CascadeKlUcb(int num_items, int num_positions)
    : num_positions_(num_positions) {
  state_.counts.assign(num_items, 0);
  state_.clicks.assign(num_items, 0);
}

RankedList CascadeKlUcb::select(long t) {
  state_.t = t;
  return select_list(klucb_index(state_), num_positions_);
}

void CascadeKlUcb::update(long /*t*/, const RankedList& list, ClickOutcome click) {
  check_click(list, click);
  const int observed = std::min<int>(click, static_cast<int>(list.size()));
  for (int i = 1; i <= observed; ++i) {
    const ItemId id = list[i - 1];
    ++state_.counts[id - 1];
    if (i == click) ++state_.clicks[id - 1];
  }
  ++state_.t;
}

// --- RankedExp3 ---------------------------------------------------------

RankedExp3::RankedExp3(int num_items, int num_positions, double explore_rate,
                       long horizon, std::uint64_t seed)
    : num_items_(num_items), num_positions_(num_positions), rng_(seed) {
  if (explore_rate <= 0.0) {
    explore_rate = std::sqrt(std::log(static_cast<double>(num_items)) /
                             (static_cast<double>(num_items) *
                              static_cast<double>(std::max<long>(horizon, 1))));
  }
  state_.explore_rate = std::min(explore_rate, 1.0);
  state_.weights.assign(num_positions, std::vector<double>(num_items, 1.0));
  state_.last_probs.assign(num_positions, 0.0);
}

RankedList RankedExp3::select(long /*t*/) {
  RankedList list;
  std::vector<bool> used(num_items_, false);
  const double g = state_.explore_rate;
  for (int k = 0; k < num_positions_; ++k) {
    const std::vector<double>& w = state_.weights[k];
    const double w_sum = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> probs(num_items_);
    for (int a = 0; a < num_items_; ++a)
      probs[a] = (1.0 - g) * w[a] / w_sum + g / num_items_;

    // Draw from the full distribution; a duplicate falls back to the
    // distribution restricted to unused items.
    std::discrete_distribution<int> full(probs.begin(), probs.end());
    int chosen = full(rng_);
    double chosen_prob = probs[chosen];
    if (used[chosen]) {
      std::vector<double> restricted(num_items_, 0.0);
      double mass = 0.0;
      for (int a = 0; a < num_items_; ++a)
        if (!used[a]) {
          restricted[a] = probs[a];
          mass += probs[a];
        }
      std::discrete_distribution<int> fallback(restricted.begin(),
                                               restricted.end());
      chosen = fallback(rng_);
      chosen_prob = restricted[chosen] / mass;
    }
    used[chosen] = true;
    state_.last_probs[k] = chosen_prob;
    list.push_back(chosen + 1);
  }
  return list;
}

void RankedExp3::update(long /*t*/, const RankedList& list, ClickOutcome click) {
  check_click(list, click);
  const double g = state_.explore_rate;
  const int observed = std::min<int>(click, static_cast<int>(list.size()));
  // Only position `click` earns reward 1; other observed positions earn 0
  // and a zero gain leaves Exp3 weights untouched.
  for (int i = 1; i <= observed; ++i) {
    if (i != click) continue;
    const int pos = i - 1;
    const int item = list[pos] - 1;
    const double estimate = 1.0 / state_.last_probs[pos];
    state_.weights[pos][item] *=
        std::exp(g * estimate / static_cast<double>(num_items_));
  }
  // Rescale a position's weights when they grow large; Exp3 sampling
  // distributions are invariant under a common positive factor.
  for (auto& w : state_.weights) {
    const double max_w = *std::max_element(w.begin(), w.end());
    if (max_w > 1e100)
      for (double& v : w) v /= max_w;
  }
}

}  // namespace cnsb
