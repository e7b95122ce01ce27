#pragma once

// Ranking policies behind one interface: CascadeDUCB and CascadeSWUCB plus
// the stationary baselines CascadeUCB1, CascadeKL-UCB and RankedExp3.

#include <deque>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "cnsb/rng.hpp"
#include "cnsb/types.hpp"

namespace cnsb {

constexpr double kUcbSentinel = std::numeric_limits<double>::infinity();

// Top-K items by decreasing UCB, ties by smaller item id. Unobserved items
// carry the infinite sentinel and therefore rank first.
RankedList select_list(const std::vector<double>& ucbs, int num_positions);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual RankedList select(long t) = 0;
  virtual void update(long t, const RankedList& list, ClickOutcome click) = 0;
  virtual std::string name() const = 0;
};

// --- CascadeDUCB --------------------------------------------------------

struct DucbState {
  double gamma;
  double epsilon;
  std::vector<double> counts;  // N: discounted observation count per item
  std::vector<double> clicks;  // X: discounted click count per item
  long t = 0;                  // step the next UCBs are computed for
};

std::vector<double> ducb_ucbs(const DucbState& state);
void ducb_update(DucbState& state, const RankedList& list, ClickOutcome click);

class CascadeDucb : public Policy {
 public:
  CascadeDucb(int num_items, int num_positions, double gamma, double epsilon);
  RankedList select(long t) override;
  void update(long t, const RankedList& list, ClickOutcome click) override;
  std::string name() const override { return "cascade_ducb"; }
  const DucbState& state() const { return state_; }

 private:
  DucbState state_;
  int num_positions_;
};

// --- CascadeSWUCB -------------------------------------------------------

struct SwucbState {
  long tau;
  double epsilon;
  // Observed prefix of each of the last tau steps: the item ids at
  // positions 1..min(c,K) and the clicked item id (-1 for none).
  struct WindowEntry {
    std::vector<ItemId> observed;
    ItemId clicked;
  };
  std::deque<WindowEntry> window;
  std::vector<long> counts;  // N within the window
  std::vector<long> clicks;  // X within the window
  long t = 0;
};

std::vector<double> swucb_ucbs(const SwucbState& state);
void swucb_update(SwucbState& state, const RankedList& list, ClickOutcome click);

class CascadeSwucb : public Policy {
 public:
  CascadeSwucb(int num_items, int num_positions, long tau, double epsilon);
  RankedList select(long t) override;
  void update(long t, const RankedList& list, ClickOutcome click) override;
  std::string name() const override { return "cascade_swucb"; }
  const SwucbState& state() const { return state_; }

 private:
  SwucbState state_;
  int num_positions_;
};

// --- CascadeUCB1 --------------------------------------------------------

struct Ucb1State {
  std::vector<long> counts;
  std::vector<long> clicks;
  long t = 0;
};

// U(a) = X/N + sqrt(1.5 ln t / N); the 1.5 follows the cascading-bandits
// baseline convention.
std::vector<double> ucb1_index(const Ucb1State& state);

class CascadeUcb1 : public Policy {
 public:
  CascadeUcb1(int num_items, int num_positions);
  RankedList select(long t) override;
  void update(long t, const RankedList& list, ClickOutcome click) override;
  std::string name() const override { return "cascade_ucb1"; }
  const Ucb1State& state() const { return state_; }

 private:
  Ucb1State state_;
  int num_positions_;
};

// --- CascadeKL-UCB ------------------------------------------------------

struct KlUcbState {
  std::vector<long> counts;
  std::vector<long> clicks;
  long t = 0;
};

// Largest q in [X/N, 1] with N * d(X/N, q) <= ln t + 3 ln ln t, found by
// bisection to 1e-9 absolute. For t < 2 the budget is ln t alone.
double klucb_root(double p_hat, double budget_over_n);
std::vector<double> klucb_index(const KlUcbState& state);

class CascadeKlUcb : public Policy {
 public:
  CascadeKlUcb(int num_items, int num_positions);
  RankedList select(long t) override;
  void update(long t, const RankedList& list, ClickOutcome click) override;
  std::string name() const override { return "cascade_klucb"; }
  const KlUcbState& state() const { return state_; }

 private:
  KlUcbState state_;
  int num_positions_;
};

// --- RankedExp3 ---------------------------------------------------------

struct RankedExp3State {
  std::vector<std::vector<double>> weights;  // [position][item]
  double explore_rate;
  // Probability each chosen item was sampled with, recorded at select time
  // and consumed by the importance-weighted update.
  std::vector<double> last_probs;
};

class RankedExp3 : public Policy {
 public:
  // explore_rate <= 0 picks sqrt(ln L / (L * horizon)) per position.
  RankedExp3(int num_items, int num_positions, double explore_rate,
             long horizon, std::uint64_t seed);
  RankedList select(long t) override;
  void update(long t, const RankedList& list, ClickOutcome click) override;
  std::string name() const override { return "ranked_exp3"; }
  const RankedExp3State& state() const { return state_; }

 private:
  RankedExp3State state_;
  int num_items_;
  int num_positions_;
  Rng rng_;
};

}  // namespace cnsb
