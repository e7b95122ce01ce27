#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cnsb/bounds.hpp"

using namespace cnsb;

namespace {

// Independent transcriptions of the bound formulas, kept deliberately
// separate from the library implementation.
double reference_ducb_bound(int L, long upsilon, long n, double gamma,
                            double eps, double gap) {
  const double term1 = L * upsilon * std::log((1 - gamma) * eps) / std::log(gamma);
  const double eta_log = std::log(1 + 4 * std::sqrt(1 - 1 / (2 * eps)));
  const double c = 4 / (1 - 1 / std::exp(1.0)) * eta_log +
                   32 * eps / (gap * std::pow(gamma, 1 / (1 - gamma)));
  const double term2 =
      L * c * std::ceil(n * (1 - gamma)) * std::log(1 / (1 - gamma));
  return term1 + term2;
}

double reference_swucb_bound(int L, long upsilon, long n, long tau, double eps,
                             double gap) {
  const double eta_log = std::log(1 + 4 * std::sqrt(1 - 1 / (2 * eps)));
  const double lt = std::log(static_cast<double>(tau));
  const double term1 = static_cast<double>(L) * upsilon * tau;
  const double term2 = L * lt * lt / eta_log;
  const double c = 2 / lt * std::ceil(lt / eta_log) +
                   8 * eps / gap * (std::ceil(static_cast<double>(n) / tau) /
                                    (static_cast<double>(n) / tau));
  const double term3 = L * c * n * lt / tau;
  return term1 + term2 + term3;
}

double reference_lower_bound(int L, int K, double delta, double p, long n) {
  const double kl =
      (p - delta) * std::log((p - delta) / p) +
      (1 - p + delta) * std::log((1 - p + delta) / (1 - p));
  return L * delta * std::pow(1 - p, K - 1) * std::sqrt(2.0 * n / (3.0 * kl));
}

}  // namespace

TEST_CASE("bernoulli_kl") {
  CHECK(bernoulli_kl(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(bernoulli_kl(0.0, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(bernoulli_kl(0.25, 0.5) == doctest::Approx(bernoulli_kl(0.75, 0.5)));
  CHECK(bernoulli_kl(1.0, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS(bernoulli_kl(-0.1, 0.5));

  // Non-negative, zero only at p = q.
  for (double p = 0.0; p <= 1.0; p += 0.1)
    for (double q = 0.05; q < 1.0; q += 0.1) {
      const double kl = bernoulli_kl(p, q);
      CHECK(kl >= 0.0);
      if (std::abs(p - q) > 1e-6) CHECK(kl > 0.0);
    }
}

TEST_CASE("ducb upper bound") {
  BoundInputs inputs;
  inputs.num_items = 10;
  inputs.horizon = 100000;
  inputs.breakpoints = 10;
  inputs.gamma = 1.0 - 1.0 / (4.0 * std::sqrt(100000.0));
  inputs.epsilon = 0.51;
  const auto gaps = GapProfile::uniform(10, 0.1);

  SUBCASE("matches an independent re-evaluation") {
    const double expected = reference_ducb_bound(10, 10, 100000, inputs.gamma,
                                                 0.51, 0.1);
    CHECK(ducb_upper_bound(inputs, gaps) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("no breakpoints zeroes the first term") {
    BoundInputs stationary = inputs;
    stationary.breakpoints = 0;
    const double gap_free = reference_ducb_bound(10, 0, 100000, inputs.gamma,
                                                 0.51, 0.1);
    CHECK(ducb_upper_bound(stationary, gaps) == doctest::Approx(gap_free));
  }

  SUBCASE("huge gaps leave only the gap-free constant part") {
    const auto wide = GapProfile::uniform(10, 1e12);
    const double eta_log = std::log(1 + 4 * std::sqrt(1 - 1 / (2 * 0.51)));
    const double gap_free_constant = 4 / (1 - 1 / std::exp(1.0)) * eta_log;
    const double expected =
        10 * 10 * std::log((1 - inputs.gamma) * 0.51) / std::log(inputs.gamma) +
        10 * gap_free_constant *
            std::ceil(100000 * (1 - inputs.gamma)) *
            std::log(1 / (1 - inputs.gamma));
    CHECK(ducb_upper_bound(inputs, wide) == doctest::Approx(expected).epsilon(1e-6));
  }

  SUBCASE("monotone in breakpoints, items and gaps") {
    BoundInputs more_breaks = inputs;
    more_breaks.breakpoints = 20;
    CHECK(ducb_upper_bound(more_breaks, gaps) > ducb_upper_bound(inputs, gaps));

    BoundInputs more_items = inputs;
    more_items.num_items = 20;
    CHECK(ducb_upper_bound(more_items, GapProfile::uniform(20, 0.1)) >
          ducb_upper_bound(inputs, gaps));

    CHECK(ducb_upper_bound(inputs, GapProfile::uniform(10, 0.2)) <
          ducb_upper_bound(inputs, gaps));
  }

  SUBCASE("perpetually optimal items are excluded from the sum") {
    GapProfile partial = gaps;
    partial.gaps[0].reset();
    CHECK(ducb_upper_bound(inputs, partial) < ducb_upper_bound(inputs, gaps));
  }

  SUBCASE("theorem range validation") {
    BoundInputs bad = inputs;
    bad.epsilon = 0.4;
    CHECK_THROWS_WITH_AS(ducb_upper_bound(bad, gaps),
                         doctest::Contains("epsilon"), std::invalid_argument);
    bad = inputs;
    bad.gamma = 0.4;
    CHECK_THROWS_WITH_AS(ducb_upper_bound(bad, gaps),
                         doctest::Contains("gamma"), std::invalid_argument);
  }
}

TEST_CASE("swucb upper bound") {
  BoundInputs inputs;
  inputs.num_items = 10;
  inputs.horizon = 100000;
  inputs.breakpoints = 10;
  inputs.tau = 2145;
  inputs.epsilon = 0.51;
  const auto gaps = GapProfile::uniform(10, 0.1);

  SUBCASE("matches an independent re-evaluation") {
    const double expected = reference_swucb_bound(10, 10, 100000, 2145, 0.51, 0.1);
    CHECK(swucb_upper_bound(inputs, gaps) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("doubling tau doubles the breakpoint term exactly") {
    BoundInputs doubled = inputs;
    doubled.tau = 2 * inputs.tau;
    BoundInputs no_breaks = inputs, no_breaks2 = doubled;
    no_breaks.breakpoints = no_breaks2.breakpoints = 0;
    const double term_tau =
        swucb_upper_bound(inputs, gaps) - swucb_upper_bound(no_breaks, gaps);
    const double term_2tau =
        swucb_upper_bound(doubled, gaps) - swucb_upper_bound(no_breaks2, gaps);
    CHECK(term_tau == doctest::Approx(10.0 * 10.0 * inputs.tau));
    CHECK(term_2tau == doctest::Approx(2.0 * term_tau));
  }

  SUBCASE("tau = n with no breakpoints stays finite") {
    BoundInputs wide = inputs;
    wide.tau = wide.horizon;
    wide.breakpoints = 0;
    const double value = swucb_upper_bound(wide, gaps);
    CHECK(std::isfinite(value));
    CHECK(value > 0.0);
  }

  SUBCASE("general constant approaches the large-tau limit") {
    const double eta_log = std::log(1 + 4 * std::sqrt(1 - 1 / (2 * 0.51)));
    const double lt = std::log(1e9);
    const double general =
        2 / lt * std::ceil(lt / eta_log) + 8 * 0.51 / 0.1 * 1.0;
    CHECK(general ==
          doctest::Approx(swucb_item_constant_limit(0.51, 0.1)).epsilon(0.01));
  }

  SUBCASE("monotone in breakpoints and decreasing in gaps") {
    BoundInputs more = inputs;
    more.breakpoints = 30;
    CHECK(swucb_upper_bound(more, gaps) > swucb_upper_bound(inputs, gaps));
    CHECK(swucb_upper_bound(inputs, GapProfile::uniform(10, 0.3)) <
          swucb_upper_bound(inputs, gaps));
  }

  SUBCASE("theorem range validation") {
    BoundInputs bad = inputs;
    bad.epsilon = 0.5;
    CHECK_THROWS_WITH_AS(swucb_upper_bound(bad, gaps),
                         doctest::Contains("epsilon"), std::invalid_argument);
  }
}

TEST_CASE("regret lower bound") {
  SUBCASE("reference value near 112.9") {
    const double value = regret_lower_bound(2, 1, 0.25, 0.5, 10000);
    CHECK(value == doctest::Approx(112.9).epsilon(0.005));
    CHECK(value ==
          doctest::Approx(reference_lower_bound(2, 1, 0.25, 0.5, 10000)));
  }

  SUBCASE("K = 1 drops the position factor") {
    const double k1 = regret_lower_bound(2, 1, 0.25, 0.5, 10000);
    const double k3 = regret_lower_bound(2, 3, 0.25, 0.5, 10000);
    // The position factor is (1 - p)^(K - 1): 1 at K = 1, 0.25 at K = 3.
    CHECK(k3 == doctest::Approx(k1 * 0.25));
  }

  SUBCASE("scales as sqrt(n)") {
    const double b1 = regret_lower_bound(4, 2, 0.2, 0.6, 5000);
    const double b4 = regret_lower_bound(4, 2, 0.2, 0.6, 20000);
    CHECK(b4 == doctest::Approx(2.0 * b1));
  }

  SUBCASE("degenerate parameters are rejected") {
    CHECK_THROWS(regret_lower_bound(2, 1, 1e-13, 0.5, 10000));
    CHECK_THROWS(regret_lower_bound(2, 1, 0.5, 1.0, 10000));
    CHECK_THROWS(regret_lower_bound(2, 1, 0.6, 0.5, 10000));
  }
}

TEST_CASE("gamma schedule") {
  CHECK(gamma_for_horizon(10000, std::nullopt) == doctest::Approx(0.9975));
  CHECK(gamma_for_horizon(16, 1) == doctest::Approx(0.9375));
  // Clamped into (1/2, 1) even for extreme breakpoint rates.
  const double clamped = gamma_for_horizon(100, 10000);
  CHECK(clamped > 0.5);
  CHECK(clamped < 1.0);
}

TEST_CASE("tau schedule") {
  CHECK(tau_for_horizon(10000, std::nullopt) == 607);
  // Upsilon near n ln n collapses the window to its floor; the integer
  // truncation of n ln n leaves the ratio just above 1, so the ceiling is 3.
  const long n = 10000;
  const long heavy = static_cast<long>(n * std::log(static_cast<double>(n)));
  CHECK(tau_for_horizon(n, heavy) == 3);
  CHECK(tau_for_horizon(8, std::nullopt) >= 1);
  CHECK_THROWS(tau_for_horizon(1, std::nullopt));
}

TEST_CASE("doubling schedule") {
  const auto at5 = doubling_schedule(5);
  CHECK(at5.gamma == doctest::Approx(0.875));
  CHECK(at5.tau == 5);

  const auto at1 = doubling_schedule(1);
  CHECK(at1.gamma == doctest::Approx(0.75));
  CHECK(at1.tau == 1);

  // Piecewise constant with jumps exactly at powers of two.
  auto prev = doubling_schedule(1);
  for (long t = 2; t <= 1024; ++t) {
    const auto cur = doubling_schedule(t);
    const bool is_power = (t & (t - 1)) == 0;
    if (is_power) {
      CHECK(cur.gamma != prev.gamma);
    } else {
      CHECK(cur.gamma == prev.gamma);
      CHECK(cur.tau == prev.tau);
    }
    prev = cur;
  }
}
