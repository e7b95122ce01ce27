// Times the experiment job loop on the serial reference path and the
// OpenMP path and checks that both produce identical traces.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cnsb/config.hpp"
#include "cnsb/harness.hpp"

using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
  int threads = 4;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (argc > 1) threads = std::atoi(argv[1]);

  cnsb::ExperimentConfig config;
  config.num_items = 10;
  config.num_positions = 3;
  config.horizon = 20000;
  config.runs_per_query = 16;
  config.master_seed = 7;
  config.trace_stride = 100;
  config.environment.base = cnsb::descending_base(10);
  config.policies = {cnsb::PolicySpec{"cascade_swucb"},
                     cnsb::PolicySpec{"cascade_ducb"}};

  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    config.workers = 1;
    auto t0 = Clock::now();
    const auto serial = cnsb::run_policy_cells(config, p);
    auto t1 = Clock::now();
    config.workers = threads;
    const auto parallel = cnsb::run_policy_cells(config, p);
    auto t2 = Clock::now();

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
      identical = serial[i].cumulative == parallel[i].cumulative &&
                  serial[i].final_regret == parallel[i].final_regret;

    const double serial_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double parallel_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
    std::printf("%-14s serial %8.1f ms | %d workers %8.1f ms | speedup %.2fx | %s\n",
                config.policies[p].name.c_str(), serial_ms, threads, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
    if (!identical) return 1;
  }
  return 0;
}
