#pragma once

// Non-stationary cascade environment: piecewise-constant attraction
// schedules with breakpoints, click sampling, and the synthetic
// perturbation generator.

#include <cstdint>
#include <string>
#include <vector>

#include "cnsb/rng.hpp"
#include "cnsb/types.hpp"

namespace cnsb {

struct Segment {
  long start_step;  // 1-based, inclusive
  AttractionVector alpha;
};

// Piecewise-constant map step -> attraction vector. Right-continuous:
// segment i covers [start_i, start_{i+1}).
class AttractionSchedule {
 public:
  AttractionSchedule(std::vector<Segment> segments, long horizon);

  const AttractionVector& alpha_at(long t) const;
  // Index of the segment containing t (0-based).
  std::size_t segment_index(long t) const;

  long horizon() const { return horizon_; }
  std::size_t num_items() const { return segments_.front().alpha.size(); }
  const std::vector<Segment>& segments() const { return segments_; }

  // Number of segment boundaries strictly after step 1 (Upsilon_n).
  std::size_t breakpoint_count() const { return segments_.size() - 1; }

 private:
  std::vector<Segment> segments_;
  long horizon_;
};

enum class StartPhase { kPerturbed, kDefault };

struct PerturbationSpec {
  long m1 = 10000;         // length of a perturbed epoch
  long m2 = 10000;         // length of a default epoch
  int num_boosted = 3;     // suboptimal items boosted per perturbed epoch
  double boost_value = 0.9;
  int num_cycles = 5;      // one cycle = one perturbed + one default epoch
  StartPhase start_phase = StartPhase::kPerturbed;
  bool fixed_subset = false;  // reuse the first boosted subset every cycle
};

// Alternates perturbed and default epochs on top of `base`. In a perturbed
// epoch a random subset of num_boosted items outside the base top-K is set
// to boost_value; the base top-K entries are never touched. Adjacent equal
// segments are merged, so num_boosted=0 yields a single constant segment.
AttractionSchedule build_synthetic_schedule(const AttractionVector& base,
                                            int num_positions,
                                            const PerturbationSpec& spec,
                                            Rng& rng);

// Two-level instance: K = L/2 items at p, the rest at p - delta, with the
// optimal-set membership complemented at every flip step.
AttractionSchedule build_lower_bound_instance(int num_items, double p,
                                              double delta,
                                              const std::vector<long>& flip_steps,
                                              long horizon);

// Draws attraction indicators Bernoulli(alpha_t) down the list and returns
// the first click position, K+1 for no click. Stops sampling at the click.
ClickOutcome sample_feedback(const AttractionSchedule& schedule,
                             const RankedList& list, long t, Rng& rng);

struct QueryModel {
  std::string query_id;
  AttractionVector alpha;
};

struct QueryModelSet {
  std::vector<QueryModel> queries;
};

// CSV with header `query_id,a1,...,aL`; one row per query.
QueryModelSet load_query_models(const std::string& path);

// Schedule dump CSV: header `start_step,a1,...,aL`, one row per segment.
void dump_schedule_csv(const AttractionSchedule& schedule,
                       const std::string& path);
AttractionSchedule load_schedule_csv(const std::string& path, long horizon);

}  // namespace cnsb
