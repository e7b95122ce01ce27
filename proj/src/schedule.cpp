#include "cnsb/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cnsb/model.hpp"

namespace cnsb {

AttractionSchedule::AttractionSchedule(std::vector<Segment> segments,
                                       long horizon)
    : segments_(std::move(segments)), horizon_(horizon) {
  if (segments_.empty())
    throw std::invalid_argument("schedule needs at least one segment");
  if (segments_.front().start_step != 1)
    throw std::invalid_argument("first segment must start at step 1");
  if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t num_items = segments_.front().alpha.size();
  long prev_start = 0;
  for (const Segment& seg : segments_) {
    if (seg.start_step <= prev_start)
      throw std::invalid_argument("segment starts must be strictly increasing");
    if (seg.start_step > horizon_)
      throw std::invalid_argument("segment starts beyond the horizon");
    if (seg.alpha.size() != num_items)
      throw std::invalid_argument("segments disagree on L");
    check_probability_vector(seg.alpha);
    prev_start = seg.start_step;
  }
}

std::size_t AttractionSchedule::segment_index(long t) const {
  if (t < 1 || t > horizon_)
    throw std::out_of_range("step outside the schedule horizon");
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](long step, const Segment& seg) { return step < seg.start_step; });
  return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

const AttractionVector& AttractionSchedule::alpha_at(long t) const {
  return segments_[segment_index(t)].alpha;
}

namespace {

// num_choose distinct indices (0-based) drawn from `pool` via partial
// Fisher-Yates; the pool order is the caller's, so draws are reproducible.
std::vector<int> sample_subset(std::vector<int> pool, int num_choose, Rng& rng) {
  for (int i = 0; i < num_choose; ++i) {
    std::uniform_int_distribution<int> dist(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[dist(rng)]);
  }
  pool.resize(num_choose);
  return pool;
}

void append_segment(std::vector<Segment>& segments, long start,
                    AttractionVector alpha) {
  if (!segments.empty() && segments.back().alpha == alpha) return;  // merge
  segments.push_back(Segment{start, std::move(alpha)});
}

}  // namespace

AttractionSchedule build_synthetic_schedule(const AttractionVector& base,
                                            int num_positions,
                                            const PerturbationSpec& spec,
                                            Rng& rng) {
  check_probability_vector(base);
  const int num_items = static_cast<int>(base.size());
  if (spec.m1 < 1 || spec.m2 < 1)
    throw std::invalid_argument("epoch lengths m1, m2 must be >= 1");
  if (spec.num_cycles < 1)
    throw std::invalid_argument("num_cycles must be >= 1");
  if (spec.num_boosted < 0 || spec.num_boosted > num_items - num_positions)
    throw std::invalid_argument("num_boosted must be in [0, L - K]");
  if (!(spec.boost_value >= 0.0 && spec.boost_value <= 1.0))
    throw std::invalid_argument("boost_value must be in [0,1]");

  // Items outside the base top-K are eligible for boosting.
  const RankedList top = optimal_list(base, num_positions);
  std::vector<bool> is_top(base.size(), false);
  for (ItemId id : top) is_top[id - 1] = true;
  std::vector<int> candidates;
  for (int i = 0; i < num_items; ++i)
    if (!is_top[i]) candidates.push_back(i);

  std::vector<int> frozen_subset;
  auto perturbed_alpha = [&](bool first_cycle) {
    AttractionVector alpha = base;
    std::vector<int> subset;
    if (spec.fixed_subset) {
      if (first_cycle) frozen_subset = sample_subset(candidates, spec.num_boosted, rng);
      subset = frozen_subset;
    } else {
      subset = sample_subset(candidates, spec.num_boosted, rng);
    }
    for (int idx : subset) alpha[idx] = spec.boost_value;
    return alpha;
  };

  const long horizon = static_cast<long>(spec.num_cycles) * (spec.m1 + spec.m2);
  std::vector<Segment> segments;
  long t = 1;
  for (int cycle = 0; cycle < spec.num_cycles; ++cycle) {
    if (spec.start_phase == StartPhase::kPerturbed) {
      append_segment(segments, t, perturbed_alpha(cycle == 0));
      t += spec.m1;
      append_segment(segments, t, base);
      t += spec.m2;
    } else {
      append_segment(segments, t, base);
      t += spec.m2;
      append_segment(segments, t, perturbed_alpha(cycle == 0));
      t += spec.m1;
    }
  }
  return AttractionSchedule(std::move(segments), horizon);
}

AttractionSchedule build_lower_bound_instance(int num_items, double p,
                                              double delta,
                                              const std::vector<long>& flip_steps,
                                              long horizon) {
  if (num_items < 2 || num_items % 2 != 0)
    throw std::invalid_argument("lower-bound instance needs an even L >= 2");
  if (!(delta > 0.0 && delta <= p && p <= 1.0))
    throw std::invalid_argument("need 0 < delta <= p <= 1");
  const int half = num_items / 2;

  // optimal_first: items 1..K at p, the rest at p - delta.
  auto level_alpha = [&](bool optimal_first) {
    AttractionVector alpha(num_items);
    for (int i = 0; i < num_items; ++i)
      alpha[i] = ((i < half) == optimal_first) ? p : p - delta;
    return alpha;
  };

  std::vector<Segment> segments;
  segments.push_back(Segment{1, level_alpha(true)});
  bool optimal_first = true;
  long prev = 1;
  for (long flip : flip_steps) {
    if (flip <= prev || flip > horizon)
      throw std::invalid_argument("flip steps must be increasing and within (1, n]");
    optimal_first = !optimal_first;
    segments.push_back(Segment{flip, level_alpha(optimal_first)});
    prev = flip;
  }
  return AttractionSchedule(std::move(segments), horizon);
}

ClickOutcome sample_feedback(const AttractionSchedule& schedule,
                             const RankedList& list, long t, Rng& rng) {
  const AttractionVector& alpha = schedule.alpha_at(t);
  check_ranked_list(list, alpha.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    if (bernoulli(rng, alpha[list[i] - 1]))
      return static_cast<ClickOutcome>(i + 1);
  return static_cast<ClickOutcome>(list.size() + 1);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_probability(const std::string& text, const std::string& where,
                         int line_no) {
  std::size_t consumed = 0;
  double value;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": cannot parse number '" + text + "' (" + where + ")");
  }
  if (consumed != text.size())
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": trailing junk in '" + text + "' (" + where + ")");
  if (!(value >= 0.0 && value <= 1.0))
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + where +
                             " = " + text + " outside [0,1]");
  return value;
}

}  // namespace

QueryModelSet load_query_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open query model file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": no queries (empty file)");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "query_id")
    throw std::runtime_error(path + ": line 1: expected header query_id,a1,...,aL");
  const std::size_t num_items = header.size() - 1;

  QueryModelSet set;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != num_items + 1)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(num_items + 1) + " columns, got " +
                               std::to_string(fields.size()));
    QueryModel model;
    model.query_id = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i)
      model.alpha.push_back(parse_probability(
          fields[i], "query " + model.query_id + " column a" + std::to_string(i),
          line_no));
    set.queries.push_back(std::move(model));
  }
  if (set.queries.empty()) throw std::runtime_error(path + ": no queries");
  return set;
}

void dump_schedule_csv(const AttractionSchedule& schedule,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "start_step";
  for (std::size_t i = 1; i <= schedule.num_items(); ++i) out << ",a" << i;
  out << "\n";
  char buf[64];
  for (const Segment& seg : schedule.segments()) {
    out << seg.start_step;
    for (double a : seg.alpha) {
      std::snprintf(buf, sizeof(buf), "%.17g", a);
      out << ',' << buf;
    }
    out << "\n";
  }
}

AttractionSchedule load_schedule_csv(const std::string& path, long horizon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty schedule file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "start_step")
    throw std::runtime_error(path + ": line 1: expected header start_step,a1,...,aL");
  const std::size_t num_items = header.size() - 1;

  std::vector<Segment> segments;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != num_items + 1)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": wrong column count");
    Segment seg;
    try {
      seg.start_step = std::stol(fields[0]);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": bad start_step '" + fields[0] + "'");
    }
    for (std::size_t i = 1; i < fields.size(); ++i)
      seg.alpha.push_back(
          parse_probability(fields[i], "column a" + std::to_string(i), line_no));
    segments.push_back(std::move(seg));
  }
  return AttractionSchedule(std::move(segments), horizon);
}

}  // namespace cnsb
