#include "stylecast/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "stylecast/errors.hpp"

namespace stylecast {

TrajectorySet build_trajectories(
    const std::vector<EventRecord>& events, const StyleModel& model,
    const std::optional<std::vector<std::string>>& units) {
  if (events.empty()) throw DataError("no events to ingest");

  std::vector<std::string> unit_table;
  if (units.has_value()) {
    unit_table = *units;
    std::sort(unit_table.begin(), unit_table.end());
    if (std::adjacent_find(unit_table.begin(), unit_table.end()) !=
        unit_table.end())
      throw DataError("unit table contains duplicates");
    if (unit_table.empty()) throw DataError("unit table is empty");
  } else {
    std::set<std::string> seen;
    for (const auto& ev : events) seen.insert(ev.unit);
    unit_table.assign(seen.begin(), seen.end());
  }

  std::map<std::string, std::size_t> unit_of;
  for (std::size_t i = 0; i < unit_table.size(); ++i)
    unit_of[unit_table[i]] = i;

  TimeIndex t_min = std::numeric_limits<TimeIndex>::max();
  TimeIndex t_max = std::numeric_limits<TimeIndex>::min();
  for (const auto& ev : events) {
    if (unit_of.find(ev.unit) == unit_of.end())
      throw DataError("unknown unit id: " + ev.unit);
    t_min = std::min(t_min, ev.t);
    t_max = std::max(t_max, ev.t);
  }
  const std::size_t length = static_cast<std::size_t>(t_max - t_min) + 1;

  std::vector<std::string> style_table(model.k);
  for (std::size_t s = 0; s < model.k; ++s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "style_%02zu", s);
    style_table[s] = buf;
  }

  // Bucket the events, then sort each bucket by content so the mean below is
  // accumulated in an input-order-independent sequence.
  const std::size_t n_units = unit_table.size();
  std::vector<std::vector<const EventRecord*>> buckets(n_units * length);
  for (const auto& ev : events)
    buckets[unit_of[ev.unit] * length +
            static_cast<std::size_t>(ev.t - t_min)]
        .push_back(&ev);
  for (auto& bucket : buckets)
    std::sort(bucket.begin(), bucket.end(),
              [](const EventRecord* a, const EventRecord* b) {
                if (a->t != b->t) return a->t < b->t;
                return a->attrs < b->attrs;
              });

  TrajectorySet out(style_table, unit_table, length);
  std::vector<double> post_sum(model.k);
  for (std::size_t u = 0; u < n_units; ++u) {
    std::ptrdiff_t first_filled = -1;
    for (std::size_t t = 0; t < length; ++t) {
      const auto& bucket = buckets[u * length + t];
      if (bucket.empty()) continue;
      std::fill(post_sum.begin(), post_sum.end(), 0.0);
      for (const EventRecord* ev : bucket) {
        const auto post = model.posterior(ev->attrs);
        for (std::size_t s = 0; s < model.k; ++s) post_sum[s] += post[s];
      }
      for (std::size_t s = 0; s < model.k; ++s)
        out.at(s, u).values[t] =
            post_sum[s] / static_cast<double>(bucket.size());
      if (first_filled < 0) first_filled = static_cast<std::ptrdiff_t>(t);
    }
    if (first_filled < 0)
      throw DataError("unit has no events: " + unit_table[u]);
    // Leading gap takes the first observed value; later gaps carry forward.
    for (std::size_t s = 0; s < model.k; ++s) {
      auto& v = out.at(s, u).values;
      for (std::ptrdiff_t t = first_filled - 1; t >= 0; --t)
        v[t] = v[first_filled];
    }
    std::vector<bool> filled(length, false);
    for (std::size_t t = 0; t < length; ++t)
      filled[t] = !buckets[u * length + t].empty() ||
                  static_cast<std::ptrdiff_t>(t) < first_filled;
    for (std::size_t t = 1; t < length; ++t) {
      if (filled[t]) continue;
      for (std::size_t s = 0; s < model.k; ++s)
        out.at(s, u).values[t] = out.at(s, u).values[t - 1];
    }
  }
  return out;
}

std::vector<double> deseasonalize(const std::vector<double>& values,
                                  std::size_t period) {
  if (period == 0) throw std::invalid_argument("period must be positive");
  if (values.size() <= period)
    throw std::invalid_argument(
        "series too short to deseasonalize: need more than " +
        std::to_string(period) + " steps, have " +
        std::to_string(values.size()));
  std::vector<double> out(values.size() - period);
  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = values[t + period] - values[t];
  return out;
}

TrajectorySet deseasonalize(const TrajectorySet& ts, std::size_t period) {
  if (ts.length() <= period)
    throw std::invalid_argument(
        "series too short to deseasonalize: need more than " +
        std::to_string(period) + " steps, have " + std::to_string(ts.length()));
  TrajectorySet out(ts.styles(), ts.units(), ts.length() - period);
  for (std::size_t i = 0; i < ts.size(); ++i)
    out.item(i).values = deseasonalize(ts.item(i).values, period);
  if (ts.split().has_value()) {
    const Split& sp = *ts.split();
    out.apply_split(sp.val_size(), sp.test_size());
  }
  return out;
}

std::vector<double> global_trend(const TrajectorySet& ts,
                                 const std::string& style) {
  const std::size_t s = ts.style_index(style);
  std::vector<double> out(ts.length(), 0.0);
  for (std::size_t u = 0; u < ts.unit_count(); ++u) {
    const auto& v = ts.at(s, u).values;
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += v[t];
  }
  const double n = static_cast<double>(ts.unit_count());
  for (double& x : out) x /= n;
  return out;
}

}  // namespace stylecast
