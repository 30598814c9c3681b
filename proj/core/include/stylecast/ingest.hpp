#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stylecast/styles.hpp"
#include "stylecast/types.hpp"

namespace stylecast {

/// Builds weekly style trajectories from raw events: the value of style i in
/// unit j at step t is the mean posterior probability of style i over all of
/// unit j's events in bucket t.
///
/// The time axis spans [min t, max t] over the whole dataset so every
/// trajectory shares one length. Buckets without events carry the previous
/// value forward; a leading gap takes the first observed value. Output is
/// invariant to the order of the input events.
///
/// When `units` is given it fixes the unit table and events naming an
/// unlisted unit raise DataError; otherwise the table is the sorted set of
/// unit ids seen in the events. A listed unit with no events at all is an
/// error either way.
TrajectorySet build_trajectories(
    const std::vector<EventRecord>& events, const StyleModel& model,
    const std::optional<std::vector<std::string>>& units = std::nullopt);

/// Season-differences every trajectory: value'[t] = value[t + period] -
/// value[t], dropping the first `period` steps. Split boundaries are
/// restamped so the validation/test window sizes are preserved.
TrajectorySet deseasonalize(const TrajectorySet& ts, std::size_t period = 52);

/// Single-series form of deseasonalize.
std::vector<double> deseasonalize(const std::vector<double>& values,
                                  std::size_t period = 52);

/// Unweighted mean trajectory of one style across all units.
std::vector<double> global_trend(const TrajectorySet& ts,
                                 const std::string& style);

}  // namespace stylecast
