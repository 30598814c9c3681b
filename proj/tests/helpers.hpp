#pragma once

// Small builders shared across the test suites.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "stylecast/types.hpp"

namespace testutil {

/// A trajectory set with values filled by fn(style_i, unit_j, t). Names are
/// s0, s1, ... and u0, u1, ...
inline stylecast::TrajectorySet make_set(
    std::size_t styles, std::size_t units, std::size_t length,
    const std::function<double(std::size_t, std::size_t, std::size_t)>& fn) {
  std::vector<std::string> style_names, unit_names;
  for (std::size_t i = 0; i < styles; ++i)
    style_names.push_back("s" + std::to_string(i));
  for (std::size_t j = 0; j < units; ++j)
    unit_names.push_back("u" + std::to_string(j));
  stylecast::TrajectorySet ts(style_names, unit_names, length);
  for (std::size_t i = 0; i < styles; ++i)
    for (std::size_t j = 0; j < units; ++j)
      for (std::size_t t = 0; t < length; ++t)
        ts.at(i, j).values[t] = fn(i, j, t);
  return ts;
}

/// Single-trajectory set around one precomputed series.
inline stylecast::TrajectorySet make_single(const std::vector<double>& values) {
  return make_set(1, 1, values.size(),
                  [&](std::size_t, std::size_t, std::size_t t) {
                    return values[t];
                  });
}

}  // namespace testutil
