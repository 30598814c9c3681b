#include "stylecast/types.hpp"

#include <cmath>
#include <stdexcept>

#include "stylecast/errors.hpp"

namespace stylecast {

TrajectorySet::TrajectorySet(std::vector<std::string> styles,
                             std::vector<std::string> units, std::size_t length)
    : styles_(std::move(styles)), units_(std::move(units)), length_(length) {
  if (styles_.empty() || units_.empty())
    throw std::invalid_argument("trajectory set needs at least one style and one unit");
  items_.resize(styles_.size() * units_.size());
  for (std::size_t s = 0; s < styles_.size(); ++s) {
    for (std::size_t u = 0; u < units_.size(); ++u) {
      Trajectory& tr = items_[s * units_.size() + u];
      tr.style = styles_[s];
      tr.unit = units_[u];
      tr.values.assign(length_, 0.0);
    }
  }
}

std::size_t TrajectorySet::style_index(const std::string& style) const {
  for (std::size_t i = 0; i < styles_.size(); ++i)
    if (styles_[i] == style) return i;
  throw DataError("unknown style id: " + style);
}

std::size_t TrajectorySet::unit_index(const std::string& unit) const {
  for (std::size_t i = 0; i < units_.size(); ++i)
    if (units_[i] == unit) return i;
  throw DataError("unknown unit id: " + unit);
}

Trajectory& TrajectorySet::at(std::size_t style_i, std::size_t unit_j) {
  return items_.at(style_i * units_.size() + unit_j);
}

const Trajectory& TrajectorySet::at(std::size_t style_i,
                                    std::size_t unit_j) const {
  return items_.at(style_i * units_.size() + unit_j);
}

void TrajectorySet::apply_split(std::size_t val, std::size_t test,
                                std::size_t max_lag) {
  if (length_ < val + test + max_lag + 1)
    throw std::invalid_argument(
        "series too short for the requested split: need at least " +
        std::to_string(val + test + max_lag + 1) + " steps, have " +
        std::to_string(length_));
  Split sp;
  sp.total = length_;
  sp.val_end = length_ - test;
  sp.train_end = sp.val_end - val;
  split_ = sp;
  for (auto& tr : items_) tr.split = sp;
}

void TrajectorySet::validate() const {
  if (items_.size() != styles_.size() * units_.size())
    throw DataError("trajectory set is missing series");
  for (const auto& tr : items_) {
    if (tr.values.size() != length_)
      throw DataError("trajectory " + tr.style + "/" + tr.unit +
                      " has inconsistent length");
    for (double v : tr.values)
      if (!std::isfinite(v))
        throw DataError("trajectory " + tr.style + "/" + tr.unit +
                        " contains a non-finite value");
    if (split_.has_value() && tr.split != split_)
      throw DataError("trajectory " + tr.style + "/" + tr.unit +
                      " disagrees with the set split");
  }
}

}  // namespace stylecast
