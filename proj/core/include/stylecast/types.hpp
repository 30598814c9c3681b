#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stylecast {

/// Discrete time step at the working resolution (weeks by default).
using TimeIndex = std::int64_t;

/// Per-image attribute scores, fixed width M across a dataset.
using AttributeVector = std::vector<double>;

/// One observed record: a unit (city, brand, ...) at a time step with its
/// attribute scores.
struct EventRecord {
  std::string unit;
  TimeIndex t = 0;
  AttributeVector attrs;
};

/// Train/validation/test boundaries shared by every trajectory of a set:
/// train is [0, train_end), validation [train_end, val_end), test
/// [val_end, total).
struct Split {
  std::size_t train_end = 0;
  std::size_t val_end = 0;
  std::size_t total = 0;

  std::size_t train_size() const { return train_end; }
  std::size_t val_size() const { return val_end - train_end; }
  std::size_t test_size() const { return total - val_end; }

  bool operator==(const Split&) const = default;
};

/// Popularity series of one style within one unit.
struct Trajectory {
  std::string style;
  std::string unit;
  std::vector<double> values;
  std::optional<Split> split;
};

/// All trajectories of a dataset on a common time axis. Stored style-major:
/// index(style_i, unit_j) = style_i * units.size() + unit_j.
class TrajectorySet {
 public:
  TrajectorySet() = default;
  TrajectorySet(std::vector<std::string> styles, std::vector<std::string> units,
                std::size_t length);

  std::size_t style_count() const { return styles_.size(); }
  std::size_t unit_count() const { return units_.size(); }
  std::size_t length() const { return length_; }
  std::size_t size() const { return items_.size(); }

  const std::vector<std::string>& styles() const { return styles_; }
  const std::vector<std::string>& units() const { return units_; }

  std::size_t style_index(const std::string& style) const;
  std::size_t unit_index(const std::string& unit) const;

  Trajectory& at(std::size_t style_i, std::size_t unit_j);
  const Trajectory& at(std::size_t style_i, std::size_t unit_j) const;
  Trajectory& item(std::size_t flat) { return items_[flat]; }
  const Trajectory& item(std::size_t flat) const { return items_[flat]; }

  const std::optional<Split>& split() const { return split_; }

  /// Stamps boundaries on the set and every trajectory. The test window
  /// holds the final `test` steps, validation the `val` before it; everything
  /// earlier is training data. Requires
  /// length >= val + test + max_lag + 1 so at least one usable training row
  /// remains for models of lag depth max_lag.
  void apply_split(std::size_t val = 4, std::size_t test = 26,
                   std::size_t max_lag = 0);

  void validate() const;

 private:
  std::vector<std::string> styles_;
  std::vector<std::string> units_;
  std::size_t length_ = 0;
  std::vector<Trajectory> items_;
  std::optional<Split> split_;
};

}  // namespace stylecast
