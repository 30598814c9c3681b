#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylecast/types.hpp"

namespace stylecast {

/// Autoregressive model fitted by least squares:
///   y_t = phi0 + sum_k phi[k-1] * y_{t-k} + sum_j psi[j] * x_{t-lags[j]}.
struct ArModel {
  double phi0 = 0.0;
  std::vector<double> phi;       // own-lag coefficients, index k-1 = lag k
  std::vector<double> psi;       // external coefficients, aligned with lags
  std::vector<int> lags;         // external lags used
  double ssr = 0.0;              // sum of squared residuals over fit rows
  std::size_t rows = 0;          // usable rows the fit ran on
  bool ridge_used = false;       // rank-deficient design, ridge fallback
};

struct ExternalRegressor {
  std::span<const double> series;
  std::vector<int> lags;
};

/// Fits an AR(order) model, optionally extended with lagged values of an
/// external series, over rows t = start..n-1 where start covers every lag.
/// Requires enough usable rows to leave residual degrees of freedom
/// (rows > coefficients + 2). A rank-deficient design is refit with a small
/// ridge penalty and flagged.
ArModel fit_ar(std::span<const double> series, int order,
               const std::optional<ExternalRegressor>& external = std::nullopt);

/// One discovered influence relation: past values of `src` at `lag` improve
/// the prediction of `dst` within `context` beyond dst's own history.
struct InfluenceEdge {
  std::string src;
  std::string dst;
  std::string context;
  int lag = 0;
  double p_value = 1.0;
  double delta_mse = 0.0;  // per-row SSR improvement of the extended model
};

struct GrangerOptions {
  int order = 8;        // own-history depth of the restricted model
  int max_lag = 8;      // candidate source lags 1..max_lag, tested one at a time
  double alpha = 0.05;  // per-lag significance threshold
};

struct GrangerResult {
  std::optional<InfluenceEdge> edge;   // unset ids; lag/p/delta filled
  bool degenerate = false;             // constant target or perfect own fit
  std::vector<double> lag_p_values;    // p per candidate lag, index lag-1
};

/// Tests whether `source` improves one-step prediction of `target`.
///
/// For each candidate lag l the extended model adds the single regressor
/// source_{t-l} to the restricted AR(order) fit, both estimated on the same
/// rows, and the nested models are compared with a one-degree F test:
///   F = (SSR_restricted - SSR_extended) / (SSR_extended / (rows - k)).
/// The significant lag with the smallest p value wins; ties prefer the
/// smaller lag. No correction is applied across lags, so the per-pair
/// false-positive rate exceeds alpha (see the calibration tests).
GrangerResult granger_test(std::span<const double> target,
                           std::span<const double> source,
                           const GrangerOptions& options = {});

enum class InfluenceAxis { kUnit, kStyle };

/// Dense lag tensor over ordered (src, dst) pairs per context. Entry 0 means
/// no discovered relation; the diagonal is always 0.
class InfluenceTensor {
 public:
  InfluenceTensor() = default;
  InfluenceTensor(InfluenceAxis axis, std::vector<std::string> entities,
                  std::vector<std::string> contexts);

  InfluenceAxis axis() const { return axis_; }
  const std::vector<std::string>& entities() const { return entities_; }
  const std::vector<std::string>& contexts() const { return contexts_; }
  const std::vector<InfluenceEdge>& edges() const { return edges_; }

  int lag(std::size_t src, std::size_t dst, std::size_t context) const;
  void set(const InfluenceEdge& edge);
  std::size_t entity_index(const std::string& id) const;
  std::size_t context_index(const std::string& id) const;

  /// Pairs skipped because a per-pair test failed (recorded, not fatal).
  std::size_t skipped_pairs() const { return skipped_; }
  void note_skipped() { ++skipped_; }

 private:
  InfluenceAxis axis_ = InfluenceAxis::kUnit;
  std::vector<std::string> entities_;
  std::vector<std::string> contexts_;
  std::vector<int> lags_;
  std::vector<InfluenceEdge> edges_;
  std::size_t skipped_ = 0;
};

/// Runs granger_test over every ordered pair of entities within every
/// context, using only train+validation data. axis kUnit relates units
/// within each style; axis kStyle relates styles within each unit.
/// Per-pair numerical failures are recorded on the tensor and skipped.
InfluenceTensor build_influence_tensor(const TrajectorySet& ts,
                                       InfluenceAxis axis,
                                       const GrangerOptions& options = {},
                                       int jobs = 1);

/// Tests each unit's influence on the global (all-unit mean) trend of one
/// style. Edges carry dst = "global". Requires at least two units.
std::vector<InfluenceEdge> unit_to_global(const TrajectorySet& ts,
                                          const std::string& style,
                                          const GrangerOptions& options = {});

}  // namespace stylecast
