#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stylecast/types.hpp"

namespace stylecast {

/// Common interface of the per-series forecasting models.
///
/// fit() consumes the observation history (for split data: everything before
/// the test window) and forecast() extends it `horizon` steps. parameters()
/// exposes every fitted quantity so leakage checks can fingerprint a model.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual std::string name() const = 0;
  virtual void fit(std::span<const double> history) = 0;
  virtual std::vector<double> forecast(std::size_t horizon) const = 0;
  virtual std::vector<double> parameters() const = 0;
};

/// Draws i.i.d. samples from a Gaussian fitted to the history. The only
/// stochastic baseline; reproducible for a fixed seed.
std::unique_ptr<Forecaster> make_gaussian_naive(std::uint64_t seed);

/// Repeats the value observed one season earlier. Requires history longer
/// than the period.
std::unique_ptr<Forecaster> make_seasonal_naive(std::size_t period = 52);

/// Constant mean of the history.
std::unique_ptr<Forecaster> make_mean_naive();

/// Repeats the last observed value.
std::unique_ptr<Forecaster> make_last_naive();

/// Extends the straight line through the first and last observations.
std::unique_ptr<Forecaster> make_drift_naive();

/// AR(order) fitted by least squares, forecast by recursive one-step
/// prediction. order 0 degenerates to the history mean.
std::unique_ptr<Forecaster> make_ar(int order = 8);

/// ARIMA(p,d,q) estimated in two stages: a long autoregression provides
/// residual proxies, then AR and MA terms are fitted jointly by least
/// squares. A non-invertible MA estimate falls back to ARI(p,d) and is
/// flagged in parameters().
std::unique_ptr<Forecaster> make_arima(int p = 1, int d = 1, int q = 1);

/// Exponentially decayed weighted average of the history. The decay is
/// grid-searched in steps of 0.05, scored by MAE on the trailing `val_len`
/// observations; ties keep the smaller decay.
std::unique_ptr<Forecaster> make_exp_smooth(std::size_t val_len = 4);

/// Least-squares fit of level + linear trend + one seasonal harmonic:
///   y_t = b + c*t + A*sin(2*pi*t/period) + B*cos(2*pi*t/period).
std::unique_ptr<Forecaster> make_geo_model(std::size_t period = 52);

/// Weighted average of the history with weight (1-decay)^age, normalized.
/// decay = 1 keeps only the newest observation. Exposed for the decay grid
/// search and its tests.
double exp_smooth_level(std::span<const double> history, double decay);

/// Vector autoregression over a group of series, estimated per equation by
/// least squares on the shared design of `order` lags of every series.
/// Under-determined designs fall back to a small ridge penalty and are
/// flagged.
struct VarModel {
  int order = 1;
  std::size_t dim = 0;
  // coef[i]: intercept, then for lag k = 1..order the coefficients of every
  // series at that lag, in series order.
  std::vector<std::vector<double>> coef;
  bool ridge_used = false;
};

VarModel fit_var(const std::vector<std::vector<double>>& histories, int order);

std::vector<std::vector<double>> forecast_var_model(
    const VarModel& model, const std::vector<std::vector<double>>& histories,
    std::size_t horizon);

enum class VarScope { kAllUnitsPerStyle, kAllStylesPerUnit };

/// Jointly forecasts every trajectory of the set, one VAR system per style
/// (kAllUnitsPerStyle) or per unit (kAllStylesPerUnit). Returns forecasts in
/// the set's flat trajectory order.
std::vector<std::vector<double>> forecast_var(const TrajectorySet& ts,
                                              VarScope scope, int order,
                                              std::size_t horizon);

/// The observation window models may fit on: everything before the test
/// split, or the whole series when no split is stamped.
std::span<const double> history_of(const Trajectory& tr);

/// Fits the forecaster on the trajectory's history and forecasts `horizon`
/// steps.
std::vector<double> run_forecaster(Forecaster& model, const Trajectory& tr,
                                   std::size_t horizon);

/// A named model in the evaluation harness: produces forecasts for every
/// trajectory of the set (flat order) at the given horizon.
struct ModelSpec {
  std::string name;
  std::function<std::vector<std::vector<double>>(const TrajectorySet&,
                                                 std::size_t)>
      run;
};

struct ModelScore {
  std::string name;
  double mae = 0.0;
  double mape = 0.0;          // mean over trajectories where defined
  std::size_t mape_count = 0;  // trajectories contributing to mape
  std::vector<double> per_trajectory_mae;
};

struct ForecastReport {
  std::size_t horizon = 0;
  std::vector<ModelScore> models;  // sorted by mae ascending
};

/// Scores every model on the test window: forecasts from the history region
/// are compared against the held-out final `horizon` values, averaging MAE
/// and MAPE over trajectories. Requires a split with test size >= horizon.
ForecastReport evaluate(const std::vector<ModelSpec>& models,
                        const TrajectorySet& ts, std::size_t horizon = 26);

/// The per-series baseline suite: gaussian, seasonal, mean, last, drift,
/// ar, arima, expsmooth, geomodel. The seasonal entry still requires more
/// than one period of history when run; callers with short sets drop it.
std::vector<ModelSpec> baseline_models(std::uint64_t seed,
                                       std::size_t period = 52);

/// VAR entries for the evaluation harness.
ModelSpec var_model_spec(VarScope scope, int order);

}  // namespace stylecast
