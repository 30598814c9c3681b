#include "stylecast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linalg.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/metrics.hpp"
#include "stylecast/rng.hpp"

namespace stylecast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

void require_history(std::span<const double> history, std::size_t min_len,
                     const char* what) {
  if (history.size() < min_len)
    throw std::invalid_argument(std::string(what) + " needs at least " +
                                std::to_string(min_len) + " observations, have " +
                                std::to_string(history.size()));
  for (double v : history)
    if (!std::isfinite(v))
      throw NumericError("history contains a non-finite value");
}

class GaussianNaive final : public Forecaster {
 public:
  explicit GaussianNaive(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "gaussian"; }

  void fit(std::span<const double> history) override {
    require_history(history, 2, "gaussian baseline");
    double mu = 0.0;
    for (double v : history) mu += v;
    mu /= static_cast<double>(history.size());
    double var = 0.0;
    for (double v : history) var += (v - mu) * (v - mu);
    var /= static_cast<double>(history.size());
    mean_ = mu;
    stddev_ = std::sqrt(var);
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    Rng rng(seed_);
    std::vector<double> out(horizon);
    for (double& v : out) v = rng.normal(mean_, stddev_);
    return out;
  }

  std::vector<double> parameters() const override { return {mean_, stddev_}; }

 private:
  std::uint64_t seed_;
  double mean_ = 0.0;
  double stddev_ = 0.0;
};

class SeasonalNaive final : public Forecaster {
 public:
  explicit SeasonalNaive(std::size_t period) : period_(period) {
    if (period_ == 0) throw std::invalid_argument("period must be positive");
  }
  std::string name() const override { return "seasonal"; }

  void fit(std::span<const double> history) override {
    require_history(history, period_ + 1, "seasonal baseline");
    tail_.assign(history.end() - period_, history.end());
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h)
      out[h] = h < period_ ? tail_[h] : out[h - period_];
    return out;
  }

  std::vector<double> parameters() const override { return tail_; }

 private:
  std::size_t period_;
  std::vector<double> tail_;
};

class MeanNaive final : public Forecaster {
 public:
  std::string name() const override { return "mean"; }
  void fit(std::span<const double> history) override {
    require_history(history, 1, "mean baseline");
    mean_ = 0.0;
    for (double v : history) mean_ += v;
    mean_ /= static_cast<double>(history.size());
  }
  std::vector<double> forecast(std::size_t horizon) const override {
    return std::vector<double>(horizon, mean_);
  }
  std::vector<double> parameters() const override { return {mean_}; }

 private:
  double mean_ = 0.0;
};

class LastNaive final : public Forecaster {
 public:
  std::string name() const override { return "last"; }
  void fit(std::span<const double> history) override {
    require_history(history, 1, "last-value baseline");
    last_ = history.back();
  }
  std::vector<double> forecast(std::size_t horizon) const override {
    return std::vector<double>(horizon, last_);
  }
  std::vector<double> parameters() const override { return {last_}; }

 private:
  double last_ = 0.0;
};

class DriftNaive final : public Forecaster {
 public:
  std::string name() const override { return "drift"; }
  void fit(std::span<const double> history) override {
    require_history(history, 1, "drift baseline");
    last_ = history.back();
    slope_ = history.size() > 1
                 ? (history.back() - history.front()) /
                       static_cast<double>(history.size() - 1)
                 : 0.0;
  }
  std::vector<double> forecast(std::size_t horizon) const override {
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h)
      out[h] = last_ + slope_ * static_cast<double>(h + 1);
    return out;
  }
  std::vector<double> parameters() const override { return {last_, slope_}; }

 private:
  double last_ = 0.0;
  double slope_ = 0.0;
};

class ArForecaster final : public Forecaster {
 public:
  explicit ArForecaster(int order) : order_(order) {
    if (order_ < 0) throw std::invalid_argument("order must be non-negative");
  }
  std::string name() const override { return "ar"; }

  void fit(std::span<const double> history) override {
    require_history(history, order_ + order_ + 4, "ar model");
    const std::size_t n = history.size();
    const std::size_t rows = n - order_;
    Eigen::MatrixXd x(rows, 1 + order_);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = order_ + r;
      x(r, 0) = 1.0;
      for (int k = 1; k <= order_; ++k) x(r, k) = history[t - k];
      y(r) = history[t];
    }
    const auto fit = detail::least_squares(x, y);
    phi0_ = fit.coef(0);
    phi_.resize(order_);
    for (int k = 0; k < order_; ++k) phi_[k] = fit.coef(1 + k);
    tail_.assign(history.end() - std::min<std::size_t>(n, std::max(order_, 1)),
                 history.end());
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    std::vector<double> state = tail_;
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
      double v = phi0_;
      for (int k = 1; k <= order_; ++k) v += phi_[k - 1] * state[state.size() - k];
      state.push_back(v);
      out.push_back(v);
    }
    return out;
  }

  std::vector<double> parameters() const override {
    std::vector<double> out{phi0_};
    out.insert(out.end(), phi_.begin(), phi_.end());
    return out;
  }

 private:
  int order_;
  double phi0_ = 0.0;
  std::vector<double> phi_;
  std::vector<double> tail_;
};

std::vector<double> difference(std::span<const double> x) {
  std::vector<double> out(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) out[i] = x[i + 1] - x[i];
  return out;
}

// Largest magnitude of the reciprocal roots of 1 + c1 z + ... + cq z^q,
// via the companion matrix. Values below 1 mean an invertible MA polynomial
// (or a stationary AR one when applied to AR coefficients).
double max_reciprocal_root(const std::vector<double>& c) {
  const std::size_t q = c.size();
  if (q == 0) return 0.0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(q, q);
  for (std::size_t j = 0; j < q; ++j) comp(0, j) = -c[j];
  for (std::size_t i = 1; i < q; ++i) comp(i, i - 1) = 1.0;
  const auto eigs = Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
  double mx = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    mx = std::max(mx, std::abs(eigs(i)));
  return mx;
}

class ArimaForecaster final : public Forecaster {
 public:
  ArimaForecaster(int p, int d, int q) : p_(p), d_(d), q_(q) {
    if (p < 0 || d < 0 || q < 0)
      throw std::invalid_argument("arima orders must be non-negative");
  }
  std::string name() const override { return "arima"; }

  void fit(std::span<const double> history) override {
    require_history(history, static_cast<std::size_t>(d_) + 4, "arima model");

    // Difference d times, remembering the last level of each stage for the
    // inverse transform.
    std::vector<double> w(history.begin(), history.end());
    heads_.clear();
    for (int j = 0; j < d_; ++j) {
      if (w.size() < 2) throw std::invalid_argument("arima: series too short to difference");
      heads_.push_back(w.back());
      w = difference(w);
    }

    ar_.assign(p_, 0.0);
    ma_.assign(q_, 0.0);
    fallback_ = false;
    residuals_.assign(w.size(), 0.0);

    if (p_ == 0 && q_ == 0) {
      double mu = 0.0;
      for (double v : w) mu += v;
      intercept_ = w.empty() ? 0.0 : mu / static_cast<double>(w.size());
      for (std::size_t t = 0; t < w.size(); ++t) residuals_[t] = w[t] - intercept_;
      tail_ = w;
      return;
    }

    // Stage 1: long autoregression supplies residual proxies.
    int long_order = std::max(8, std::max(p_, q_) + 1);
    while (long_order > std::max(p_, q_) + 1 &&
           w.size() < 2 * static_cast<std::size_t>(long_order) + 4)
      --long_order;
    const std::size_t l = static_cast<std::size_t>(long_order);
    if (w.size() < l + static_cast<std::size_t>(q_) + p_ + q_ + 4)
      throw std::invalid_argument("arima: insufficient data after differencing");
    {
      const std::size_t rows = w.size() - l;
      Eigen::MatrixXd x(rows, 1 + l);
      Eigen::VectorXd y(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = l + r;
        x(r, 0) = 1.0;
        for (std::size_t k = 1; k <= l; ++k) x(r, k) = w[t - k];
        y(r) = w[t];
      }
      const auto fit = detail::least_squares(x, y);
      for (std::size_t r = 0; r < rows; ++r)
        residuals_[l + r] = y(r) - x.row(r).dot(fit.coef);
    }

    // Stage 2: AR and MA terms jointly by least squares on proxy residuals.
    const std::size_t start = l + static_cast<std::size_t>(q_);
    const std::size_t rows = w.size() - start;
    const std::size_t cols = 1 + static_cast<std::size_t>(p_ + q_);
    if (rows <= cols + 2)
      throw std::invalid_argument("arima: insufficient data after differencing");
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = start + r;
      x(r, 0) = 1.0;
      for (int k = 1; k <= p_; ++k) x(r, k) = w[t - k];
      for (int j = 1; j <= q_; ++j) x(r, p_ + j) = residuals_[t - j];
      y(r) = w[t];
    }
    const auto fit = detail::least_squares(x, y);
    intercept_ = fit.coef(0);
    for (int k = 0; k < p_; ++k) ar_[k] = fit.coef(1 + k);
    for (int j = 0; j < q_; ++j) ma_[j] = fit.coef(1 + p_ + j);

    if (q_ > 0 && max_reciprocal_root(ma_) >= 1.0 - 1e-8) {
      // Non-invertible moving average: drop it and refit the AR part.
      fallback_ = true;
      ma_.assign(q_, 0.0);
      const std::size_t rows2 = w.size() - static_cast<std::size_t>(std::max(p_, 1));
      const std::size_t start2 = w.size() - rows2;
      Eigen::MatrixXd x2(rows2, 1 + p_);
      Eigen::VectorXd y2(rows2);
      for (std::size_t r = 0; r < rows2; ++r) {
        const std::size_t t = start2 + r;
        x2(r, 0) = 1.0;
        for (int k = 1; k <= p_; ++k) x2(r, k) = w[t - k];
        y2(r) = w[t];
      }
      const auto refit = detail::least_squares(x2, y2);
      intercept_ = refit.coef(0);
      for (int k = 0; k < p_; ++k) ar_[k] = refit.coef(1 + k);
      for (std::size_t r = 0; r < rows2; ++r)
        residuals_[start2 + r] = y2(r) - x2.row(r).dot(refit.coef);
    }
    tail_ = w;
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    std::vector<double> w = tail_;
    std::vector<double> e = residuals_;
    std::vector<double> heads = heads_;
    std::vector<double> out;
    out.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
      const std::size_t t = w.size();
      double v = intercept_;
      for (int k = 1; k <= p_; ++k)
        v += ar_[k - 1] * w[t - k];
      for (int j = 1; j <= q_; ++j)
        v += ma_[j - 1] * e[t - j];
      w.push_back(v);
      e.push_back(0.0);  // future innovations are zero in expectation
      double level = v;
      for (std::size_t j = heads.size(); j-- > 0;) {
        level += heads[j];
        heads[j] = level;
      }
      out.push_back(level);
    }
    return out;
  }

  std::vector<double> parameters() const override {
    std::vector<double> out{static_cast<double>(p_), static_cast<double>(d_),
                            static_cast<double>(q_), intercept_,
                            fallback_ ? 1.0 : 0.0};
    out.insert(out.end(), ar_.begin(), ar_.end());
    out.insert(out.end(), ma_.begin(), ma_.end());
    return out;
  }

 private:
  int p_, d_, q_;
  double intercept_ = 0.0;
  std::vector<double> ar_, ma_;
  std::vector<double> residuals_;
  std::vector<double> tail_;   // differenced series at fit time
  std::vector<double> heads_;  // last level of each differencing stage
  bool fallback_ = false;
};

class ExpSmoothForecaster final : public Forecaster {
 public:
  explicit ExpSmoothForecaster(std::size_t val_len) : val_len_(val_len) {
    if (val_len_ == 0) throw std::invalid_argument("val_len must be positive");
  }
  std::string name() const override { return "expsmooth"; }

  void fit(std::span<const double> history) override {
    require_history(history, val_len_ + 1, "exponential smoother");
    const std::size_t cut = history.size() - val_len_;
    const std::span<const double> head = history.subspan(0, cut);
    const std::span<const double> val = history.subspan(cut);

    double best_mae = std::numeric_limits<double>::max();
    decay_ = 0.05;
    for (int g = 1; g <= 20; ++g) {
      const double decay = 0.05 * g;
      const double level = exp_smooth_level(head, decay);
      double err = 0.0;
      for (double v : val) err += std::abs(level - v);
      err /= static_cast<double>(val.size());
      if (err < best_mae) {
        best_mae = err;
        decay_ = decay;
      }
    }
    level_ = exp_smooth_level(history, decay_);
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    return std::vector<double>(horizon, level_);
  }

  std::vector<double> parameters() const override { return {decay_, level_}; }

 private:
  std::size_t val_len_;
  double decay_ = 0.05;
  double level_ = 0.0;
};

class GeoModelForecaster final : public Forecaster {
 public:
  explicit GeoModelForecaster(std::size_t period) : period_(period) {
    if (period_ < 2) throw std::invalid_argument("period must be at least 2");
  }
  std::string name() const override { return "geomodel"; }

  void fit(std::span<const double> history) override {
    require_history(history, 2, "seasonal trend model");
    const std::size_t n = history.size();
    // Below two full periods the sinusoid columns are poorly identified, so
    // only the trend survives.
    seasonal_ = n >= 2 * period_;
    const std::size_t cols = seasonal_ ? 4 : 2;
    Eigen::MatrixXd x(n, cols);
    Eigen::VectorXd y(n);
    for (std::size_t t = 0; t < n; ++t) {
      x(t, 0) = 1.0;
      x(t, 1) = static_cast<double>(t);
      if (seasonal_) {
        const double phase = kTwoPi * static_cast<double>(t) /
                             static_cast<double>(period_);
        x(t, 2) = std::sin(phase);
        x(t, 3) = std::cos(phase);
      }
      y(t) = history[t];
    }
    const auto fit = detail::least_squares(x, y);
    coef_[2] = coef_[3] = 0.0;
    for (std::size_t i = 0; i < cols; ++i) coef_[i] = fit.coef(i);
    origin_ = n;
  }

  std::vector<double> forecast(std::size_t horizon) const override {
    std::vector<double> out(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
      const double t = static_cast<double>(origin_ + h);
      const double phase = kTwoPi * t / static_cast<double>(period_);
      out[h] = coef_[0] + coef_[1] * t + coef_[2] * std::sin(phase) +
               coef_[3] * std::cos(phase);
    }
    return out;
  }

  std::vector<double> parameters() const override {
    return {coef_[0], coef_[1], coef_[2], coef_[3],
            seasonal_ ? 0.0 : 1.0};
  }

 private:
  std::size_t period_;
  double coef_[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t origin_ = 0;
  bool seasonal_ = true;  // false marks the trend-only short-series fit
};

}  // namespace

double exp_smooth_level(std::span<const double> history, double decay) {
  if (history.empty())
    throw std::invalid_argument("exp_smooth_level needs observations");
  if (!(decay > 0.0) || decay > 1.0)
    throw std::invalid_argument("decay must be in (0, 1]");
  double num = 0.0, den = 0.0;
  double weight = 1.0;
  for (std::size_t a = 0; a < history.size(); ++a) {
    num += weight * history[history.size() - 1 - a];
    den += weight;
    weight *= 1.0 - decay;
    if (weight == 0.0) break;
  }
  return num / den;
}

std::unique_ptr<Forecaster> make_gaussian_naive(std::uint64_t seed) {
  return std::make_unique<GaussianNaive>(seed);
}
std::unique_ptr<Forecaster> make_seasonal_naive(std::size_t period) {
  return std::make_unique<SeasonalNaive>(period);
}
std::unique_ptr<Forecaster> make_mean_naive() {
  return std::make_unique<MeanNaive>();
}
std::unique_ptr<Forecaster> make_last_naive() {
  return std::make_unique<LastNaive>();
}
std::unique_ptr<Forecaster> make_drift_naive() {
  return std::make_unique<DriftNaive>();
}
std::unique_ptr<Forecaster> make_ar(int order) {
  return std::make_unique<ArForecaster>(order);
}
std::unique_ptr<Forecaster> make_arima(int p, int d, int q) {
  return std::make_unique<ArimaForecaster>(p, d, q);
}
std::unique_ptr<Forecaster> make_exp_smooth(std::size_t val_len) {
  return std::make_unique<ExpSmoothForecaster>(val_len);
}
std::unique_ptr<Forecaster> make_geo_model(std::size_t period) {
  return std::make_unique<GeoModelForecaster>(period);
}

VarModel fit_var(const std::vector<std::vector<double>>& histories, int order) {
  if (histories.empty()) throw std::invalid_argument("var needs series");
  if (order < 1) throw std::invalid_argument("var order must be >= 1");
  const std::size_t dim = histories.size();
  const std::size_t n = histories.front().size();
  for (const auto& h : histories)
    if (h.size() != n) throw std::invalid_argument("var series lengths differ");
  if (n < static_cast<std::size_t>(order) + 3)
    throw std::invalid_argument("var: series too short for order " +
                                std::to_string(order));

  const std::size_t rows = n - order;
  const std::size_t cols = 1 + dim * order;
  Eigen::MatrixXd x(rows, cols);
  Eigen::MatrixXd y(rows, dim);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = order + r;
    x(r, 0) = 1.0;
    for (int k = 1; k <= order; ++k)
      for (std::size_t j = 0; j < dim; ++j)
        x(r, 1 + (k - 1) * dim + j) = histories[j][t - k];
    for (std::size_t j = 0; j < dim; ++j) y(r, j) = histories[j][t];
  }
  const auto fit = detail::least_squares_multi(x, y);

  VarModel model;
  model.order = order;
  model.dim = dim;
  model.ridge_used = fit.ridge_used;
  model.coef.assign(dim, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t c = 0; c < cols; ++c) model.coef[i][c] = fit.coef(c, i);
  return model;
}

std::vector<std::vector<double>> forecast_var_model(
    const VarModel& model, const std::vector<std::vector<double>>& histories,
    std::size_t horizon) {
  if (histories.size() != model.dim)
    throw std::invalid_argument("var forecast dimension mismatch");
  std::vector<std::vector<double>> state = histories;
  std::vector<std::vector<double>> out(model.dim);
  for (std::size_t h = 0; h < horizon; ++h) {
    const std::size_t t = state.front().size();
    std::vector<double> step(model.dim);
    for (std::size_t i = 0; i < model.dim; ++i) {
      double v = model.coef[i][0];
      for (int k = 1; k <= model.order; ++k)
        for (std::size_t j = 0; j < model.dim; ++j)
          v += model.coef[i][1 + (k - 1) * model.dim + j] * state[j][t - k];
      step[i] = v;
    }
    for (std::size_t i = 0; i < model.dim; ++i) {
      state[i].push_back(step[i]);
      out[i].push_back(step[i]);
    }
  }
  return out;
}

std::span<const double> history_of(const Trajectory& tr) {
  const std::size_t end =
      tr.split.has_value() ? tr.split->val_end : tr.values.size();
  return std::span<const double>(tr.values.data(), end);
}

std::vector<double> run_forecaster(Forecaster& model, const Trajectory& tr,
                                   std::size_t horizon) {
  const auto hist = history_of(tr);
  model.fit(hist);
  return model.forecast(horizon);
}

std::vector<std::vector<double>> forecast_var(const TrajectorySet& ts,
                                              VarScope scope, int order,
                                              std::size_t horizon) {
  std::vector<std::vector<double>> out(ts.size());
  const bool per_style = scope == VarScope::kAllUnitsPerStyle;
  const std::size_t groups = per_style ? ts.style_count() : ts.unit_count();
  const std::size_t members = per_style ? ts.unit_count() : ts.style_count();
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<std::vector<double>> histories(members);
    std::vector<std::size_t> flat(members);
    for (std::size_t i = 0; i < members; ++i) {
      const Trajectory& tr = per_style ? ts.at(g, i) : ts.at(i, g);
      flat[i] = per_style ? g * ts.unit_count() + i : i * ts.unit_count() + g;
      const auto hist = history_of(tr);
      histories[i].assign(hist.begin(), hist.end());
    }
    const VarModel model = fit_var(histories, order);
    auto fc = forecast_var_model(model, histories, horizon);
    for (std::size_t i = 0; i < members; ++i) out[flat[i]] = std::move(fc[i]);
  }
  return out;
}

ForecastReport evaluate(const std::vector<ModelSpec>& models,
                        const TrajectorySet& ts, std::size_t horizon) {
  if (!ts.split().has_value())
    throw std::invalid_argument("evaluate needs a split-stamped set");
  const Split& sp = *ts.split();
  if (horizon == 0 || horizon > sp.test_size())
    throw std::invalid_argument("horizon must fit inside the test window");

  ForecastReport report;
  report.horizon = horizon;
  for (const auto& spec : models) {
    auto forecasts = spec.run(ts, horizon);
    if (forecasts.size() != ts.size())
      throw NumericError("model " + spec.name +
                         " produced the wrong number of series");
    ModelScore score;
    score.name = spec.name;
    double mape_sum = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (forecasts[i].size() != horizon)
        throw NumericError("model " + spec.name +
                           " produced the wrong horizon");
      const std::span<const double> truth(ts.item(i).values.data() + sp.val_end,
                                          horizon);
      const double m = mae(forecasts[i], truth);
      score.per_trajectory_mae.push_back(m);
      score.mae += m;
      try {
        mape_sum += mape(forecasts[i], truth);
        ++score.mape_count;
      } catch (const NumericError&) {
        // All-zero truth: this trajectory has no defined percentage error.
      }
    }
    score.mae /= static_cast<double>(ts.size());
    score.mape = score.mape_count > 0
                     ? mape_sum / static_cast<double>(score.mape_count)
                     : std::numeric_limits<double>::quiet_NaN();
    report.models.push_back(std::move(score));
  }
  std::stable_sort(report.models.begin(), report.models.end(),
                   [](const ModelScore& a, const ModelScore& b) {
                     return a.mae < b.mae;
                   });
  return report;
}

namespace {

ModelSpec per_series_spec(std::string name,
                          std::function<std::unique_ptr<Forecaster>(
                              const Trajectory&)> factory) {
  ModelSpec spec;
  spec.name = std::move(name);
  spec.run = [factory = std::move(factory)](const TrajectorySet& ts,
                                            std::size_t horizon) {
    std::vector<std::vector<double>> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto model = factory(ts.item(i));
      out[i] = run_forecaster(*model, ts.item(i), horizon);
    }
    return out;
  };
  return spec;
}

}  // namespace

std::vector<ModelSpec> baseline_models(std::uint64_t seed, std::size_t period) {
  std::vector<ModelSpec> out;
  out.push_back(per_series_spec("gaussian", [seed](const Trajectory& tr) {
    return make_gaussian_naive(
        derive_seed(seed, tr.style + "\x1f" + tr.unit, 0x9a55));
  }));
  out.push_back(per_series_spec("seasonal", [period](const Trajectory&) {
    return make_seasonal_naive(period);
  }));
  out.push_back(per_series_spec(
      "mean", [](const Trajectory&) { return make_mean_naive(); }));
  out.push_back(per_series_spec(
      "last", [](const Trajectory&) { return make_last_naive(); }));
  out.push_back(per_series_spec(
      "drift", [](const Trajectory&) { return make_drift_naive(); }));
  out.push_back(
      per_series_spec("ar", [](const Trajectory&) { return make_ar(8); }));
  out.push_back(per_series_spec(
      "arima", [](const Trajectory&) { return make_arima(1, 1, 1); }));
  out.push_back(per_series_spec(
      "expsmooth", [](const Trajectory&) { return make_exp_smooth(4); }));
  out.push_back(per_series_spec("geomodel", [period](const Trajectory&) {
    return make_geo_model(period);
  }));
  return out;
}

ModelSpec var_model_spec(VarScope scope, int order) {
  ModelSpec spec;
  spec.name = scope == VarScope::kAllUnitsPerStyle ? "var_units" : "var_styles";
  spec.run = [scope, order](const TrajectorySet& ts, std::size_t horizon) {
    return forecast_var(ts, scope, order, horizon);
  };
  return spec;
}

}  // namespace stylecast
