#include "stylecast/influence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linalg.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/ingest.hpp"
#include "stylecast/parallel.hpp"
#include "stylecast/stats.hpp"

namespace stylecast {

namespace {

// Shared design-matrix assembly so restricted and extended fits always use
// identical rows.
Eigen::MatrixXd ar_design(std::span<const double> series, int order,
                          const ExternalRegressor* external, std::size_t start,
                          std::size_t rows) {
  const std::size_t n_ext = external ? external->lags.size() : 0;
  Eigen::MatrixXd x(rows, 1 + order + n_ext);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = start + r;
    x(r, 0) = 1.0;
    for (int k = 1; k <= order; ++k) x(r, k) = series[t - k];
    for (std::size_t j = 0; j < n_ext; ++j)
      x(r, 1 + order + j) = external->series[t - external->lags[j]];
  }
  return x;
}

ArModel fit_ar_rows(std::span<const double> series, int order,
                    const ExternalRegressor* external, std::size_t start) {
  const std::size_t n = series.size();
  const std::size_t n_ext = external ? external->lags.size() : 0;
  const std::size_t cols = 1 + static_cast<std::size_t>(order) + n_ext;
  if (n <= start || n - start <= cols + 2)
    throw std::invalid_argument(
        "insufficient data for ar fit: " + std::to_string(n) +
        " steps leave too few rows for " + std::to_string(cols) +
        " coefficients");
  const std::size_t rows = n - start;

  Eigen::MatrixXd x = ar_design(series, order, external, start, rows);
  Eigen::VectorXd y(rows);
  for (std::size_t r = 0; r < rows; ++r) y(r) = series[start + r];

  const auto fit = detail::least_squares(x, y);

  ArModel out;
  out.phi0 = fit.coef(0);
  out.phi.resize(order);
  for (int k = 0; k < order; ++k) out.phi[k] = fit.coef(1 + k);
  if (external) {
    out.lags = external->lags;
    out.psi.resize(n_ext);
    for (std::size_t j = 0; j < n_ext; ++j)
      out.psi[j] = fit.coef(1 + order + j);
  }
  out.ssr = fit.ssr;
  out.rows = rows;
  out.ridge_used = fit.ridge_used;
  return out;
}

std::size_t lag_start(int order, const ExternalRegressor* external) {
  int s = order;
  if (external)
    for (int l : external->lags) s = std::max(s, l);
  return static_cast<std::size_t>(s);
}

}  // namespace

ArModel fit_ar(std::span<const double> series, int order,
               const std::optional<ExternalRegressor>& external) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  const ExternalRegressor* ext = external ? &*external : nullptr;
  if (ext) {
    for (int l : ext->lags)
      if (l < 1) throw std::invalid_argument("external lags must be >= 1");
    if (ext->series.size() != series.size())
      throw std::invalid_argument("external series length mismatch");
  }
  for (double v : series)
    if (!std::isfinite(v)) throw NumericError("series contains a non-finite value");
  return fit_ar_rows(series, order, ext, lag_start(order, ext));
}

GrangerResult granger_test(std::span<const double> target,
                           std::span<const double> source,
                           const GrangerOptions& options) {
  if (options.order < 1 || options.max_lag < 1)
    throw std::invalid_argument("granger_test needs order >= 1 and max_lag >= 1");
  if (target.size() != source.size())
    throw std::invalid_argument("target and source lengths differ");

  GrangerResult result;
  result.lag_p_values.assign(options.max_lag, 1.0);

  // All candidate fits share the rows of the deepest lag so every comparison
  // is between nested models on identical data.
  const std::size_t start = static_cast<std::size_t>(
      std::max(options.order, options.max_lag));
  const std::size_t cols_ext = 2 + static_cast<std::size_t>(options.order);
  if (target.size() <= start || target.size() - start <= cols_ext + 2)
    throw std::invalid_argument("insufficient data for granger test");

  const ArModel restricted =
      fit_ar_rows(target, options.order, nullptr, start);

  // A target its own history explains perfectly leaves nothing to improve.
  double scale = 0.0;
  for (std::size_t t = start; t < target.size(); ++t) scale += target[t] * target[t];
  if (restricted.ssr <= 1e-12 * std::max(scale, 1e-12)) {
    result.degenerate = true;
    return result;
  }

  const double dof = static_cast<double>(restricted.rows - cols_ext);
  std::optional<InfluenceEdge> best;
  for (int l = 1; l <= options.max_lag; ++l) {
    ExternalRegressor ext{source, {l}};
    const ArModel extended = fit_ar_rows(target, options.order, &ext, start);
    const double improvement = std::max(0.0, restricted.ssr - extended.ssr);
    double p = 1.0;
    if (extended.ssr <= 1e-12 * std::max(scale, 1e-12)) {
      // Perfect extended fit: decisive only if it actually improved.
      p = improvement > 1e-12 * std::max(scale, 1e-12) ? 0.0 : 1.0;
    } else {
      const double f = improvement / (extended.ssr / dof);
      p = f_survival(f, 1.0, dof);
    }
    result.lag_p_values[l - 1] = p;
    if (p < options.alpha) {
      if (!best || p < best->p_value) {
        InfluenceEdge e;
        e.lag = l;
        e.p_value = p;
        e.delta_mse = improvement / static_cast<double>(restricted.rows);
        best = e;
      }
    }
  }
  result.edge = best;
  return result;
}

InfluenceTensor::InfluenceTensor(InfluenceAxis axis,
                                 std::vector<std::string> entities,
                                 std::vector<std::string> contexts)
    : axis_(axis),
      entities_(std::move(entities)),
      contexts_(std::move(contexts)) {
  lags_.assign(entities_.size() * entities_.size() * contexts_.size(), 0);
}

int InfluenceTensor::lag(std::size_t src, std::size_t dst,
                         std::size_t context) const {
  return lags_.at((context * entities_.size() + src) * entities_.size() + dst);
}

std::size_t InfluenceTensor::entity_index(const std::string& id) const {
  for (std::size_t i = 0; i < entities_.size(); ++i)
    if (entities_[i] == id) return i;
  throw DataError("unknown entity id: " + id);
}

std::size_t InfluenceTensor::context_index(const std::string& id) const {
  for (std::size_t i = 0; i < contexts_.size(); ++i)
    if (contexts_[i] == id) return i;
  throw DataError("unknown context id: " + id);
}

void InfluenceTensor::set(const InfluenceEdge& edge) {
  const std::size_t src = entity_index(edge.src);
  const std::size_t dst = entity_index(edge.dst);
  const std::size_t ctx = context_index(edge.context);
  if (src == dst) throw std::invalid_argument("self-influence is not representable");
  lags_.at((ctx * entities_.size() + src) * entities_.size() + dst) = edge.lag;
  edges_.push_back(edge);
}

InfluenceTensor build_influence_tensor(const TrajectorySet& ts,
                                       InfluenceAxis axis,
                                       const GrangerOptions& options,
                                       int jobs) {
  if (!ts.split().has_value())
    throw std::invalid_argument("influence tensor needs a split-stamped set");
  const std::size_t usable = ts.split()->val_end;

  const bool unit_axis = axis == InfluenceAxis::kUnit;
  const std::vector<std::string>& entities = unit_axis ? ts.units() : ts.styles();
  const std::vector<std::string>& contexts = unit_axis ? ts.styles() : ts.units();
  const std::size_t n = entities.size();
  const std::size_t nc = contexts.size();

  auto series = [&](std::size_t entity, std::size_t ctx) {
    const Trajectory& tr =
        unit_axis ? ts.at(ctx, entity) : ts.at(entity, ctx);
    return std::span<const double>(tr.values.data(), usable);
  };

  InfluenceTensor tensor(axis, entities, contexts);
  const std::size_t total = nc * n * n;
  std::vector<std::optional<InfluenceEdge>> found(total);
  std::vector<char> failed(total, 0);

  parallel_for(total, jobs, [&](std::size_t idx) {
    const std::size_t ctx = idx / (n * n);
    const std::size_t src = (idx / n) % n;
    const std::size_t dst = idx % n;
    if (src == dst) return;
    try {
      const auto r = granger_test(series(dst, ctx), series(src, ctx), options);
      if (r.edge) {
        InfluenceEdge e = *r.edge;
        e.src = entities[src];
        e.dst = entities[dst];
        e.context = contexts[ctx];
        found[idx] = e;
      }
    } catch (const std::exception&) {
      failed[idx] = 1;
    }
  });

  for (std::size_t idx = 0; idx < total; ++idx) {
    if (failed[idx]) tensor.note_skipped();
    if (found[idx]) tensor.set(*found[idx]);
  }
  return tensor;
}

std::vector<InfluenceEdge> unit_to_global(const TrajectorySet& ts,
                                          const std::string& style,
                                          const GrangerOptions& options) {
  if (!ts.split().has_value())
    throw std::invalid_argument("unit_to_global needs a split-stamped set");
  if (ts.unit_count() < 2)
    throw std::invalid_argument("unit_to_global needs at least two units");
  const std::size_t usable = ts.split()->val_end;
  const std::size_t s = ts.style_index(style);

  const std::vector<double> trend = global_trend(ts, style);
  const std::span<const double> target(trend.data(), usable);

  std::vector<InfluenceEdge> out;
  for (std::size_t u = 0; u < ts.unit_count(); ++u) {
    const auto& v = ts.at(s, u).values;
    const auto r =
        granger_test(target, std::span<const double>(v.data(), usable), options);
    if (r.edge) {
      InfluenceEdge e = *r.edge;
      e.src = ts.units()[u];
      e.dst = "global";
      e.context = style;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace stylecast
