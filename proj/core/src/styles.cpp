#include "stylecast/styles.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stylecast/errors.hpp"
#include "stylecast/rng.hpp"

namespace stylecast {

namespace {

constexpr double kVarianceFloor = 1e-6;
constexpr double kRelTol = 1e-6;
constexpr int kMaxIter = 500;
constexpr std::size_t kSeedSubsample = 5000;
constexpr double kLogTwoPi = 1.8378770664093454836;

void check_data(const std::vector<AttributeVector>& data) {
  if (data.empty()) throw std::invalid_argument("style fit needs data");
  const std::size_t m = data.front().size();
  if (m == 0) throw std::invalid_argument("attribute vectors are empty");
  for (const auto& row : data) {
    if (row.size() != m)
      throw std::invalid_argument("attribute vectors differ in width");
    for (double v : row)
      if (!std::isfinite(v))
        throw NumericError("attribute data contains a non-finite value");
  }
}

double sq(double x) { return x * x; }

// Log density of a diagonal Gaussian.
double log_gauss_diag(const AttributeVector& x, const std::vector<double>& mean,
                      const std::vector<double>& var) {
  double acc = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d)
    acc += -0.5 * (kLogTwoPi + std::log(var[d]) + sq(x[d] - mean[d]) / var[d]);
  return acc;
}

// k-means++ center selection on a deterministic subsample.
std::vector<std::size_t> kmeanspp_centers(const std::vector<AttributeVector>& data,
                                          std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(data.size());
  std::iota(pool.begin(), pool.end(), 0);
  if (pool.size() > kSeedSubsample) {
    for (std::size_t i = 0; i < kSeedSubsample; ++i) {
      const std::size_t j = i + rng.index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(kSeedSubsample);
  }

  std::vector<std::size_t> centers;
  centers.reserve(k);
  centers.push_back(pool[rng.index(pool.size())]);
  std::vector<double> dist2(pool.size(), std::numeric_limits<double>::max());
  while (centers.size() < k) {
    const AttributeVector& last = data[centers.back()];
    double total = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double d2 = 0.0;
      const AttributeVector& x = data[pool[i]];
      for (std::size_t d = 0; d < x.size(); ++d) d2 += sq(x[d] - last[d]);
      dist2[i] = std::min(dist2[i], d2);
      total += dist2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double r = rng.uniform() * total;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        r -= dist2[i];
        if (r <= 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.index(pool.size());  // all points coincide
    }
    centers.push_back(pool[pick]);
  }
  return centers;
}

}  // namespace

StyleModel fit_gmm(const std::vector<AttributeVector>& data, std::size_t k,
                   std::uint64_t seed) {
  check_data(data);
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (data.size() < 10 * k)
    throw std::invalid_argument("gmm fit needs at least 10*K samples, have " +
                                std::to_string(data.size()));
  const std::size_t n = data.size();
  const std::size_t m = data.front().size();

  StyleModel model;
  model.kind = StyleModelKind::kGmm;
  model.k = k;
  model.m = m;

  // Global per-dimension variance doubles as the initial spread.
  std::vector<double> gmean(m, 0.0), gvar(m, 0.0);
  for (const auto& x : data)
    for (std::size_t d = 0; d < m; ++d) gmean[d] += x[d];
  for (std::size_t d = 0; d < m; ++d) gmean[d] /= static_cast<double>(n);
  for (const auto& x : data)
    for (std::size_t d = 0; d < m; ++d) gvar[d] += sq(x[d] - gmean[d]);
  for (std::size_t d = 0; d < m; ++d)
    gvar[d] = std::max(gvar[d] / static_cast<double>(n), kVarianceFloor);

  Rng rng(derive_seed(seed, "gmm-init"));
  const auto centers = kmeanspp_centers(data, k, rng);
  model.weights.assign(k, 1.0 / static_cast<double>(k));
  model.means.resize(k);
  model.variances.assign(k, gvar);
  for (std::size_t c = 0; c < k; ++c) model.means[c] = data[centers[c]];

  std::vector<double> logp(k);
  std::vector<std::vector<double>> resp(k, std::vector<double>(n, 0.0));
  bool floored = false;
  double prev_ll = -std::numeric_limits<double>::max();

  for (int iter = 0; iter < kMaxIter; ++iter) {
    // E step in the log domain.
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double mx = -std::numeric_limits<double>::max();
      for (std::size_t c = 0; c < k; ++c) {
        logp[c] = std::log(model.weights[c]) +
                  log_gauss_diag(data[i], model.means[c], model.variances[c]);
        mx = std::max(mx, logp[c]);
      }
      double z = 0.0;
      for (std::size_t c = 0; c < k; ++c) z += std::exp(logp[c] - mx);
      for (std::size_t c = 0; c < k; ++c)
        resp[c][i] = std::exp(logp[c] - mx) / z;
      ll += mx + std::log(z);
    }
    // EM guarantees monotone log-likelihood up to the variance floor.
    assert(model.fit_trace.empty() ||
           ll >= model.fit_trace.back() - 1e-8 * std::abs(model.fit_trace.back()));
    model.fit_trace.push_back(ll);

    // M step.
    for (std::size_t c = 0; c < k; ++c) {
      double nc = 0.0;
      for (std::size_t i = 0; i < n; ++i) nc += resp[c][i];
      model.weights[c] = nc / static_cast<double>(n);
      if (nc <= 0.0) nc = std::numeric_limits<double>::min();
      for (std::size_t d = 0; d < m; ++d) {
        double mu = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu += resp[c][i] * data[i][d];
        mu /= nc;
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          var += resp[c][i] * sq(data[i][d] - mu);
        var /= nc;
        if (var < kVarianceFloor) {
          var = kVarianceFloor;
          floored = true;
        }
        model.means[c][d] = mu;
        model.variances[c][d] = var;
      }
    }

    if (iter > 0 &&
        ll - prev_ll < kRelTol * std::max(std::abs(prev_ll), 1.0))
      break;
    prev_ll = ll;
  }

  if (floored)
    model.warnings.push_back(
        "variance floor applied: some components are degenerate");
  return model;
}

StyleModel fit_nmf(const std::vector<AttributeVector>& data, std::size_t k,
                   std::uint64_t seed) {
  check_data(data);
  const std::size_t n = data.size();
  const std::size_t m = data.front().size();
  if (k == 0 || k > m)
    throw std::invalid_argument("nmf requires 1 <= k <= attribute width");
  double total = 0.0;
  for (const auto& row : data)
    for (double v : row) {
      if (v < 0.0)
        throw std::invalid_argument("nmf requires non-negative data");
      total += v;
    }

  StyleModel model;
  model.kind = StyleModelKind::kNmf;
  model.k = k;
  model.m = m;
  model.factors.assign(k, std::vector<double>(m, 0.0));
  model.row_sums.assign(k, 0.0);

  if (total <= 0.0) {
    // All-zero input factorizes to all-zero factors with zero error.
    model.fit_trace.push_back(0.0);
    model.warnings.push_back("all-zero input: factors are zero");
    return model;
  }

  const double scale =
      std::sqrt(total / static_cast<double>(n * m) / static_cast<double>(k));
  Rng rng(derive_seed(seed, "nmf-init"));
  std::vector<std::vector<double>> h(n, std::vector<double>(k));
  auto& w = model.factors;
  for (auto& row : h)
    for (double& v : row) v = rng.uniform(0.1, 1.0) * scale;
  for (auto& row : w)
    for (double& v : row) v = rng.uniform(0.1, 1.0) * scale;

  constexpr double kEps = 1e-12;
  std::vector<std::vector<double>> wwt(k, std::vector<double>(k));
  std::vector<std::vector<double>> hth(k, std::vector<double>(k));
  double prev_err = std::numeric_limits<double>::max();

  for (int iter = 0; iter < kMaxIter; ++iter) {
    // H <- H * (X W^T) / (H W W^T)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double acc = 0.0;
        for (std::size_t d = 0; d < m; ++d) acc += w[a][d] * w[b][d];
        wwt[a][b] = acc;
      }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        double num = 0.0;
        for (std::size_t d = 0; d < m; ++d) num += data[i][d] * w[a][d];
        double den = 0.0;
        for (std::size_t b = 0; b < k; ++b) den += h[i][b] * wwt[b][a];
        h[i][a] *= num / (den + kEps);
      }
    }
    // W <- W * (H^T X) / (H^T H W)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += h[i][a] * h[i][b];
        hth[a][b] = acc;
      }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < m; ++d) {
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i) num += h[i][a] * data[i][d];
        double den = 0.0;
        for (std::size_t b = 0; b < k; ++b) den += hth[a][b] * w[b][d];
        w[a][d] *= num / (den + kEps);
      }
    }

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < m; ++d) {
        double rec = 0.0;
        for (std::size_t a = 0; a < k; ++a) rec += h[i][a] * w[a][d];
        err += sq(data[i][d] - rec);
      }
    model.fit_trace.push_back(err);
    if (iter > 0 && prev_err - err < kRelTol * std::max(prev_err, 1e-30)) break;
    prev_err = err;
  }

  for (std::size_t a = 0; a < k; ++a)
    model.row_sums[a] =
        std::accumulate(w[a].begin(), w[a].end(), 0.0);
  return model;
}

std::vector<double> StyleModel::posterior(const AttributeVector& attrs) const {
  if (attrs.size() != m)
    throw std::invalid_argument("attribute vector width " +
                                std::to_string(attrs.size()) +
                                " does not match model width " +
                                std::to_string(m));
  std::vector<double> out(k, 0.0);
  if (kind == StyleModelKind::kGmm) {
    std::vector<double> logp(k);
    double mx = -std::numeric_limits<double>::max();
    for (std::size_t c = 0; c < k; ++c) {
      logp[c] = std::log(weights[c]) +
                log_gauss_diag(attrs, means[c], variances[c]);
      mx = std::max(mx, logp[c]);
    }
    double z = 0.0;
    for (std::size_t c = 0; c < k; ++c) z += std::exp(logp[c] - mx);
    for (std::size_t c = 0; c < k; ++c) out[c] = std::exp(logp[c] - mx) / z;
    return out;
  }

  // NMF: non-negative least squares against the factor rows, then simplex
  // normalization. Multiplicative updates from a uniform start are
  // deterministic and keep loadings non-negative.
  constexpr double kEps = 1e-12;
  constexpr int kNnlsIter = 200;
  std::vector<double> hv(k, 1.0 / static_cast<double>(k));
  std::vector<double> xwt(k, 0.0);
  std::vector<std::vector<double>> wwt(k, std::vector<double>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t d = 0; d < m; ++d) xwt[a] += attrs[d] * factors[a][d];
    for (std::size_t b = 0; b < k; ++b) {
      double acc = 0.0;
      for (std::size_t d = 0; d < m; ++d) acc += factors[a][d] * factors[b][d];
      wwt[a][b] = acc;
    }
  }
  for (int iter = 0; iter < kNnlsIter; ++iter) {
    double delta = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      double den = 0.0;
      for (std::size_t b = 0; b < k; ++b) den += hv[b] * wwt[b][a];
      const double nv = hv[a] * xwt[a] / (den + kEps);
      delta = std::max(delta, std::abs(nv - hv[a]));
      hv[a] = nv;
    }
    if (delta < 1e-12) break;
  }
  double sum = std::accumulate(hv.begin(), hv.end(), 0.0);
  if (sum <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(k));
    return out;
  }
  for (std::size_t a = 0; a < k; ++a) out[a] = hv[a] / sum;
  return out;
}

std::vector<double> style_posterior(const StyleModel& model,
                                    const AttributeVector& attrs) {
  return model.posterior(attrs);
}

}  // namespace stylecast
