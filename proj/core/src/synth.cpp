#include "stylecast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "stylecast/rng.hpp"

namespace stylecast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

std::vector<std::string> make_names(const char* stem, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  char buf[32];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof buf, "%s_%02zu", stem, i);
    out.emplace_back(buf);
  }
  return out;
}

struct Incoming {
  std::size_t src_flat = 0;
  int lag = 1;
  double coef = 0.0;
  std::size_t start = 0;
};

void check_config(const SynthConfig& cfg) {
  if (cfg.units == 0 || cfg.styles == 0 || cfg.length == 0)
    throw std::invalid_argument("units, styles and length must be positive");
  if (!(std::abs(cfg.ar_coef) < 1.0))
    throw std::invalid_argument("|ar_coef| must be below 1 for stationarity");
  if (cfg.noise_std < 0.0)
    throw std::invalid_argument("noise_std must be non-negative");
  for (const SeasonalHarmonic& h : cfg.seasonal) {
    if (h.amplitude < 0.0)
      throw std::invalid_argument("seasonal amplitude must be non-negative");
    if (h.period < 2)
      throw std::invalid_argument("seasonal period must be at least 2");
    if (cfg.length <= h.period)
      throw std::invalid_argument(
          "length must exceed every seasonal period");
  }
  for (const PlantedEdge& e : cfg.edges) {
    const std::size_t n =
        e.axis == InfluenceAxis::kUnit ? cfg.units : cfg.styles;
    const std::size_t nc =
        e.axis == InfluenceAxis::kUnit ? cfg.styles : cfg.units;
    if (e.src >= n || e.dst >= n || e.context >= nc)
      throw std::invalid_argument("planted edge index out of range");
    if (e.src == e.dst)
      throw std::invalid_argument(
          "planted edge src equals dst; self-persistence is ar_coef");
    if (e.lag < 1 || e.lag > 8)
      throw std::invalid_argument("planted lag must be in 1..8");
    if (e.start >= cfg.length)
      throw std::invalid_argument("planted edge starts past the series end");
  }
}

}  // namespace

SynthData generate(const SynthConfig& cfg) {
  check_config(cfg);
  const auto styles = make_names("style", cfg.styles);
  const auto units = make_names("unit", cfg.units);
  const std::size_t n = cfg.styles * cfg.units;
  const std::size_t T = cfg.length;
  const double mu = cfg.base_level;

  // Resolve planted edges to flat target indices.
  std::vector<std::vector<Incoming>> incoming(n);
  for (const PlantedEdge& e : cfg.edges) {
    std::size_t src_flat, dst_flat;
    if (e.axis == InfluenceAxis::kUnit) {
      src_flat = e.context * cfg.units + e.src;
      dst_flat = e.context * cfg.units + e.dst;
    } else {
      src_flat = e.src * cfg.units + e.context;
      dst_flat = e.dst * cfg.units + e.context;
    }
    incoming[dst_flat].push_back({src_flat, e.lag, e.coef, e.start});
  }

  std::vector<std::size_t> init_end(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (const Incoming& e : incoming[i])
      init_end[i] = std::max(init_end[i], static_cast<std::size_t>(e.lag));

  // Seasonal signal only where no relation feeds in; influenced
  // trajectories inherit structure through their edges.
  std::vector<std::vector<double>> seas(n);
  for (std::size_t s = 0; s < cfg.styles; ++s) {
    const double phase =
        kTwoPi * static_cast<double>(s) / static_cast<double>(cfg.styles);
    for (std::size_t u = 0; u < cfg.units; ++u) {
      const std::size_t i = s * cfg.units + u;
      seas[i].assign(T, 0.0);
      if (!incoming[i].empty()) continue;
      for (const SeasonalHarmonic& h : cfg.seasonal)
        for (std::size_t t = 0; t < T; ++t)
          seas[i][t] += h.amplitude *
                        std::sin(kTwoPi * static_cast<double>(t) /
                                     static_cast<double>(h.period) +
                                 phase);
    }
  }

  std::vector<Rng> rng;
  rng.reserve(n);
  for (std::size_t s = 0; s < cfg.styles; ++s)
    for (std::size_t u = 0; u < cfg.units; ++u)
      rng.emplace_back(derive_seed(cfg.seed, styles[s] + "\x1f" + units[u]));

  // Lockstep over time: every lagged read points strictly into the past.
  std::vector<std::vector<double>> core(n, std::vector<double>(T, 0.0));
  std::vector<std::vector<double>> y(n, std::vector<double>(T, 0.0));
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double eps = cfg.noise_std * rng[i].normal();
      double c;
      if (t < init_end[i]) {
        c = mu + eps;
      } else {
        c = mu + cfg.ar_coef * (core[i][t - 1] - mu) + eps;
        for (const Incoming& e : incoming[i])
          if (t >= e.start)
            c += e.coef * (y[e.src_flat][t - e.lag] - mu);
      }
      core[i][t] = c;
      y[i][t] = c + seas[i][t];
    }
  }

  if (cfg.rescale) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = std::minmax_element(y[i].begin(), y[i].end());
      // Copy before the loop below overwrites the extrema in place.
      const double floor = *lo;
      const double range = *hi - floor;
      if (range < 1e-12) {
        std::fill(y[i].begin(), y[i].end(), 0.5);
      } else {
        for (double& v : y[i]) v = (v - floor) / range;
      }
    }
  }

  SynthData data;
  data.set = TrajectorySet(styles, units, T);
  for (std::size_t i = 0; i < n; ++i) data.set.item(i).values = std::move(y[i]);
  data.set.apply_split(cfg.val, cfg.test);

  data.unit_truth = InfluenceTensor(InfluenceAxis::kUnit, units, styles);
  data.style_truth = InfluenceTensor(InfluenceAxis::kStyle, styles, units);
  for (const PlantedEdge& e : cfg.edges) {
    InfluenceEdge edge;
    edge.lag = e.lag;
    edge.p_value = 0.0;
    edge.delta_mse = 0.0;
    if (e.axis == InfluenceAxis::kUnit) {
      edge.src = units[e.src];
      edge.dst = units[e.dst];
      edge.context = styles[e.context];
      data.unit_truth.set(edge);
    } else {
      edge.src = styles[e.src];
      edge.dst = styles[e.dst];
      edge.context = units[e.context];
      data.style_truth.set(edge);
    }
  }
  return data;
}

RecoveryScore score_recovery(const InfluenceTensor& found,
                             const InfluenceTensor& truth) {
  if (found.axis() != truth.axis() || found.entities() != truth.entities() ||
      found.contexts() != truth.contexts())
    throw std::invalid_argument("tensors cover different axes");

  const std::size_t n = found.entities().size();
  const std::size_t nc = found.contexts().size();
  RecoveryScore score;
  std::size_t lag_matches = 0;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t src = 0; src < n; ++src)
      for (std::size_t dst = 0; dst < n; ++dst) {
        if (src == dst) continue;
        const int f = found.lag(src, dst, c);
        const int tr = truth.lag(src, dst, c);
        if (f > 0 && tr > 0) {
          ++score.true_positives;
          if (f == tr) ++lag_matches;
        } else if (f > 0) {
          ++score.false_positives;
        } else if (tr > 0) {
          ++score.false_negatives;
        }
      }

  const std::size_t tp = score.true_positives;
  score.precision = tp + score.false_positives > 0
                        ? static_cast<double>(tp) /
                              static_cast<double>(tp + score.false_positives)
                        : 1.0;
  score.recall = tp + score.false_negatives > 0
                     ? static_cast<double>(tp) /
                           static_cast<double>(tp + score.false_negatives)
                     : 1.0;
  score.lag_accuracy =
      tp > 0 ? static_cast<double>(lag_matches) / static_cast<double>(tp)
             : 1.0;
  return score;
}

}  // namespace stylecast
