#include "stylecast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "stylecast/errors.hpp"
#include "stylecast/parallel.hpp"

namespace stylecast {

namespace {

double edge_value(const InfluenceEdge& edge, EdgeWeight weight) {
  return weight == EdgeWeight::kLag ? static_cast<double>(edge.lag)
                                    : edge.delta_mse;
}

/// Ascending ranks 1..n with tied values sharing their average rank.
std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) /
                              2.0 +
                          1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

/// Pearson correlation; nullopt when either side has no variance.
std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<std::string> InfluenceRanking::ordered_ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const EntityScore& e : entries) out.push_back(e.id);
  return out;
}

const EntityScore& InfluenceRanking::find(const std::string& id) const {
  for (const EntityScore& e : entries)
    if (e.id == id) return e;
  throw std::invalid_argument("no such entity in ranking: " + id);
}

InfluenceRanking rank_entities(const InfluenceTensor& tensor,
                               EdgeWeight weight) {
  const auto& entities = tensor.entities();
  std::vector<double> exerted(entities.size(), 0.0);
  std::vector<double> received(entities.size(), 0.0);
  for (const InfluenceEdge& edge : tensor.edges()) {
    const double w = edge_value(edge, weight);
    exerted[tensor.entity_index(edge.src)] += w;
    received[tensor.entity_index(edge.dst)] += w;
  }

  InfluenceRanking ranking;
  ranking.entries.resize(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    EntityScore& e = ranking.entries[i];
    e.id = entities[i];
    e.exerted = exerted[i];
    e.received = received[i];
    e.net = exerted[i] - received[i];
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const EntityScore& a, const EntityScore& b) {
                     if (a.net != b.net) return a.net > b.net;
                     return a.id < b.id;
                   });
  return ranking;
}

std::string export_graph(const InfluenceTensor& tensor,
                         GraphThreshold threshold) {
  const std::size_t n = tensor.entities().size();
  // Per ordered pair, lags summed across contexts.
  std::vector<long long> agg(n * n, 0);
  for (const InfluenceEdge& edge : tensor.edges())
    agg[tensor.entity_index(edge.src) * n + tensor.entity_index(edge.dst)] +=
        edge.lag;

  double mean = 0.0;
  std::size_t nonzero = 0;
  for (long long w : agg)
    if (w > 0) {
      mean += static_cast<double>(w);
      ++nonzero;
    }
  if (nonzero > 0) mean /= static_cast<double>(nonzero);

  std::vector<bool> keep(n * n, false);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (agg[i] <= 0) continue;
    if (threshold == GraphThreshold::kAboveMean &&
        static_cast<double>(agg[i]) <= mean)
      continue;
    keep[i] = true;
    used[i / n] = true;
    used[i % n] = true;
  }

  std::string out = "digraph influence {\n";
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) out += "  \"" + tensor.entities()[i] + "\";\n";
  for (std::size_t src = 0; src < n; ++src)
    for (std::size_t dst = 0; dst < n; ++dst)
      if (keep[src * n + dst]) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", agg[src * n + dst]);
        out += "  \"" + tensor.entities()[src] + "\" -> \"" +
               tensor.entities()[dst] + "\" [weight=" + buf + "];\n";
      }
  out += "}\n";
  return out;
}

std::vector<double> DynamicsResult::exerted_series(
    const std::string& id) const {
  std::vector<double> out;
  out.reserve(windows.size());
  for (const InfluenceRanking& r : windows) out.push_back(r.find(id).exerted);
  return out;
}

DynamicsResult influence_dynamics(const TrajectorySet& ts, std::size_t window,
                                  std::size_t stride, InfluenceAxis axis,
                                  const GrangerOptions& options,
                                  EdgeWeight weight, int jobs) {
  ts.validate();
  const std::size_t usable =
      ts.split().has_value() ? ts.split()->val_end : ts.length();
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  if (window == 0 || window > usable)
    throw std::invalid_argument("window exceeds the usable range (" +
                                std::to_string(usable) + " steps)");

  DynamicsResult result;
  for (std::size_t start = 0; start + window <= usable; start += stride)
    result.window_starts.push_back(start);
  result.windows.resize(result.window_starts.size());
  result.entities =
      axis == InfluenceAxis::kUnit ? ts.units() : ts.styles();

  parallel_for(result.window_starts.size(), jobs, [&](std::size_t w) {
    const std::size_t start = result.window_starts[w];
    TrajectorySet sub(ts.styles(), ts.units(), window);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sub.item(i).values.assign(ts.item(i).values.begin() + start,
                                ts.item(i).values.begin() + start + window);
    }
    sub.apply_split(0, 0, 0);  // the whole window is usable history
    const InfluenceTensor tensor = build_influence_tensor(sub, axis, options);
    result.windows[w] = rank_entities(tensor, weight);
  });
  return result;
}

double spearman(const std::vector<std::string>& rank_a,
                const std::vector<std::string>& rank_b) {
  const std::size_t n = rank_a.size();
  if (n != rank_b.size())
    throw std::invalid_argument("rank lists differ in length");
  if (n < 2) throw std::invalid_argument("need at least two ranked ids");

  std::map<std::string, std::size_t> pos_b;
  for (std::size_t i = 0; i < n; ++i)
    if (!pos_b.emplace(rank_b[i], i).second)
      throw std::invalid_argument("duplicate id in ranking: " + rank_b[i]);

  double d2 = 0.0;
  std::size_t seen = 0;
  std::map<std::string, bool> seen_a;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen_a.emplace(rank_a[i], true).second)
      throw std::invalid_argument("duplicate id in ranking: " + rank_a[i]);
    const auto it = pos_b.find(rank_a[i]);
    if (it == pos_b.end())
      throw std::invalid_argument("id sets differ: " + rank_a[i]);
    const double d = static_cast<double>(i) - static_cast<double>(it->second);
    d2 += d * d;
    ++seen;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

double correlate_metadata(const InfluenceRanking& ranking,
                          const std::map<std::string, double>& metadata,
                          MetadataMode mode, const InfluenceTensor& tensor,
                          EdgeWeight weight) {
  const std::size_t n = ranking.entries.size();
  if (n < 2) throw std::invalid_argument("need at least two ranked entities");
  std::vector<double> meta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = metadata.find(ranking.entries[i].id);
    if (it == metadata.end())
      throw DataError("metadata missing entry for " + ranking.entries[i].id);
    meta[i] = it->second;
  }

  if (mode == MetadataMode::kWorldRank) {
    std::vector<double> exerted(n);
    for (std::size_t i = 0; i < n; ++i) exerted[i] = ranking.entries[i].exerted;
    const auto rho = pearson(average_ranks(exerted), average_ranks(meta));
    if (!rho.has_value())
      throw NumericError(
          "rank correlation undefined: a ranking has no variance");
    return *rho;
  }

  // Direction: one correlation per entity between its metadata gaps and the
  // influence it exerts on each other entity, averaged where defined.
  const std::size_t m = tensor.entities().size();
  std::vector<double> agg(m * m, 0.0);
  for (const InfluenceEdge& edge : tensor.edges())
    agg[tensor.entity_index(edge.src) * m + tensor.entity_index(edge.dst)] +=
        edge_value(edge, weight);

  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = tensor.entity_index(ranking.entries[i].id);
    std::vector<double> gaps, weights;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::size_t dst = tensor.entity_index(ranking.entries[j].id);
      gaps.push_back(meta[i] - meta[j]);
      weights.push_back(agg[src * m + dst]);
    }
    const auto r = pearson(gaps, weights);
    if (r.has_value()) {
      sum += *r;
      ++defined;
    }
  }
  if (defined == 0)
    throw NumericError(
        "direction correlation undefined: no entity shows variance");
  return sum / static_cast<double>(defined);
}

}  // namespace stylecast
