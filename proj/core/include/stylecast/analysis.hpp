#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stylecast/influence.hpp"
#include "stylecast/types.hpp"

namespace stylecast {

/// How much a discovered relation counts in rankings: by its lag (longer
/// look-ahead weighs more) or by its mean-squared-error improvement.
enum class EdgeWeight { kLag, kDeltaMse };

struct EntityScore {
  std::string id;
  double exerted = 0.0;
  double received = 0.0;
  double net = 0.0;

  bool operator==(const EntityScore&) const = default;
};

/// Entities ordered by net influence (exerted minus received), descending;
/// ties broken lexicographically. Total exerted equals total received.
struct InfluenceRanking {
  std::vector<EntityScore> entries;

  std::vector<std::string> ordered_ids() const;
  const EntityScore& find(const std::string& id) const;
};

InfluenceRanking rank_entities(const InfluenceTensor& tensor,
                               EdgeWeight weight = EdgeWeight::kLag);

enum class GraphThreshold { kAboveMean, kRaw };

/// Renders the tensor as DOT text. Arc weight = sum of lags over contexts
/// for the (src, dst) pair; kAboveMean drops arcs whose weight is not
/// strictly above the mean arc weight. Nodes are the endpoints of retained
/// arcs; node and arc order follow the tensor's entity order.
std::string export_graph(const InfluenceTensor& tensor,
                         GraphThreshold threshold = GraphThreshold::kAboveMean);

/// Per-window influence rankings over a sliding window. Windows slide over
/// the region the global tensor would use (train + validation when a split
/// is stamped, the whole range otherwise); each window is re-tested from
/// scratch. A window covering that whole region reproduces the global
/// ranking.
struct DynamicsResult {
  std::vector<std::size_t> window_starts;
  std::vector<InfluenceRanking> windows;
  std::vector<std::string> entities;  // tensor entity order

  /// Exerted score of `id` in each window, in window order.
  std::vector<double> exerted_series(const std::string& id) const;
};

DynamicsResult influence_dynamics(const TrajectorySet& ts, std::size_t window,
                                  std::size_t stride,
                                  InfluenceAxis axis = InfluenceAxis::kUnit,
                                  const GrangerOptions& options = {},
                                  EdgeWeight weight = EdgeWeight::kLag,
                                  int jobs = 1);

/// Rank correlation of two orderings of the same id set, by the
/// sum-of-squared-rank-differences formula. Both lists must hold the same
/// ids, each exactly once.
double spearman(const std::vector<std::string>& rank_a,
                const std::vector<std::string>& rank_b);

enum class MetadataMode { kWorldRank, kDirection };

/// kWorldRank: rank correlation (average ranks on ties) between exerted
/// influence scores and a per-entity metadata value. kDirection: for each
/// entity, correlate its metadata gap to every other entity with the
/// influence weight it exerts on that entity, then average the per-entity
/// correlations. Degenerate inputs (no variance anywhere) raise an error.
double correlate_metadata(const InfluenceRanking& ranking,
                          const std::map<std::string, double>& metadata,
                          MetadataMode mode, const InfluenceTensor& tensor,
                          EdgeWeight weight = EdgeWeight::kLag);

}  // namespace stylecast
