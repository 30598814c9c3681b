#pragma once

#include <cstdint>
#include <vector>

#include "stylecast/influence.hpp"
#include "stylecast/types.hpp"

namespace stylecast {

/// One sinusoidal component added to trajectories that have no planted
/// incoming relation (influenced trajectories get their signal through the
/// relation instead, keeping the planted structure identifiable).
struct SeasonalHarmonic {
  double amplitude = 0.0;
  std::size_t period = 52;
};

/// A planted lagged relation. Indices address the generated entity tables:
/// axis kUnit relates units src -> dst within style `context`; axis kStyle
/// relates styles within unit `context`. The relation switches on at step
/// `start` (0 = active from the beginning).
struct PlantedEdge {
  InfluenceAxis axis = InfluenceAxis::kUnit;
  std::size_t src = 0;
  std::size_t dst = 0;
  std::size_t context = 0;
  int lag = 1;
  double coef = 0.5;
  std::size_t start = 0;
};

struct SynthConfig {
  std::size_t units = 4;
  std::size_t styles = 2;
  std::size_t length = 120;  // time steps per trajectory
  std::vector<PlantedEdge> edges;
  double noise_std = 0.05;
  double ar_coef = 0.3;     // self-persistence, |ar_coef| < 1
  double base_level = 0.5;  // stationary mean before rescaling
  std::vector<SeasonalHarmonic> seasonal;
  std::uint64_t seed = 0;
  std::size_t val = 4;   // split stamped on the generated set
  std::size_t test = 26;
  bool rescale = true;  // min-max squash to [0,1] per trajectory
};

/// Generated set plus the planted relations as ground-truth tensors, one
/// per axis.
struct SynthData {
  TrajectorySet set;
  InfluenceTensor unit_truth;
  InfluenceTensor style_truth;
};

/// Builds trajectories y_t = core_t + seasonal_t where
///   core_t = mu + ar * (core_{t-1} - mu)
///                + sum over incoming edges coef * (y_src,t-lag - mu)
///                + noise_std * eps_t
/// with an initialization window of mu + noise while lagged inputs are
/// unavailable. Each trajectory draws from its own name-derived substream,
/// so output is bit-reproducible per seed and independent of generation
/// order. Units are named unit_00.., styles style_00...
SynthData generate(const SynthConfig& config);

/// Agreement between a discovered tensor and the planted truth, counted
/// over nonzero entries. Empty denominators score 1 by convention (an empty
/// found-set has no false positives; an empty truth has nothing to miss).
struct RecoveryScore {
  double precision = 1.0;
  double recall = 1.0;
  double lag_accuracy = 1.0;  // true positives whose lag matches exactly
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

RecoveryScore score_recovery(const InfluenceTensor& found,
                             const InfluenceTensor& truth);

}  // namespace stylecast
