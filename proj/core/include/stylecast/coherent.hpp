#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stylecast/forecast.hpp"
#include "stylecast/influence.hpp"
#include "stylecast/types.hpp"

namespace stylecast {

/// Hyperparameters for the influence-aware neural forecaster.
struct TrainConfig {
  int own_lags = 8;        // autoregressive input width
  int hidden = 16;         // sigmoid hidden layer width
  double learn_rate = 1e-2;
  double l2 = 1e-8;        // weight decay on connection weights (not biases)
  double lambda = 1.0;     // coherence penalty weight
  int patience = 50;       // epochs without validation improvement
  int max_epochs = 2000;
  double alpha_step = 0.05;  // grid resolution for combining two banks
  std::uint64_t seed = 0;
  bool zero_hidden_init = false;  // start the hidden layer at exactly zero
  int jobs = 1;                   // styles train independently in parallel
};

/// One extra network input: the value of trajectory `src` (flat index)
/// observed `lag` steps before the prediction target.
struct NetInput {
  std::size_t src = 0;
  int lag = 1;
};

/// A two-layer perceptron bound to one trajectory. Parameter layout is
/// [w1 (hidden x in, row-major), b1 (hidden), w2 (hidden), b2], where
/// in = own_lags + inputs.size().
struct TrajectoryNet {
  std::size_t target = 0;
  std::vector<NetInput> inputs;
  std::vector<double> params;
  double best_val_mae = std::numeric_limits<double>::infinity();
  int epochs = 0;  // update steps taken before freezing

  std::size_t input_dim(int own_lags) const {
    return static_cast<std::size_t>(own_lags) + inputs.size();
  }
};

/// A trained bank: one network per trajectory, grouped by style. Networks
/// of one style share a coherence penalty that pulls the per-step mean of
/// their predictions toward the per-step mean of the observed values.
struct CoherentBank {
  TrainConfig config;
  std::vector<double> mean;    // per-trajectory standardization stats,
  std::vector<double> stddev;  // computed on the train region only
  std::vector<TrajectoryNet> nets;                // flat trajectory order
  std::vector<std::vector<std::size_t>> groups;   // per style: net indices
  std::vector<int> group_floor;    // earliest usable time row per group
  std::vector<std::vector<double>> group_loss_trace;  // loss at epoch start
  bool trained = false;
};

/// Trains one network per trajectory on one-step-ahead prediction over the
/// train region. `influence` supplies extra inputs (the influencer's value
/// at its discovered lag); pass nullptr for a pure autoregressive bank.
/// Full-batch adaptive gradient steps; each network early-stops on its own
/// one-step validation MAE and keeps its best parameters, but keeps feeding
/// predictions into its style's coherence term while others train on.
/// A group whose loss turns non-finite is reinitialized once, then fails.
/// Deterministic for a given seed, independent of `jobs`.
CoherentBank train_coherent(const TrajectorySet& ts,
                            const InfluenceTensor* influence,
                            const TrainConfig& config = {});

/// Multi-step forecast from the end of the validation region. All
/// trajectories advance in lockstep so influencer lags read forecasted
/// values once they pass the observed boundary.
std::vector<std::vector<double>> forecast_coherent(const CoherentBank& bank,
                                                   const TrajectorySet& ts,
                                                   std::size_t horizon);

/// One-step-ahead predictions over the validation region, one row per
/// trajectory, using observed history only.
std::vector<std::vector<double>> validation_one_step(const CoherentBank& bank,
                                                     const TrajectorySet& ts);

/// Mixture of a style-influence bank and a unit-influence bank:
/// alpha * style + (1 - alpha) * unit, applied pointwise.
struct CombinedForecaster {
  CoherentBank style_bank;
  CoherentBank unit_bank;
  double alpha = 0.5;
};

/// Picks alpha from the grid {0, step, ..., 1} minimizing one-step
/// validation MAE of the mixture; ties keep the smaller alpha.
CombinedForecaster select_alpha(CoherentBank style_bank,
                                CoherentBank unit_bank,
                                const TrajectorySet& ts);

std::vector<std::vector<double>> forecast_combined(
    const CombinedForecaster& model, const TrajectorySet& ts,
    std::size_t horizon);

/// Flat view of one style group's parameters (members concatenated in group
/// order), and the training loss/gradient of that group at the bank's
/// current parameters. The loss is the same quantity the trainer descends:
/// squared error + lambda * squared per-step mean gap + l2 * weight norms.
/// These exist so the analytic gradient can be checked against finite
/// differences through the public interface.
std::vector<double> group_parameters(const CoherentBank& bank,
                                     std::size_t group);
void set_group_parameters(CoherentBank& bank, std::size_t group,
                          std::span<const double> params);
double group_training_loss(const CoherentBank& bank, const TrajectorySet& ts,
                           std::size_t group);
std::vector<double> group_training_gradient(const CoherentBank& bank,
                                            const TrajectorySet& ts,
                                            std::size_t group);

/// Adapters for the evaluation harness. The bank/model is copied into the
/// spec, so the originals need not outlive it.
ModelSpec coherent_model_spec(std::string name, CoherentBank bank);
ModelSpec combined_model_spec(std::string name, CombinedForecaster model);

}  // namespace stylecast
