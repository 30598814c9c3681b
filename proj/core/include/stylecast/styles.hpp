#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylecast/types.hpp"

namespace stylecast {

enum class StyleModelKind { kGmm, kNmf };

/// A fitted style vocabulary: K latent styles over M attributes. Posteriors
/// always form a simplex, whichever backend produced the model.
///
/// GMM models hold mixture weights plus diagonal Gaussians; posteriors are
/// component responsibilities. NMF models hold a non-negative factor matrix;
/// posteriors are simplex-normalized non-negative least-squares loadings
/// against the factor rows.
struct StyleModel {
  StyleModelKind kind = StyleModelKind::kGmm;
  std::size_t k = 0;
  std::size_t m = 0;

  // GMM parameters (k components over m dimensions).
  std::vector<double> weights;
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> variances;

  // NMF parameters: factor rows (k x m) and their L1 masses at fit time.
  std::vector<std::vector<double>> factors;
  std::vector<double> row_sums;

  // Fit diagnostics; not serialized.
  std::vector<double> fit_trace;        // log-likelihood or reconstruction error
  std::vector<std::string> warnings;

  /// Posterior style distribution for one attribute vector. Length k,
  /// non-negative, sums to 1. Throws std::invalid_argument on a dimension
  /// mismatch.
  std::vector<double> posterior(const AttributeVector& attrs) const;
};

/// Fits a K-component diagonal-covariance Gaussian mixture by EM.
///
/// Initialization is k-means++ seeding on a deterministic subsample; every
/// EM iteration is guaranteed non-decreasing in log-likelihood (tracked in
/// fit_trace). Variances are floored at 1e-6; hitting the floor on
/// degenerate data records a warning instead of failing. Stops on relative
/// log-likelihood improvement below 1e-6 or after 500 iterations.
/// Requires at least 10*K samples.
StyleModel fit_gmm(const std::vector<AttributeVector>& data, std::size_t k,
                   std::uint64_t seed);

/// Fits a rank-K non-negative factorization by multiplicative updates.
///
/// Requires non-negative data and 1 <= K <= M. The squared reconstruction
/// error (tracked in fit_trace) is non-increasing across updates. Stops on
/// relative improvement below 1e-6 or after 500 iterations.
StyleModel fit_nmf(const std::vector<AttributeVector>& data, std::size_t k,
                   std::uint64_t seed);

/// Free-function form of StyleModel::posterior.
std::vector<double> style_posterior(const StyleModel& model,
                                    const AttributeVector& attrs);

}  // namespace stylecast
