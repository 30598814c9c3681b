#pragma once

#include <Eigen/Dense>

namespace stylecast::detail {

struct LstsqResult {
  Eigen::VectorXd coef;
  double ssr = 0.0;
  bool ridge_used = false;
};

struct LstsqMultiResult {
  Eigen::MatrixXd coef;  // one column of coefficients per right-hand side
  bool ridge_used = false;
};

/// Ordinary least squares via column-pivoted QR. A rank-deficient (or
/// under-determined) system falls back to ridge-regularized normal equations
/// with the given penalty and reports it.
LstsqResult least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          double ridge = 1e-8);

LstsqMultiResult least_squares_multi(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b,
                                     double ridge = 1e-8);

}  // namespace stylecast::detail
