#include "linalg.hpp"

namespace stylecast::detail {

namespace {

Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            double ridge) {
  Eigen::MatrixXd gram = a.transpose() * a;
  gram.diagonal().array() += ridge;
  return gram.ldlt().solve(a.transpose() * b);
}

}  // namespace

LstsqResult least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          double ridge) {
  LstsqResult out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (a.rows() >= a.cols() && qr.rank() == a.cols()) {
    out.coef = qr.solve(b);
  } else {
    out.coef = ridge_solve(a, b, ridge);
    out.ridge_used = true;
  }
  out.ssr = (b - a * out.coef).squaredNorm();
  return out;
}

LstsqMultiResult least_squares_multi(const Eigen::MatrixXd& a,
                                     const Eigen::MatrixXd& b, double ridge) {
  // Factorize once, solve per column; each column then takes the identical
  // arithmetic path as the single-target overload.
  LstsqMultiResult out;
  out.coef.resize(a.cols(), b.cols());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const bool full_rank = a.rows() >= a.cols() && qr.rank() == a.cols();
  out.ridge_used = !full_rank;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const Eigen::VectorXd rhs = b.col(j);
    if (full_rank) {
      out.coef.col(j) = qr.solve(rhs);
    } else {
      out.coef.col(j) = ridge_solve(a, rhs, ridge);
    }
  }
  return out;
}

}  // namespace stylecast::detail
