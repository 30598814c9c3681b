#include "stylecast/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "stylecast/errors.hpp"

namespace stylecast {

namespace {

void check_pair(std::span<const double> forecast, std::span<const double> truth) {
  if (forecast.size() != truth.size())
    throw std::invalid_argument("metric inputs differ in length");
  if (forecast.empty()) throw std::invalid_argument("metric inputs are empty");
  for (std::size_t i = 0; i < forecast.size(); ++i) {
    if (!std::isfinite(forecast[i]) || !std::isfinite(truth[i]))
      throw NumericError("metric input contains a non-finite value");
  }
}

}  // namespace

double mae(std::span<const double> forecast, std::span<const double> truth) {
  check_pair(forecast, truth);
  double acc = 0.0;
  for (std::size_t i = 0; i < forecast.size(); ++i)
    acc += std::abs(forecast[i] - truth[i]);
  return acc / static_cast<double>(forecast.size());
}

double mape(std::span<const double> forecast, std::span<const double> truth,
            double zero_tol) {
  check_pair(forecast, truth);
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < forecast.size(); ++i) {
    if (std::abs(truth[i]) < zero_tol) continue;
    acc += std::abs((forecast[i] - truth[i]) / truth[i]);
    ++used;
  }
  if (used == 0)
    throw NumericError("mape undefined: every true value is below zero_tol");
  return 100.0 * acc / static_cast<double>(used);
}

}  // namespace stylecast
