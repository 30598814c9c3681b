#pragma once

#include <span>

namespace stylecast {

/// Mean absolute error between forecasts and ground truth.
/// Throws std::invalid_argument on length mismatch or empty input and
/// NumericError on non-finite values.
double mae(std::span<const double> forecast, std::span<const double> truth);

/// Mean absolute percentage error, in percent. Entries whose true value has
/// magnitude below `zero_tol` are excluded from the average; if every entry
/// is excluded the metric is undefined and NumericError is thrown.
double mape(std::span<const double> forecast, std::span<const double> truth,
            double zero_tol = 1e-6);

}  // namespace stylecast
