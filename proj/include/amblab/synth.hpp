#pragma once

#include <cstdint>

#include "amblab/grid.hpp"

namespace amblab {

/**
 * Dilated unit-energy Gaussian g_lambda(t) = lambda^{-1/2} 2^{1/4}
 * exp(-pi t^2 / lambda^2). lambda = 1 gives the standard window whose
 * time-frequency spread is symmetric on a square grid.
 */
Signal gaussian_signal(const TimeGrid& grid, double lambda = 1.0);

/// Indicator of the open interval (a, b) sampled at cell centers, not normalized.
Signal interval_indicator(const TimeGrid& grid, double a, double b);

/// Unit-norm complex white noise drawn from the seeded generator.
Signal random_signal(const TimeGrid& grid, std::uint64_t seed);

} // namespace amblab
