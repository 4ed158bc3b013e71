#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "amblab/grid.hpp"

namespace amblab {

/**
 * Deterministic complex Gaussian noise source. mt19937_64 output is fixed by
 * the standard and the Box-Muller step below avoids the library-specific
 * normal_distribution, so a seed pins the stream bit-for-bit.
 */
class NoiseGen {
  public:
    explicit NoiseGen(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on (0, 1), 53-bit resolution, never exactly 0.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard real normal via Box-Muller.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Complex circular normal with E|z|^2 = 1.
    cplx cnormal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace amblab
