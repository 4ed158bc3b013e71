#include "amblab/synth.hpp"

#include <cmath>

#include "amblab/rng.hpp"

namespace amblab {

Signal gaussian_signal(const TimeGrid& grid, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("gaussian width must be positive");
    Signal f(grid);
    const double amp = std::pow(2.0, 0.25) / std::sqrt(lambda);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double t = grid.t(k) / lambda;
        f.samples[k] = cplx{amp * std::exp(-M_PI * t * t), 0.0};
    }
    return f;
}

Signal interval_indicator(const TimeGrid& grid, double a, double b) {
    if (!(a < b)) throw InvalidArgument("interval must satisfy a < b");
    Signal f(grid);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double t = grid.t(k);
        if (t > a && t < b) f.samples[k] = cplx{1.0, 0.0};
    }
    return f;
}

Signal random_signal(const TimeGrid& grid, std::uint64_t seed) {
    NoiseGen gen(seed);
    Signal f(grid);
    for (std::size_t k = 0; k < grid.n; ++k) f.samples[k] = gen.cnormal();
    return normalized(f);
}

} // namespace amblab
