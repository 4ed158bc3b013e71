#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "amblab/errors.hpp"

namespace amblab {

using cplx = std::complex<double>;

/**
 * Uniform, centered sampling lattice shared by signals and their
 * time-frequency representations.
 *
 * Time samples sit at t_k = (k - n/2) dx for k = 0..n-1; the matching
 * frequency samples sit at w_l = (l - n/2) dw with dw = 1/(n dx), so the
 * covered box is [-n dx/2, n dx/2) x [-1/(2 dx), 1/(2 dx)) and one
 * time-frequency cell has area dx dw = 1/n.
 */
struct TimeGrid {
    std::size_t n;
    double dx;

    TimeGrid(std::size_t n_, double dx_) : n(n_), dx(dx_) {
        if (n == 0 || n % 2 != 0)
            throw InvalidArgument("grid size must be even and positive, got " + std::to_string(n));
        if (!(dx > 0.0))
            throw InvalidArgument("grid step must be positive");
    }

    double dw() const { return 1.0 / (static_cast<double>(n) * dx); }
    double cell_area() const { return dx * dw(); }

    /// k-th time sample, k in [0, n).
    double t(std::size_t k) const { return (static_cast<double>(k) - static_cast<double>(n) / 2.0) * dx; }
    /// l-th frequency sample, l in [0, n).
    double w(std::size_t l) const { return (static_cast<double>(l) - static_cast<double>(n) / 2.0) * dw(); }

    double time_half_width() const { return 0.5 * static_cast<double>(n) * dx; }
    double freq_half_width() const { return 0.5 / dx; }

    bool operator==(const TimeGrid& o) const { return n == o.n && dx == o.dx; }
    bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

/// Point of the time-frequency plane.
struct PhasePoint {
    double x = 0.0;
    double w = 0.0;
};

/// Complex samples on a TimeGrid.
struct Signal {
    TimeGrid grid;
    std::vector<cplx> samples;

    explicit Signal(const TimeGrid& g) : grid(g), samples(g.n, cplx{0.0, 0.0}) {}
    Signal(const TimeGrid& g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
        if (samples.size() != grid.n)
            throw InvalidArgument("sample count does not match grid size");
    }

    std::size_t size() const { return grid.n; }
};

/// Squared L2 norm, left-to-right accumulation so results are reproducible.
double l2_norm_sq(const Signal& f);
double l2_norm(const Signal& f);

/// f scaled to unit L2 norm. Throws ZeroSignal when the norm vanishes.
Signal normalized(const Signal& f);

/**
 * n x n complex array over the time-frequency lattice. Entry (k, l) is the
 * value at (x_k, w_l) = (grid.t(k), grid.w(l)); storage is row-major with the
 * time shift index k as the row.
 */
struct TFArray {
    TimeGrid grid;
    std::vector<cplx> values;

    explicit TFArray(const TimeGrid& g) : grid(g), values(g.n * g.n, cplx{0.0, 0.0}) {}

    cplx& at(std::size_t k, std::size_t l) { return values[k * grid.n + l]; }
    const cplx& at(std::size_t k, std::size_t l) const { return values[k * grid.n + l]; }
    std::size_t rows() const { return grid.n; }
};

/// Squared L2(dx dw) norm over the whole array, fixed summation order.
double tf_norm_sq(const TFArray& a);

/// Fraction of the total |a|^2 mass carried by the outer `frac` frame of cells.
double tf_edge_mass_ratio(const TFArray& a, double frac = 0.1);

/// Largest |a| over the outer `frac` frame of cells.
double tf_frame_max_abs(const TFArray& a, double frac = 0.1);

/// Fraction of the total |f|^2 mass in the outer `frac` of time samples.
double signal_edge_mass_ratio(const Signal& f, double frac = 0.1);

} // namespace amblab
