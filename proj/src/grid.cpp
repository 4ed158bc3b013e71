#include "amblab/grid.hpp"

#include <cmath>

namespace amblab {

double l2_norm_sq(const Signal& f) {
    double acc = 0.0;
    for (const cplx& v : f.samples) acc += std::norm(v);
    return acc * f.grid.dx;
}

double l2_norm(const Signal& f) { return std::sqrt(l2_norm_sq(f)); }

Signal normalized(const Signal& f) {
    const double nrm = l2_norm(f);
    if (!(nrm > 0.0)) throw ZeroSignal("cannot normalize a zero signal");
    Signal out = f;
    const double s = 1.0 / nrm;
    for (cplx& v : out.samples) v *= s;
    return out;
}

double tf_norm_sq(const TFArray& a) {
    double acc = 0.0;
    for (const cplx& v : a.values) acc += std::norm(v);
    return acc * a.grid.cell_area();
}

namespace {

// Number of cells forming the frame band on each side.
std::size_t frame_band(std::size_t n, double frac) {
    auto b = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
    if (b < 1) b = 1;
    if (2 * b > n) b = n / 2;
    return b;
}

} // namespace

double tf_edge_mass_ratio(const TFArray& a, double frac) {
    const std::size_t n = a.grid.n;
    const std::size_t b = frame_band(n, frac);
    double edge = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const double m = std::norm(a.at(k, l));
            total += m;
            const bool on_edge = k < b || k >= n - b || l < b || l >= n - b;
            if (on_edge) edge += m;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

double tf_frame_max_abs(const TFArray& a, double frac) {
    const std::size_t n = a.grid.n;
    const std::size_t b = frame_band(n, frac);
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const bool on_edge = k < b || k >= n - b || l < b || l >= n - b;
            if (on_edge) peak = std::max(peak, std::abs(a.at(k, l)));
        }
    }
    return peak;
}

double signal_edge_mass_ratio(const Signal& f, double frac) {
    const std::size_t n = f.grid.n;
    auto b = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
    if (b < 1) b = 1;
    if (2 * b > n) b = n / 2;
    double edge = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double m = std::norm(f.samples[k]);
        total += m;
        if (k < b || k >= n - b) edge += m;
    }
    return total > 0.0 ? edge / total : 0.0;
}

} // namespace amblab
