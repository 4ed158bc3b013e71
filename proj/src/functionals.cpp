#include "amblab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "amblab/fft.hpp"
#include "amblab/transforms.hpp"

namespace amblab {

namespace {

void require_grid(const TimeGrid& a, const TimeGrid& b) {
    if (a != b) throw GridMismatch("operands live on different grids");
}

long long imod(long long v, long long n) {
    long long r = v % n;
    return r < 0 ? r + n : r;
}

// sum_{mask} |a|^p cell_area in fixed row-major order; any p > 0.
double masked_power_sum(const TFArray& a, const DomainMask& mask, double p) {
    double acc = 0.0;
    const std::size_t n = a.grid.n;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (!mask.at(k, l)) continue;
            acc += std::pow(std::abs(a.at(k, l)), p);
        }
    }
    return acc * a.grid.cell_area();
}

double l2_norm_sq_checked(const Signal& f) {
    const double n2 = l2_norm_sq(f);
    if (!(n2 > 0.0)) throw ZeroSignal("objective of a zero signal is undefined");
    return n2;
}

} // namespace

double lp_on_domain(const TFArray& a, const DomainMask& mask, double p) {
    require_grid(a.grid, mask.grid);
    if (!(p >= 1.0)) throw InvalidArgument("lp_on_domain needs p >= 1");
    return std::pow(masked_power_sum(a, mask, p), 1.0 / p);
}

double linf_on_domain(const TFArray& a, const DomainMask& mask) {
    require_grid(a.grid, mask.grid);
    double peak = 0.0;
    const std::size_t n = a.grid.n;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (mask.at(k, l)) peak = std::max(peak, std::abs(a.at(k, l)));
    return peak;
}

double objective_ambiguity(const Signal& f, const DomainMask& mask, double p) {
    const double n2 = l2_norm_sq_checked(f);
    const TFArray V = stft(f, f);
    return lp_on_domain(V, mask, p) / n2;
}

Signal gradient_ambiguity(const Signal& f, const DomainMask& mask, double p, double* objective,
                          double eps) {
    require_grid(f.grid, mask.grid);
    if (!(p >= 1.0)) throw InvalidArgument("gradient needs p >= 1");
    const double n2 = l2_norm_sq_checked(f);
    const std::size_t n = f.grid.n;
    const auto ns = static_cast<long long>(n);

    const TFArray V = stft(f, f); // G(z) = <f, pi(z) f>, |G| = |A(f)|

    const double phi = masked_power_sum(V, mask, p);
    const double lp = std::pow(phi, 1.0 / p);
    const double J = lp / n2;
    if (objective) *objective = J;
    if (!std::isfinite(J)) throw NonFiniteObjective("objective is not finite");

    Signal grad(f.grid);
    if (!(phi > 0.0)) return grad; // flat zero region; no ascent direction

    // H = chi_mask |G|^{p-2} G, smoothed below p = 2 where |G|^{p-2} blows up.
    std::vector<cplx> H(n * n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (!mask.at(k, l)) continue;
            const cplx g = V.at(k, l);
            const double m2 = std::norm(g);
            double wgt;
            if (p >= 2.0) {
                wgt = m2 > 0.0 ? std::pow(m2, 0.5 * p - 1.0) : 0.0;
            } else {
                wgt = std::pow(m2 + eps * eps, 0.5 * p - 1.0);
            }
            H[k * n + l] = wgt * g;
        }
    }

    // B[k][m] = sum_l H[k,l] exp(2 pi i t_m w_l)
    std::vector<cplx> B(n * n);
    for (std::size_t k = 0; k < n; ++k) fft::centered_idft(&H[k * n], &B[k * n], n);

    // dPhi = p/2 * sum_mask |G|^{p-2} (G pi(z) f + conj(G) pi(z)^* f) dx dw,
    // assembled from B: the pi term contracts like an stft adjoint with
    // window f, the pi^* term folds the time index forward.
    const double area = f.grid.cell_area();
    std::vector<cplx> dphi(n);
    for (long long j = 0; j < ns; ++j) {
        cplx acc1{0.0, 0.0};
        cplx acc2{0.0, 0.0};
        for (long long k = 0; k < ns; ++k) {
            const auto i1 = static_cast<std::size_t>(imod(j - k + ns / 2, ns));
            acc1 += f.samples[i1] * B[static_cast<std::size_t>(k) * n + static_cast<std::size_t>(j)];
            const auto m = static_cast<std::size_t>(imod(j + k - ns / 2, ns));
            acc2 += f.samples[m] * std::conj(B[static_cast<std::size_t>(k) * n + m]);
        }
        dphi[static_cast<std::size_t>(j)] = (0.5 * p) * area * (acc1 + acc2);
    }

    // J = phi^{1/p} / ||f||^2; chain and quotient rules.
    const double c1 = (1.0 / p) * std::pow(phi, 1.0 / p - 1.0) / n2;
    const double c2 = lp / (n2 * n2);
    for (std::size_t j = 0; j < n; ++j) grad.samples[j] = c1 * dphi[j] - c2 * f.samples[j];
    for (const cplx& v : grad.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteObjective("gradient is not finite");
    return grad;
}

double objective_linf(const Signal& f, const DomainMask& mask) {
    require_grid(f.grid, mask.grid);
    const double n2 = l2_norm_sq_checked(f);
    const std::size_t n = f.grid.n;

    // Only rows the mask touches are transformed; computed cells agree with
    // the full-array path exactly.
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint8_t* row_mask = &mask.cells[k * n];
        bool any = false;
        for (std::size_t l = 0; l < n; ++l)
            if (row_mask[l]) { any = true; break; }
        if (!any) continue;
        const std::vector<cplx> row = stft_row(f, f, k);
        for (std::size_t l = 0; l < n; ++l)
            if (row_mask[l]) best = std::max(best, std::abs(row[l]));
    }
    return best / n2;
}

double objective_timecorr(const Signal& f, const Mask1D& mask, double p) {
    require_grid(f.grid, mask.grid);
    if (!(p >= 1.0)) throw InvalidArgument("objective_timecorr needs p >= 1");
    const double n2 = l2_norm_sq_checked(f);
    const std::vector<cplx> corr = autocorrelation(f);
    double acc = 0.0;
    for (std::size_t k = 0; k < mask.grid.n; ++k) {
        if (!mask.cells[k]) continue;
        acc += std::pow(std::abs(corr[k]), p);
    }
    acc *= f.grid.dx;
    return std::pow(acc, 1.0 / p) / n2;
}

double objective_fixed_window(const Signal& f, const Signal& g, const DomainMask& mask, double p) {
    require_grid(f.grid, g.grid);
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("fixed window must be nonzero");
    const double nf = std::sqrt(l2_norm_sq_checked(f));
    const TFArray V = stft(f, g);
    return lp_on_domain(V, mask, p) / nf;
}

double mq_norm_continuous(const Signal& f, const Signal& g, double q) {
    require_grid(f.grid, g.grid);
    if (!(q > 0.0)) throw InvalidArgument("modulation norm needs q > 0");
    const TFArray V = stft(f, g);
    if (std::isinf(q)) {
        double peak = 0.0;
        for (const cplx& v : V.values) peak = std::max(peak, std::abs(v));
        return peak;
    }
    double acc = 0.0;
    for (const cplx& v : V.values) acc += std::pow(std::abs(v), q);
    return std::pow(acc * V.grid.cell_area(), 1.0 / q);
}

GaborLattice default_gabor_lattice(const TimeGrid& grid) {
    const double target = 1.0 / std::sqrt(2.0);
    const double a = std::max(1.0, std::round(target / grid.dx)) * grid.dx;
    const double b = std::max(1.0, std::round(target / grid.dw())) * grid.dw();
    const double rx = (grid.time_half_width() - grid.dx) / a;
    const double rw = (grid.freq_half_width() - grid.dw()) / b;
    const int radius = static_cast<int>(std::floor(std::min(rx, rw)));
    return {a, b, std::max(radius, 1)};
}

std::vector<cplx> gabor_coefficients(const Signal& f, const Signal& g, const GaborLattice& lat) {
    require_grid(f.grid, g.grid);
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("lattice window must be nonzero");
    if (lat.radius < 1) throw InvalidArgument("lattice radius must be at least 1");

    const double ia = lat.a / f.grid.dx;
    const double ib = lat.b / f.grid.dw();
    if (std::abs(ia - std::round(ia)) > 1e-9 || std::abs(ib - std::round(ib)) > 1e-9)
        throw LatticeIncommensurate("lattice constants must be integer multiples of the grid steps");
    const auto sa = static_cast<long long>(std::llround(ia));
    const auto sb = static_cast<long long>(std::llround(ib));
    const auto n = static_cast<long long>(f.grid.n);
    if (sa < 1 || sb < 1) throw InvalidArgument("lattice constants must be positive");
    if (lat.radius * sa >= n / 2 || lat.radius * sb >= n / 2)
        throw DomainOutsideGrid("lattice exceeds the covered box");

    const TFArray V = stft(f, g);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>((2 * lat.radius + 1) * (2 * lat.radius + 1)));
    for (long long i = -lat.radius; i <= lat.radius; ++i) {
        for (long long j = -lat.radius; j <= lat.radius; ++j) {
            const auto k = static_cast<std::size_t>(n / 2 + i * sa);
            const auto l = static_cast<std::size_t>(n / 2 + j * sb);
            out.push_back(V.at(k, l));
        }
    }
    return out;
}

double gabor_norm(const Signal& f, const Signal& g, const GaborLattice& lat, double q,
                  bool enforce_leakage, double leak_tol) {
    if (!(q > 0.0)) throw InvalidArgument("lattice quasi-norm needs q > 0");
    const std::vector<cplx> c = gabor_coefficients(f, g, lat);
    const std::size_t side = static_cast<std::size_t>(2 * lat.radius + 1);

    if (enforce_leakage) {
        double total = 0.0, ring = 0.0;
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                const double m = std::norm(c[i * side + j]);
                total += m;
                if (i == 0 || j == 0 || i == side - 1 || j == side - 1) ring += m;
            }
        }
        if (total > 0.0 && ring > leak_tol * total)
            throw TruncationLeakage("outer lattice ring carries " + std::to_string(ring / total) +
                                    " of the coefficient mass");
    }

    if (std::isinf(q)) {
        double peak = 0.0;
        for (const cplx& v : c) peak = std::max(peak, std::abs(v));
        return peak;
    }
    double acc = 0.0;
    for (const cplx& v : c) acc += std::pow(std::abs(v), q);
    return std::pow(acc, 1.0 / q); // single exponentiation keeps q < 1 stable
}

double objective_mq(const Signal& f, const DomainMask& mask, double p, double q, const Signal& g) {
    l2_norm_sq_checked(f);
    const TFArray V = stft(f, f);
    const double num = lp_on_domain(V, mask, p);
    double den;
    if (q >= 1.0) {
        den = mq_norm_continuous(f, g, q);
    } else {
        den = gabor_norm(f, g, default_gabor_lattice(f.grid), q);
    }
    if (!(den > 0.0)) throw ZeroSignal("modulation norm vanishes");
    return num / (den * den);
}

double amalgam_norm(const TFArray& a, double window_radius) {
    if (!(window_radius > 0.0)) throw InvalidArgument("window radius must be positive");
    const std::size_t n = a.grid.n;
    const auto rx = static_cast<long long>(std::floor(window_radius / a.grid.dx + 1e-12));
    const auto rw = static_cast<long long>(std::floor(window_radius / a.grid.dw() + 1e-12));

    // Prefix sums of |a|^2 for O(1) rectangle mass queries.
    std::vector<double> ps((n + 1) * (n + 1), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double row = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            row += std::norm(a.at(k, l));
            ps[(k + 1) * (n + 1) + (l + 1)] = ps[k * (n + 1) + (l + 1)] + row;
        }
    }
    auto rect = [&](long long k0, long long k1, long long l0, long long l1) {
        k0 = std::max<long long>(k0, 0);
        l0 = std::max<long long>(l0, 0);
        k1 = std::min<long long>(k1, static_cast<long long>(n) - 1);
        l1 = std::min<long long>(l1, static_cast<long long>(n) - 1);
        if (k0 > k1 || l0 > l1) return 0.0;
        const auto uk0 = static_cast<std::size_t>(k0), uk1 = static_cast<std::size_t>(k1);
        const auto ul0 = static_cast<std::size_t>(l0), ul1 = static_cast<std::size_t>(l1);
        return ps[(uk1 + 1) * (n + 1) + (ul1 + 1)] - ps[uk0 * (n + 1) + (ul1 + 1)] -
               ps[(uk1 + 1) * (n + 1) + ul0] + ps[uk0 * (n + 1) + ul0];
    };

    double best = 0.0;
    for (long long k = 0; k < static_cast<long long>(n); ++k)
        for (long long l = 0; l < static_cast<long long>(n); ++l)
            best = std::max(best, rect(k - rx, k + rx, l - rw, l + rw));
    return std::sqrt(best * a.grid.cell_area());
}

} // namespace amblab
