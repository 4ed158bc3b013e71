#include "amblab/transforms.hpp"

#include <cmath>

#include "amblab/fft.hpp"

namespace amblab {

namespace {

long long imod(long long v, long long n) {
    long long r = v % n;
    return r < 0 ? r + n : r;
}

// exp(2 pi i q / n) with exact integer phase reduction.
cplx unit_phase(long long q, long long n) {
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(imod(q, n)) / static_cast<double>(n));
}

void require_same_grid(const Signal& a, const Signal& b) {
    if (a.grid != b.grid) throw GridMismatch("operands live on different grids");
}

} // namespace

Signal fourier(const Signal& f) {
    const std::size_t n = f.grid.n;
    Signal out(f.grid);
    fft::centered_dft(f.samples.data(), out.samples.data(), n);
    const double w = f.grid.dx;
    for (cplx& v : out.samples) v *= w;
    return out;
}

Signal fourier_inverse(const Signal& f) {
    const std::size_t n = f.grid.n;
    Signal out(f.grid);
    fft::centered_idft(f.samples.data(), out.samples.data(), n);
    const double w = f.grid.dw();
    for (cplx& v : out.samples) v *= w;
    return out;
}

bool is_on_grid(const TimeGrid& grid, const PhasePoint& z, double tol) {
    const double jx = z.x / grid.dx;
    const double jw = z.w / grid.dw();
    return std::abs(jx - std::round(jx)) <= tol && std::abs(jw - std::round(jw)) <= tol;
}

PhasePoint snap_to_grid(const TimeGrid& grid, const PhasePoint& z) {
    return {std::round(z.x / grid.dx) * grid.dx, std::round(z.w / grid.dw()) * grid.dw()};
}

Signal timefreq_shift(const Signal& f, const PhasePoint& z, double tol) {
    const auto n = static_cast<long long>(f.grid.n);
    const double jx = z.x / f.grid.dx;
    const double jw = z.w / f.grid.dw();
    if (std::abs(jx - std::round(jx)) > tol || std::abs(jw - std::round(jw)) > tol)
        throw OffGridShift("shift (" + std::to_string(z.x) + ", " + std::to_string(z.w) +
                           ") is not on the sample lattice");
    const auto j = static_cast<long long>(std::llround(jx));
    const auto m = static_cast<long long>(std::llround(jw));

    Signal out(f.grid);
    for (long long k = 0; k < n; ++k) {
        const cplx v = f.samples[static_cast<std::size_t>(imod(k - j, n))];
        out.samples[static_cast<std::size_t>(k)] = unit_phase((k - n / 2) * m, n) * v;
    }
    return out;
}

namespace {

// Row k of the transform: multiply f against the translated window, one
// centered transform, scale by dx. Both full and single-row entry points
// funnel through here so their values agree exactly.
void stft_row_into(const Signal& f, const Signal& g, long long k, cplx* out) {
    const auto n = static_cast<long long>(f.grid.n);
    std::vector<cplx> prod(f.grid.n);
    const long long shift = k - n / 2;
    for (long long j = 0; j < n; ++j) {
        const cplx gv = g.samples[static_cast<std::size_t>(imod(j - shift, n))];
        prod[static_cast<std::size_t>(j)] = f.samples[static_cast<std::size_t>(j)] * std::conj(gv);
    }
    fft::centered_dft(prod.data(), out, f.grid.n);
    for (long long l = 0; l < n; ++l) out[static_cast<std::size_t>(l)] *= f.grid.dx;
}

} // namespace

TFArray stft(const Signal& f, const Signal& g) {
    require_same_grid(f, g);
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("stft window has zero norm");

    TFArray out(f.grid);
    for (std::size_t k = 0; k < f.grid.n; ++k)
        stft_row_into(f, g, static_cast<long long>(k), &out.values[k * f.grid.n]);
    return out;
}

std::vector<cplx> stft_row(const Signal& f, const Signal& g, std::size_t k) {
    require_same_grid(f, g);
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("stft window has zero norm");
    if (k >= f.grid.n) throw InvalidArgument("stft_row index out of range");

    std::vector<cplx> row(f.grid.n);
    stft_row_into(f, g, static_cast<long long>(k), row.data());
    return row;
}

Signal stft_adjoint(const TFArray& F, const Signal& g) {
    if (F.grid != g.grid) throw GridMismatch("array and window live on different grids");
    const auto n = static_cast<long long>(F.grid.n);
    const auto un = F.grid.n;

    // B[k][j] = sum_l F[k,l] exp(2 pi i t_j w_l), one inverse transform per row.
    std::vector<cplx> B(un * un);
    for (std::size_t k = 0; k < un; ++k)
        fft::centered_idft(&F.values[k * un], &B[k * un], un);

    Signal out(g.grid);
    const double scale = F.grid.dx * F.grid.dw();
    for (long long j = 0; j < n; ++j) {
        cplx acc{0.0, 0.0};
        for (long long k = 0; k < n; ++k) {
            const cplx gv = g.samples[static_cast<std::size_t>(imod(j - k + n / 2, n))];
            acc += gv * B[static_cast<std::size_t>(k) * un + static_cast<std::size_t>(j)];
        }
        out.samples[static_cast<std::size_t>(j)] = scale * acc;
    }
    return out;
}

TFArray cross_ambiguity(const Signal& f, const Signal& g) {
    TFArray out = stft(f, g);
    const auto n = static_cast<long long>(f.grid.n);
    // exp(pi i x_k w_l) = exp(pi i (k - n/2)(l - n/2) / n), period 2n in the
    // integer numerator.
    for (long long k = 0; k < n; ++k) {
        for (long long l = 0; l < n; ++l) {
            const long long q = (k - n / 2) * (l - n / 2);
            out.values[static_cast<std::size_t>(k * n + l)] *= unit_phase(q, 2 * n);
        }
    }
    return out;
}

TFArray ambiguity(const Signal& f) { return cross_ambiguity(f, f); }

Signal metaplectic_apply(const Signal& f, const MetaplecticOp& op) {
    switch (op.kind) {
        case MetaplecticOp::Kind::RotationJ:
            return fourier(f);
        case MetaplecticOp::Kind::Chirp: {
            Signal out(f.grid);
            for (std::size_t k = 0; k < f.grid.n; ++k) {
                const double t = f.grid.t(k);
                out.samples[k] = std::polar(1.0, M_PI * op.param * t * t) * f.samples[k];
            }
            return out;
        }
        case MetaplecticOp::Kind::Dilation: {
            const double lambda = op.param;
            if (!(lambda > 0.0)) throw InvalidDilation("dilation factor must be positive");
            const double nf = l2_norm(f);
            Signal out(f.grid);
            const double amp = 1.0 / std::sqrt(lambda);
            for (std::size_t k = 0; k < f.grid.n; ++k)
                out.samples[k] = amp * trig_eval(f, f.grid.t(k) / lambda);
            const double no = l2_norm(out);
            if (no > 0.0 && nf > 0.0) {
                const double s = nf / no;
                for (cplx& v : out.samples) v *= s;
            }
            return out;
        }
    }
    throw InvalidArgument("unknown metaplectic kind");
}

PhasePoint center_of_mass(const Signal& f, const Signal& g) {
    if (!(l2_norm_sq(f) > 0.0)) throw ZeroSignal("center of mass of a zero signal");
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("center of mass needs a nonzero window");
    const TFArray V = stft(f, g);
    const std::size_t n = V.grid.n;
    double mass = 0.0, mx = 0.0, mw = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = V.grid.t(k);
        for (std::size_t l = 0; l < n; ++l) {
            const double m = std::norm(V.at(k, l));
            mass += m;
            mx += x * m;
            mw += V.grid.w(l) * m;
        }
    }
    return {mx / mass, mw / mass};
}

std::vector<cplx> autocorrelation(const Signal& f) {
    const std::size_t n = f.grid.n;
    std::vector<cplx> spec(n), pw(n), corr(n);
    fft::dft(f.samples.data(), spec.data(), n);
    for (std::size_t l = 0; l < n; ++l) pw[l] = cplx{std::norm(spec[l]), 0.0};
    fft::idft(pw.data(), corr.data(), n);

    std::vector<cplx> out(n);
    const double scale = f.grid.dx / static_cast<double>(n);
    const auto ns = static_cast<long long>(n);
    for (long long k = 0; k < ns; ++k)
        out[static_cast<std::size_t>(k)] =
            scale * corr[static_cast<std::size_t>(imod(k - ns / 2, ns))];
    return out;
}

cplx trig_eval(const Signal& f, double t) {
    const std::size_t n = f.grid.n;
    std::vector<cplx> spec(n);
    fft::centered_dft(f.samples.data(), spec.data(), n);
    // f(t) = (1/n) sum_l spec[l] exp(2 pi i t w_l); incremental rotation over l.
    const double step = 2.0 * M_PI * t * f.grid.dw();
    const cplx rot = std::polar(1.0, step);
    cplx phase = std::polar(1.0, -step * (static_cast<double>(n) / 2.0));
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < n; ++l) {
        acc += spec[l] * phase;
        phase *= rot;
    }
    return acc / static_cast<double>(n);
}

TFInterpolator::TFInterpolator(const TFArray& a) : grid_(a.grid), coef_(a.values.size()) {
    const std::size_t n = grid_.n;
    // Separable inverse of the centered synthesis relation
    // a[k,l] = sum_{u,v} coef[u,v] e^{2 pi i (k-n/2)(u-n/2)/n} e^{2 pi i (l-n/2)(v-n/2)/n}.
    std::vector<cplx> tmp(n), col(n);
    std::vector<cplx> half(coef_.size());
    for (std::size_t k = 0; k < n; ++k) {
        fft::centered_dft(&a.values[k * n], tmp.data(), n);
        for (std::size_t v = 0; v < n; ++v) half[k * n + v] = tmp[v] / static_cast<double>(n);
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t k = 0; k < n; ++k) col[k] = half[k * n + v];
        fft::centered_dft(col.data(), tmp.data(), n);
        for (std::size_t u = 0; u < n; ++u) coef_[u * n + v] = tmp[u] / static_cast<double>(n);
    }
}

cplx TFInterpolator::operator()(double x, double w) const {
    const std::size_t n = grid_.n;
    // Dual lattice: xi_u = (u - n/2) dw along x, eta_v = (v - n/2) dx along w.
    const double sx = 2.0 * M_PI * x * grid_.dw();
    const double sw = 2.0 * M_PI * w * grid_.dx;
    const cplx rot_v = std::polar(1.0, sw);
    std::vector<cplx> row(n);
    for (std::size_t u = 0; u < n; ++u) {
        cplx phase = std::polar(1.0, -sw * (static_cast<double>(n) / 2.0));
        cplx acc{0.0, 0.0};
        const cplx* base = &coef_[u * n];
        for (std::size_t v = 0; v < n; ++v) {
            acc += base[v] * phase;
            phase *= rot_v;
        }
        row[u] = acc;
    }
    const cplx rot_u = std::polar(1.0, sx);
    cplx phase = std::polar(1.0, -sx * (static_cast<double>(n) / 2.0));
    cplx acc{0.0, 0.0};
    for (std::size_t u = 0; u < n; ++u) {
        acc += row[u] * phase;
        phase *= rot_u;
    }
    return acc;
}

} // namespace amblab
