#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "amblab/errors.hpp"
#include "amblab/fft.hpp"
#include "amblab/grid.hpp"
#include "amblab/rng.hpp"
#include "amblab/synth.hpp"
#include "amblab/transforms.hpp"

using namespace amblab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Direct O(n^2) reference for the centered transform. Everything the fast
// path computes is checked against this sum at small sizes.
std::vector<cplx> direct_centered_dft(const std::vector<cplx>& in) {
    const std::size_t n = in.size();
    const double half = static_cast<double>(n) / 2.0;
    std::vector<cplx> out(n);
    for (std::size_t l = 0; l < n; ++l) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double phase =
                -2.0 * kPi * (static_cast<double>(k) - half) * (static_cast<double>(l) - half) /
                static_cast<double>(n);
            acc += in[k] * std::polar(1.0, phase);
        }
        out[l] = acc;
    }
    return out;
}

// Direct O(n^3) reference for the windowed transform: the defining inner
// product <f, pi(x_k, w_l) g> evaluated term by term.
cplx direct_stft_cell(const Signal& f, const Signal& g, std::size_t k, std::size_t l) {
    const std::size_t n = f.grid.n;
    const long long shift = static_cast<long long>(k) - static_cast<long long>(n) / 2;
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        long long src = static_cast<long long>(j) - shift;
        src %= static_cast<long long>(n);
        if (src < 0) src += static_cast<long long>(n);
        const cplx pig = std::polar(1.0, 2.0 * kPi * f.grid.t(j) * f.grid.w(l)) *
                         g.samples[static_cast<std::size_t>(src)];
        acc += f.samples[j] * std::conj(pig);
    }
    return acc * f.grid.dx;
}

Signal noise(const TimeGrid& grid, std::uint64_t seed) { return random_signal(grid, seed); }

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("centered dft matches the direct sum at small sizes") {
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        NoiseGen gen(100 + n);
        std::vector<cplx> in(n);
        for (cplx& v : in) v = gen.cnormal();
        std::vector<cplx> fast(n);
        fft::centered_dft(in.data(), fast.data(), n);
        const std::vector<cplx> ref = direct_centered_dft(in);
        CHECK(max_abs_diff(fast, ref) < 1e-12 * static_cast<double>(n));
    }
}

TEST_CASE("centered idft inverts centered dft exactly") {
    const std::size_t n = 64;
    NoiseGen gen(7);
    std::vector<cplx> in(n);
    for (cplx& v : in) v = gen.cnormal();
    std::vector<cplx> mid(n), back(n);
    fft::centered_dft(in.data(), mid.data(), n);
    fft::centered_idft(mid.data(), back.data(), n);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(back[i] / static_cast<double>(n) - in[i]) < 1e-12);
}

TEST_CASE("fourier is unitary and fourier_inverse undoes it") {
    // on a square grid (dx = dw) the sample weights coincide, so the plain
    // signal norm already expresses the unitarity
    const TimeGrid square(64, 0.125);
    const Signal s = noise(square, 22);
    CHECK(std::abs(l2_norm_sq(fourier(s)) - l2_norm_sq(s)) < 1e-12);

    // on a rectangular grid the image lives against the dual weight dw
    const TimeGrid grid(128, 0.125);
    const Signal f = noise(grid, 21);
    const Signal fh = fourier(f);
    double image_sq = 0.0;
    for (const cplx& v : fh.samples) image_sq += std::norm(v);
    image_sq *= grid.dw();
    CHECK(std::abs(image_sq - l2_norm_sq(f)) < 1e-12);

    const Signal back = fourier_inverse(fh);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        dev = std::max(dev, std::abs(back.samples[i] - f.samples[i]));
    CHECK(dev < 1e-12);
}

TEST_CASE("the unit gaussian is a fourier fixed point") {
    const TimeGrid grid(256, 1.0 / 16.0); // box width 16 in both directions
    const Signal g = gaussian_signal(grid);
    const Signal gh = fourier(g);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        dev = std::max(dev, std::abs(gh.samples[i] - g.samples[i]));
    CHECK(dev < 1e-10);
}

TEST_CASE("gaussian_signal has unit energy and dilation covariance") {
    const TimeGrid grid(256, 1.0 / 16.0);
    for (double lam : {0.5, 1.0, 2.0}) {
        const Signal g = gaussian_signal(grid, lam);
        CHECK(std::abs(l2_norm_sq(g) - 1.0) < 1e-10);
    }
    // fourier swaps lambda and 1/lambda
    const Signal wide = gaussian_signal(grid, 2.0);
    const Signal hat = fourier(wide);
    const Signal narrow = gaussian_signal(grid, 0.5);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        dev = std::max(dev, std::abs(hat.samples[i] - narrow.samples[i]));
    CHECK(dev < 1e-10);
}

TEST_CASE("stft matches the direct inner-product sum at small sizes") {
    const TimeGrid grid(8, 0.5);
    const Signal f = noise(grid, 3);
    const Signal g = noise(grid, 4);
    const TFArray V = stft(f, g);
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k)
        for (std::size_t l = 0; l < grid.n; ++l)
            dev = std::max(dev, std::abs(V.at(k, l) - direct_stft_cell(f, g, k, l)));
    CHECK(dev < 1e-12);
}

TEST_CASE("stft_row reproduces full stft rows") {
    const TimeGrid grid(32, 0.25);
    const Signal f = noise(grid, 5);
    const Signal g = noise(grid, 6);
    const TFArray V = stft(f, g);
    for (std::size_t k : {std::size_t{0}, std::size_t{7}, std::size_t{16}, std::size_t{31}}) {
        const std::vector<cplx> row = stft_row(f, g, k);
        REQUIRE(row.size() == grid.n);
        for (std::size_t l = 0; l < grid.n; ++l) CHECK(row[l] == V.at(k, l));
    }
    CHECK_THROWS_AS((void)stft_row(f, g, grid.n), InvalidArgument);
}

TEST_CASE("stft_adjoint pairs against stft") {
    // <V_g^* F, h> = <F, V_g h> with the L2(dx dw) pairing on the array side.
    const TimeGrid grid(16, 0.5);
    const Signal g = noise(grid, 8);
    const Signal h = noise(grid, 9);
    TFArray F(grid);
    NoiseGen gen(10);
    for (cplx& v : F.values) v = gen.cnormal();

    const Signal left = stft_adjoint(F, g);
    cplx lhs{0.0, 0.0};
    for (std::size_t i = 0; i < grid.n; ++i)
        lhs += left.samples[i] * std::conj(h.samples[i]);
    lhs *= grid.dx;

    const TFArray Vh = stft(h, g);
    cplx rhs{0.0, 0.0};
    for (std::size_t i = 0; i < F.values.size(); ++i)
        rhs += F.values[i] * std::conj(Vh.values[i]);
    rhs *= grid.cell_area();

    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("ambiguity of the unit gaussian matches the closed form") {
    const TimeGrid grid(256, 12.0 / 256.0);
    const Signal g = gaussian_signal(grid);
    const TFArray A = ambiguity(g);
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) {
        for (std::size_t l = 0; l < grid.n; ++l) {
            const double x = grid.t(k), w = grid.w(l);
            if (std::abs(x) > 5.0 || std::abs(w) > 5.0) continue;
            const double expect = std::exp(-kPi * (x * x + w * w) / 2.0);
            dev = std::max(dev, std::abs(std::abs(A.at(k, l)) - expect));
        }
    }
    CHECK(dev < 1e-9);
}

TEST_CASE("cross_ambiguity equals the phase-corrected stft") {
    const TimeGrid grid(32, 0.25);
    const Signal f = noise(grid, 11);
    const Signal g = noise(grid, 12);
    const TFArray V = stft(f, g);
    const TFArray A = cross_ambiguity(f, g);
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k)
        for (std::size_t l = 0; l < grid.n; ++l) {
            const cplx expect =
                std::polar(1.0, kPi * grid.t(k) * grid.w(l)) * V.at(k, l);
            dev = std::max(dev, std::abs(A.at(k, l) - expect));
        }
    CHECK(dev < 1e-12);
}

TEST_CASE("timefreq_shift preserves |ambiguity| and norm") {
    const TimeGrid grid(64, 0.25);
    const Signal f = noise(grid, 13);
    const PhasePoint z{4.0 * grid.dx, 6.0 * grid.dw()};
    const Signal sf = timefreq_shift(f, z);
    CHECK(std::abs(l2_norm_sq(sf) - l2_norm_sq(f)) < 1e-12);

    const TFArray a0 = ambiguity(f);
    const TFArray a1 = ambiguity(sf);
    double dev = 0.0;
    for (std::size_t i = 0; i < a0.values.size(); ++i)
        dev = std::max(dev, std::abs(std::abs(a1.values[i]) - std::abs(a0.values[i])));
    CHECK(dev < 1e-10);
}

TEST_CASE("off-grid shifts and grid mismatches are rejected") {
    const TimeGrid grid(32, 0.25);
    const Signal f = noise(grid, 14);
    CHECK_THROWS_AS((void)timefreq_shift(f, {0.3 * grid.dx, 0.0}), OffGridShift);
    CHECK_THROWS_AS((void)timefreq_shift(f, {0.0, 0.51 * grid.dw()}), OffGridShift);

    const TimeGrid other(64, 0.25);
    const Signal g = noise(other, 15);
    CHECK_THROWS_AS((void)stft(f, g), GridMismatch);

    const Signal zero(grid);
    CHECK_THROWS_AS((void)stft(f, zero), ZeroWindow);
    CHECK_THROWS_AS((void)normalized(zero), ZeroSignal);
}

TEST_CASE("is_on_grid and snap_to_grid agree") {
    const TimeGrid grid(32, 0.25);
    CHECK(is_on_grid(grid, {2.0 * grid.dx, -3.0 * grid.dw()}));
    CHECK_FALSE(is_on_grid(grid, {2.4 * grid.dx, 0.0}));
    const PhasePoint s = snap_to_grid(grid, {2.4 * grid.dx, -3.4 * grid.dw()});
    CHECK(s.x == doctest::Approx(2.0 * grid.dx).epsilon(1e-12));
    CHECK(s.w == doctest::Approx(-3.0 * grid.dw()).epsilon(1e-12));
}

TEST_CASE("autocorrelation matches direct shifts and the triangle law") {
    const TimeGrid grid(64, 0.25);
    const Signal f = noise(grid, 16);
    const std::vector<cplx> c = autocorrelation(f);
    REQUIRE(c.size() == grid.n);

    // direct <f, T_x f> at a few shifts
    for (std::size_t k : {std::size_t{32}, std::size_t{33}, std::size_t{40}}) {
        const Signal tf = timefreq_shift(f, {grid.t(k), 0.0});
        cplx ip{0.0, 0.0};
        for (std::size_t i = 0; i < grid.n; ++i)
            ip += f.samples[i] * std::conj(tf.samples[i]);
        ip *= grid.dx;
        CHECK(std::abs(c[k] - ip) < 1e-12);
    }

    // an indicator occupying m contiguous cells correlates to the exact
    // discrete triangle dx * max(0, m - |j|) at shift j
    const Signal box = interval_indicator(grid, 0.0, 1.0);
    double support = 0.0;
    for (const cplx& v : box.samples) support += std::norm(v);
    const double m = support; // one per occupied cell
    const std::vector<cplx> cb = autocorrelation(box);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double j = std::abs(static_cast<double>(k) - static_cast<double>(grid.n) / 2.0);
        const double expect = grid.dx * std::max(0.0, m - j);
        CHECK(std::abs(cb[k] - expect) < 1e-10);
    }
}

TEST_CASE("trig_eval reproduces samples on the lattice") {
    const TimeGrid grid(32, 0.5);
    const Signal f = noise(grid, 17);
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{16}, std::size_t{31}})
        CHECK(std::abs(trig_eval(f, grid.t(k)) - f.samples[k]) < 1e-12);

    // band-limited evaluation of a pure lattice exponential is exact off-grid
    Signal wave(grid);
    const double w3 = 3.0 * grid.dw();
    for (std::size_t k = 0; k < grid.n; ++k)
        wave.samples[k] = std::polar(1.0, 2.0 * kPi * w3 * grid.t(k));
    const double t = 0.31;
    CHECK(std::abs(trig_eval(wave, t) - std::polar(1.0, 2.0 * kPi * w3 * t)) < 1e-12);
}

TEST_CASE("tf interpolator reproduces grid values and central off-grid points") {
    const TimeGrid grid(64, 0.125);
    const Signal f = gaussian_signal(grid);
    const TFArray V = stft(f, f);
    const TFInterpolator interp(V);
    for (std::size_t k : {std::size_t{30}, std::size_t{32}, std::size_t{35}})
        for (std::size_t l : {std::size_t{31}, std::size_t{32}, std::size_t{36}})
            CHECK(std::abs(interp(grid.t(k), grid.w(l)) - V.at(k, l)) < 1e-10);

    // off-grid probe against the closed form |V| = exp(-pi |z|^2 / 2)
    const double x = 0.3, w = -0.45;
    CHECK(std::abs(std::abs(interp(x, w)) - std::exp(-kPi * (x * x + w * w) / 2.0)) < 1e-8);
}

TEST_CASE("metaplectic dilation preserves norm and maps the gaussian family") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);
    const Signal d = metaplectic_apply(g, MetaplecticOp::dilation(2.0));
    CHECK(std::abs(l2_norm_sq(d) - 1.0) < 1e-10);
    const Signal g2 = gaussian_signal(grid, 2.0);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        dev = std::max(dev, std::abs(d.samples[i] - g2.samples[i]));
    CHECK(dev < 1e-9);

    CHECK_THROWS_AS((void)metaplectic_apply(g, MetaplecticOp::dilation(0.0)), InvalidDilation);
    CHECK_THROWS_AS((void)metaplectic_apply(g, MetaplecticOp::dilation(-1.0)), InvalidDilation);
}

TEST_CASE("metaplectic chirp multiplies by the quadratic phase") {
    const TimeGrid grid(64, 0.25);
    const Signal f = noise(grid, 18);
    const double c = 0.7;
    const Signal ch = metaplectic_apply(f, MetaplecticOp::chirp(c));
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double t = grid.t(k);
        const cplx expect = std::polar(1.0, kPi * c * t * t) * f.samples[k];
        dev = std::max(dev, std::abs(ch.samples[k] - expect));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("metaplectic rotation is the fourier transform") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal f = noise(grid, 19);
    const Signal r = metaplectic_apply(f, MetaplecticOp::rotation());
    const Signal fh = fourier(f);
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        dev = std::max(dev, std::abs(r.samples[i] - fh.samples[i]));
    CHECK(dev == 0.0);
}

TEST_CASE("rotation maps ambiguity cells exactly on a square grid") {
    const TimeGrid grid(64, std::sqrt(1.0 / 64.0)); // n dx^2 = 1, so dx = dw
    const Signal f = noise(grid, 20);
    const TFArray A = ambiguity(f);
    const TFArray Ar = ambiguity(fourier(f));
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k)
        for (std::size_t l = 0; l < grid.n; ++l) {
            const std::size_t src_k = (grid.n - l) % grid.n;
            dev = std::max(dev, std::abs(std::abs(Ar.at(k, l)) - std::abs(A.at(src_k, k))));
        }
    CHECK(dev < 1e-10);
}

TEST_CASE("center_of_mass finds the shift of a displaced gaussian") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);
    const PhasePoint z{1.5, -2.0};
    const Signal shifted = timefreq_shift(g, z);
    const PhasePoint c = center_of_mass(shifted, g);
    CHECK(std::abs(c.x - z.x) < 1e-6);
    CHECK(std::abs(c.w - z.w) < 1e-6);
}

TEST_CASE("grid constructor validates its arguments") {
    CHECK_THROWS_AS(TimeGrid(0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(TimeGrid(15, 0.5), InvalidArgument);
    CHECK_THROWS_AS(TimeGrid(16, 0.0), InvalidArgument);
    CHECK_THROWS_AS(TimeGrid(16, -1.0), InvalidArgument);
    CHECK_THROWS_AS(Signal(TimeGrid(16, 0.5), std::vector<cplx>(7)), InvalidArgument);
}

TEST_CASE("edge mass helpers see concentrated against spread signals") {
    const TimeGrid grid(128, 0.125);
    const Signal g = gaussian_signal(grid);
    CHECK(signal_edge_mass_ratio(g, 0.1) < 1e-12);

    Signal edge(grid);
    edge.samples[0] = 1.0;
    CHECK(signal_edge_mass_ratio(edge, 0.1) == doctest::Approx(1.0));

    const TFArray A = ambiguity(g);
    CHECK(tf_edge_mass_ratio(A, 0.1) < 1e-12);
    // the outer frame starts at |w| = 3.2 here, where the gaussian transform
    // has decayed to exp(-pi 3.2^2 / 2) ~ 1e-7
    CHECK(tf_frame_max_abs(A, 0.1) < 1e-6);
}
