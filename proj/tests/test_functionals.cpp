#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "amblab/domains.hpp"
#include "amblab/errors.hpp"
#include "amblab/functionals.hpp"
#include "amblab/grid.hpp"
#include "amblab/rng.hpp"
#include "amblab/synth.hpp"
#include "amblab/transforms.hpp"

using namespace amblab;

namespace {

constexpr double kPi = 3.14159265358979323846;

TFArray random_tfarray(const TimeGrid& grid, std::uint64_t seed) {
    TFArray a(grid);
    NoiseGen gen(seed);
    for (cplx& v : a.values) v = gen.cnormal();
    return a;
}

DomainMask full_box_mask(const TimeGrid& grid) {
    const double tx = grid.time_half_width();
    const double tw = grid.freq_half_width();
    // closed rect through every cell center; the covered box is half-open so
    // the rect stops just inside the upper edges
    return rasterize(DomainSpec::rect(-tx, tx - 0.5 * grid.dx, -tw, tw - 0.5 * grid.dw()), grid);
}

} // namespace

TEST_CASE("lp and linf on a domain match direct sums") {
    const TimeGrid grid(16, 0.25); // box [-2,2) x [-2,2): the ball below fits
    const TFArray a = random_tfarray(grid, 31);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.5), grid);

    for (double p : {1.0, 2.0, 3.5}) {
        double acc = 0.0;
        for (std::size_t k = 0; k < grid.n; ++k)
            for (std::size_t l = 0; l < grid.n; ++l)
                if (mask.at(k, l)) acc += std::pow(std::abs(a.at(k, l)), p) * grid.cell_area();
        CHECK(lp_on_domain(a, mask, p) == doctest::Approx(std::pow(acc, 1.0 / p)).epsilon(1e-12));
    }

    double mx = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k)
        for (std::size_t l = 0; l < grid.n; ++l)
            if (mask.at(k, l)) mx = std::max(mx, std::abs(a.at(k, l)));
    CHECK(linf_on_domain(a, mask) == mx);

    CHECK_THROWS_AS((void)lp_on_domain(a, mask, 0.5), InvalidArgument);
}

TEST_CASE("windowed transform energy is exactly the product of signal energies") {
    const TimeGrid grid(64, 0.25);
    const Signal f = random_signal(grid, 32);
    const Signal g = random_signal(grid, 33);
    const TFArray V = stft(f, g);
    CHECK(tf_norm_sq(V) == doctest::Approx(l2_norm_sq(f) * l2_norm_sq(g)).epsilon(1e-12));

    const DomainMask full = full_box_mask(grid);
    CHECK(lp_on_domain(V, full, 2.0) ==
          doctest::Approx(l2_norm(f) * l2_norm(g)).epsilon(1e-12));
}

TEST_CASE("ambiguity objective respects the measure bound and shift invariance") {
    const TimeGrid grid(64, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.5), grid);
    for (std::uint64_t seed : {40u, 41u, 42u}) {
        const Signal f = random_signal(grid, seed);
        for (double p : {1.0, 2.0, 4.0}) {
            const double J = objective_ambiguity(f, mask, p);
            CHECK(J > 0.0);
            CHECK(J <= std::pow(measure(mask), 1.0 / p) * (1.0 + 1e-9));
        }
        // scaling and on-grid shifts leave the objective unchanged
        Signal scaled = f;
        for (cplx& v : scaled.samples) v *= 3.7;
        CHECK(objective_ambiguity(scaled, mask, 2.0) ==
              doctest::Approx(objective_ambiguity(f, mask, 2.0)).epsilon(1e-12));
        const Signal shifted = timefreq_shift(f, {2.0 * grid.dx, -3.0 * grid.dw()});
        CHECK(objective_ambiguity(shifted, mask, 2.0) ==
              doctest::Approx(objective_ambiguity(f, mask, 2.0)).epsilon(1e-10));
    }
    const Signal zero(grid);
    CHECK_THROWS_AS((void)objective_ambiguity(zero, mask, 2.0), ZeroSignal);
}

TEST_CASE("analytic gradient matches central finite differences") {
    const TimeGrid grid(32, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);
    const Signal f = random_signal(grid, 50);
    const double h = 1e-6;

    for (double p : {1.5, 2.0, 3.0}) {
        const Signal grad = gradient_ambiguity(f, mask, p);
        for (std::uint64_t probe = 0; probe < 3; ++probe) {
            const Signal v = random_signal(grid, 60 + probe);
            Signal plus = f, minus = f;
            for (std::size_t i = 0; i < grid.n; ++i) {
                plus.samples[i] += h * v.samples[i];
                minus.samples[i] -= h * v.samples[i];
            }
            const double fd =
                (objective_ambiguity(plus, mask, p) - objective_ambiguity(minus, mask, p)) /
                (2.0 * h);
            cplx ip{0.0, 0.0};
            for (std::size_t i = 0; i < grid.n; ++i)
                ip += v.samples[i] * std::conj(grad.samples[i]);
            const double analytic = 2.0 * (ip * grid.dx).real();
            CHECK(std::abs(fd - analytic) < 1e-4 * std::max(1.0, std::abs(analytic)));
        }
    }
}

TEST_CASE("gradient reports the objective it differentiates") {
    const TimeGrid grid(32, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);
    const Signal f = random_signal(grid, 51);
    double J = 0.0;
    (void)gradient_ambiguity(f, mask, 2.0, &J);
    CHECK(J == doctest::Approx(objective_ambiguity(f, mask, 2.0)).epsilon(1e-14));
}

TEST_CASE("sup objective equals the gaussian ambiguity peak structure") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);

    // any domain containing the origin cell pins the sup at 1
    const DomainMask origin = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);
    CHECK(objective_linf(g, origin) == doctest::Approx(1.0).epsilon(1e-12));

    // one cell to the right of the origin: closed form exp(-pi dx^2 / 2)
    const DomainMask cell = rasterize(DomainSpec::ball({grid.dx, 0.0}, 0.01), grid);
    REQUIRE(cell.count == 1);
    CHECK(objective_linf(g, cell) ==
          doctest::Approx(std::exp(-kPi * grid.dx * grid.dx / 2.0)).epsilon(1e-10));
}

TEST_CASE("sup objective agrees with the dense scan over the mask") {
    const TimeGrid grid(64, 0.25);
    const Signal f = random_signal(grid, 52);
    const DomainMask mask = rasterize(DomainSpec::annulus({0.0, 0.0}, 1.0, 2.0), grid);
    const TFArray A = ambiguity(f);
    CHECK(objective_linf(f, mask) ==
          doctest::Approx(linf_on_domain(A, mask) / l2_norm_sq(f)).epsilon(1e-12));
}

TEST_CASE("time correlation objective reproduces the stretched-indicator value") {
    const TimeGrid grid(512, 1.0 / 32.0);
    const Mask1D mask = rasterize_1d(Domain1D::interval(0.0, 1.0), grid);

    for (double lam : {1.0, 2.0, 4.0}) {
        const Signal f = interval_indicator(grid, -lam, lam);
        const double J = objective_timecorr(f, mask, 1.0);
        CHECK(std::abs(J - (1.0 - 1.0 / (4.0 * lam))) < 2.0 * grid.dx);
        CHECK(J < std::pow(measure_1d(mask), 1.0));
    }

    // p >= 1 only, and the measure bound holds for random signals
    const Signal f = random_signal(grid, 53);
    CHECK_THROWS_AS((void)objective_timecorr(f, mask, 0.5), InvalidArgument);
    for (double p : {1.0, 2.0}) {
        CHECK(objective_timecorr(f, mask, p) <=
              std::pow(measure_1d(mask), 1.0 / p) * (1.0 + 1e-9));
    }
}

TEST_CASE("fixed window objective reduces to the cross-transform norm") {
    const TimeGrid grid(64, 0.25);
    const Signal g = gaussian_signal(grid);
    const Signal f = random_signal(grid, 54);
    const DomainMask full = full_box_mask(grid);
    // over the full box with p = 2 the energy identity gives ||g||
    CHECK(objective_fixed_window(f, g, full, 2.0) == doctest::Approx(1.0).epsilon(1e-10));

    const Signal zero(grid);
    CHECK_THROWS_AS((void)objective_fixed_window(f, zero, full, 2.0), ZeroWindow);
}

TEST_CASE("continuous modulation norms obey the endpoint identities") {
    const TimeGrid grid(128, 0.125);
    const Signal g = gaussian_signal(grid);
    const Signal f = random_signal(grid, 55);

    // q = 2 is the energy identity again
    CHECK(mq_norm_continuous(f, g, 2.0) ==
          doctest::Approx(l2_norm(f) * l2_norm(g)).epsilon(1e-10));

    // q = inf is a sup bounded by Cauchy-Schwarz, attained for matched pairs
    const double sup = mq_norm_continuous(f, g, std::numeric_limits<double>::infinity());
    CHECK(sup <= l2_norm(f) * l2_norm(g) * (1.0 + 1e-12));
    CHECK(mq_norm_continuous(g, g, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS((void)mq_norm_continuous(f, g, 0.0), InvalidArgument);
}

TEST_CASE("default lattice is commensurate and the coefficients match direct products") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const GaborLattice lat = default_gabor_lattice(grid);
    CHECK(lat.a == doctest::Approx(11.0 * grid.dx));
    CHECK(lat.b == doctest::Approx(11.0 * grid.dw()));
    CHECK(lat.a * lat.b < 1.0);

    const Signal g = gaussian_signal(grid);
    const Signal f = random_signal(grid, 56);
    const GaborLattice small{4.0 * grid.dx, 4.0 * grid.dw(), 2};
    const std::vector<cplx> coef = gabor_coefficients(f, g, small);
    const int side = 2 * small.radius + 1;
    REQUIRE(coef.size() == static_cast<std::size_t>(side * side));

    for (int i : {-2, 0, 1})
        for (int j : {-1, 0, 2}) {
            const Signal pig = timefreq_shift(g, {i * small.a, j * small.b});
            cplx ip{0.0, 0.0};
            for (std::size_t s = 0; s < grid.n; ++s)
                ip += f.samples[s] * std::conj(pig.samples[s]);
            ip *= grid.dx;
            const std::size_t idx = static_cast<std::size_t>((i + 2) * side + (j + 2));
            CHECK(std::abs(coef[idx] - ip) < 1e-12);
        }
}

TEST_CASE("lattice validation rejects incommensurate and oversized inputs") {
    const TimeGrid grid(64, 0.25);
    const Signal g = gaussian_signal(grid);
    const Signal f = random_signal(grid, 57);
    CHECK_THROWS_AS((void)gabor_coefficients(f, g, {0.3, 4.0 * grid.dw(), 2}),
                    LatticeIncommensurate);
    CHECK_THROWS_AS((void)gabor_coefficients(f, g, {grid.dx, grid.dw(), 0}), InvalidArgument);
    CHECK_THROWS_AS((void)gabor_coefficients(f, g, {4.0, 4.0 * grid.dw(), 3}),
                    DomainOutsideGrid);
}

TEST_CASE("lattice quasi-norm guards against truncation leakage") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);
    // a radius-2 lattice leaves visible coefficient mass on the outer ring
    const GaborLattice tight{11.0 * grid.dx, 11.0 * grid.dw(), 2};
    CHECK_THROWS_AS((void)gabor_norm(g, g, tight, 2.0), TruncationLeakage);
    CHECK(gabor_norm(g, g, tight, 2.0, false) > 0.0);

    // the default lattice spans the box, so the gate passes
    const GaborLattice lat = default_gabor_lattice(grid);
    const double q2 = gabor_norm(g, g, lat, 2.0);
    CHECK(q2 > 0.0);
    // q < 1 stays finite: the sum is taken before the single exponentiation
    const double qh = gabor_norm(g, g, lat, 0.5);
    CHECK(std::isfinite(qh));
    CHECK(qh >= q2);
}

TEST_CASE("modulation-normalized objective routes by q") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.5), grid);
    const Signal f = random_signal(grid, 58);

    // q = 2 divides by the plain energy, which is 1 for unit-norm f and g
    const double viaMq = objective_mq(f, mask, 2.0, 2.0, g);
    const TFArray A = ambiguity(f);
    const double direct = lp_on_domain(A, mask, 2.0) / std::pow(mq_norm_continuous(f, g, 2.0), 2.0);
    CHECK(viaMq == doctest::Approx(direct).epsilon(1e-12));

    // q < 1 routes through the default lattice quasi-norm and stays finite
    CHECK(std::isfinite(objective_mq(g, mask, 2.0, 0.5, g)));
}

TEST_CASE("amalgam norm clips at the box and recovers the global energy") {
    const TimeGrid grid(64, 0.25);
    const Signal g = gaussian_signal(grid);
    const TFArray A = ambiguity(g);

    const double total = std::sqrt(tf_norm_sq(A));
    // a window spanning the whole box sees everything
    CHECK(amalgam_norm(A, 20.0) == doctest::Approx(total).epsilon(1e-12));
    // monotone in the window radius
    const double r1 = amalgam_norm(A, 1.0);
    const double r2 = amalgam_norm(A, 2.0);
    CHECK(r1 <= r2 * (1.0 + 1e-12));
    CHECK(r2 <= total * (1.0 + 1e-12));
    // the unit window already captures most of a gaussian ambiguity
    CHECK(r1 > 0.9 * total);

    CHECK_THROWS_AS((void)amalgam_norm(A, 0.0), InvalidArgument);
}
