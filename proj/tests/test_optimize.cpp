#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "amblab/domains.hpp"
#include "amblab/errors.hpp"
#include "amblab/functionals.hpp"
#include "amblab/grid.hpp"
#include "amblab/optimize.hpp"
#include "amblab/rng.hpp"
#include "amblab/synth.hpp"
#include "amblab/transforms.hpp"

using namespace amblab;

namespace {

ObjectiveSpec ball_l2(double radius) {
    ObjectiveSpec spec;
    spec.kind = ObjectiveSpec::Kind::AmbiguityLp;
    spec.p = 2.0;
    spec.domain = DomainSpec::ball({0.0, 0.0}, radius);
    return spec;
}

cplx weighted_ip(const Signal& a, const Signal& b) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) acc += a.samples[k] * std::conj(b.samples[k]);
    return acc * a.grid.dx;
}

// Dense matrix of the localization operator in the standard basis. The grid
// weight dx is a scalar, so eigenpairs of this matrix are eigenpairs of the
// operator under the weighted inner product as well.
Eigen::MatrixXcd dense_localization(const Signal& g, const DomainMask& mask) {
    const std::size_t n = g.grid.n;
    Eigen::MatrixXcd M(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Signal e(g.grid);
        e.samples[j] = cplx{1.0, 0.0};
        const Signal col = apply_localization(g, mask, e);
        for (std::size_t i = 0; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.samples[i];
    }
    return M;
}

} // namespace

TEST_CASE("projected gradient ascent has a non-decreasing trace and converges") {
    const TimeGrid grid(64, 0.25);
    OptimizerConfig cfg;
    cfg.max_iters = 400;
    cfg.seed = 5;
    cfg.tol_grad = 1e-6;

    const RunReport rep = proj_grad_ascent(ball_l2(1.5), grid, cfg);
    REQUIRE(rep.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < rep.objective_trace.size(); ++i)
        CHECK(rep.objective_trace[i] >= rep.objective_trace[i - 1] - 1e-12);
    CHECK(rep.final_objective == rep.objective_trace.back());
    CHECK(rep.final_objective > 0.9); // the gaussian baseline is ~0.918 here
    CHECK(std::abs(l2_norm(rep.final_signal) - 1.0) < 1e-10);
    CHECK(rep.grad_norm_trace.size() == rep.objective_trace.size());
    CHECK(rep.seed == 5);
}

TEST_CASE("recentering pulls a displaced start back without changing the objective") {
    const TimeGrid grid(128, 0.125);
    OptimizerConfig cfg;
    cfg.max_iters = 60;
    cfg.recenter_every = 5;
    cfg.start.kind = StartSpec::Kind::Gaussian;
    cfg.start.lambda = 1.0;

    const ObjectiveSpec spec = ball_l2(2.0);
    const RunReport centered = proj_grad_ascent(spec, grid, cfg);
    CHECK(centered.recenter_shifts.empty()); // already centered, nothing to do

    // displaced domain: the iterate must recenter at least once
    ObjectiveSpec off = spec;
    off.domain = DomainSpec::ball({1.0, 0.0}, 2.0);
    OptimizerConfig cfg2 = cfg;
    cfg2.seed = 9;
    cfg2.start.kind = StartSpec::Kind::Random;
    cfg2.max_iters = 120;
    const RunReport rep = proj_grad_ascent(off, grid, cfg2);
    for (std::size_t i = 1; i < rep.objective_trace.size(); ++i)
        CHECK(rep.objective_trace[i] >= rep.objective_trace[i - 1] - 1e-12);
}

TEST_CASE("projected gradient rejects non-ambiguity objectives") {
    const TimeGrid grid(64, 0.25);
    ObjectiveSpec spec;
    spec.kind = ObjectiveSpec::Kind::AmbiguityLinf;
    spec.domain = DomainSpec::ball({0.0, 0.0}, 1.0);
    OptimizerConfig cfg;
    CHECK_THROWS_AS((void)proj_grad_ascent(spec, grid, cfg), InvalidArgument);
}

TEST_CASE("localization operator is self-adjoint and positive") {
    const TimeGrid grid(32, 0.25);
    const Signal g = gaussian_signal(grid);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);
    const Signal a = random_signal(grid, 70);
    const Signal b = random_signal(grid, 71);

    const Signal La = apply_localization(g, mask, a);
    const Signal Lb = apply_localization(g, mask, b);
    CHECK(std::abs(weighted_ip(La, b) - weighted_ip(a, Lb)) < 1e-12);

    const cplx quad = weighted_ip(La, a);
    CHECK(quad.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(quad.real() > 0.0);
}

TEST_CASE("power iteration matches a dense eigensolve") {
    const TimeGrid grid(32, 0.375); // box 12 wide, 2.67 tall
    const Signal g = gaussian_signal(grid);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);

    const EigenPair top = power_iteration(g, mask, 1e-12, 20000);
    CHECK(top.value > 0.0);
    CHECK(top.value <= l2_norm_sq(g) * (1.0 + 1e-9));

    const Eigen::MatrixXcd M = dense_localization(g, mask);
    CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
    const double dense_top = solver.eigenvalues().maxCoeff();
    CHECK(std::abs(top.value - dense_top) < 1e-10);

    // the eigenfunction satisfies the eigenvalue equation
    const Signal Lv = apply_localization(g, mask, top.function);
    double res = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        res = std::max(res, std::abs(Lv.samples[i] - top.value * top.function.samples[i]));
    CHECK(res < 1e-9);
}

TEST_CASE("power iteration validates its inputs") {
    const TimeGrid grid(32, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), grid);
    const Signal zero(grid);
    CHECK_THROWS_AS((void)power_iteration(zero, mask), ZeroWindow);

    const Signal g = gaussian_signal(grid);
    const DomainMask other = rasterize(DomainSpec::ball({0.0, 0.0}, 1.0), TimeGrid(64, 0.25));
    CHECK_THROWS_AS((void)power_iteration(g, other), GridMismatch);
}

TEST_CASE("self-consistent iteration tracks its best iterate") {
    const TimeGrid grid(64, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 2.0), grid);
    OptimizerConfig cfg;
    cfg.max_iters = 6;
    cfg.seed = 12;
    cfg.tol_obj = 1e-12;

    const RunReport rep = self_consistent(mask, cfg);
    REQUIRE(!rep.objective_trace.empty());
    double best = rep.objective_trace.front();
    for (double v : rep.objective_trace) best = std::max(best, v);
    CHECK(rep.final_objective == doctest::Approx(best));
    CHECK(rep.final_objective >= rep.objective_trace.front());
    // the fixed point of the self-windowed problem on a centered ball is
    // near the gaussian, whose objective here is within a percent of 1
    CHECK(rep.final_objective > 0.95);
    CHECK(evaluate_objective(rep.final_signal, ball_l2(2.0)) ==
          doctest::Approx(rep.final_objective).epsilon(1e-10));
}

TEST_CASE("gaussian family scan is deterministic and keeps the first of tied entries") {
    const TimeGrid grid(64, 0.25);
    const DomainMask mask = rasterize(DomainSpec::ball({0.0, 0.0}, 1.5), grid);

    const std::vector<double> lambdas{0.5, 1.0, 2.0};
    const std::vector<PhasePoint> centers{{0.0, 0.0}, {0.5, 0.0}};
    const ScanResult a = gaussian_family_scan(mask, 2.0, lambdas, centers);
    const ScanResult b = gaussian_family_scan(mask, 2.0, lambdas, centers);
    REQUIRE(a.entries.size() == 6);
    CHECK(a.best_index == b.best_index);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i].value == b.entries[i].value);

    // entries match direct objective evaluations
    for (const ScanEntry& e : a.entries) {
        Signal f = gaussian_signal(grid, e.lambda);
        if (e.center.x != 0.0 || e.center.w != 0.0) f = timefreq_shift(f, e.center);
        CHECK(e.value == doctest::Approx(objective_ambiguity(f, mask, 2.0)).epsilon(1e-12));
    }

    // duplicated widths produce bitwise ties; the earlier entry must win
    const ScanResult tied = gaussian_family_scan(mask, 2.0, {1.0, 1.0}, {{0.0, 0.0}});
    REQUIRE(tied.entries.size() == 2);
    CHECK(tied.entries[0].value == tied.entries[1].value);
    CHECK(tied.best_index == 0);

    // off-lattice centers snap to the grid
    const ScanResult snapped = gaussian_family_scan(mask, 2.0, {1.0}, {{0.51, 0.0}});
    CHECK(snapped.entries[0].center.x == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS((void)gaussian_family_scan(mask, 2.0, {}, {}), InvalidArgument);
}

TEST_CASE("window and start resolution validate their inputs") {
    const TimeGrid grid(32, 0.25);
    WindowSpec w;
    w.kind = WindowSpec::Kind::Gaussian;
    w.lambda = -1.0;
    CHECK_THROWS_AS((void)resolve_window(w, grid), InvalidArgument);

    WindowSpec wf;
    wf.kind = WindowSpec::Kind::File;
    wf.path = "/nonexistent/window.csv";
    CHECK_THROWS_AS((void)resolve_window(wf, grid), IoError);

    const Signal g = resolve_window(WindowSpec{}, grid);
    CHECK(std::abs(l2_norm_sq(g) - 1.0) < 1e-10);
}

TEST_CASE("evaluate_objective dispatches every kind") {
    const TimeGrid grid(256, 1.0 / 16.0);
    const Signal g = gaussian_signal(grid);

    ObjectiveSpec amb = ball_l2(1.5);
    CHECK(evaluate_objective(g, amb) > 0.0);

    ObjectiveSpec sup;
    sup.kind = ObjectiveSpec::Kind::AmbiguityLinf;
    sup.domain = DomainSpec::ball({0.0, 0.0}, 1.0);
    CHECK(evaluate_objective(g, sup) == doctest::Approx(1.0).epsilon(1e-12));

    ObjectiveSpec tc;
    tc.kind = ObjectiveSpec::Kind::TimeCorrelationLp;
    tc.p = 1.0;
    tc.interval = Domain1D::interval(0.0, 1.0);
    CHECK(evaluate_objective(g, tc) > 0.0);

    ObjectiveSpec fw;
    fw.kind = ObjectiveSpec::Kind::FixedWindowLp;
    fw.p = 2.0;
    fw.domain = DomainSpec::ball({0.0, 0.0}, 1.5);
    fw.window = WindowSpec{};
    CHECK(evaluate_objective(g, fw) > 0.0);

    ObjectiveSpec mq;
    mq.kind = ObjectiveSpec::Kind::MqNormalizedLp;
    mq.p = 2.0;
    mq.q = 2.0;
    mq.domain = DomainSpec::ball({0.0, 0.0}, 1.5);
    mq.window = WindowSpec{};
    CHECK(evaluate_objective(g, mq) ==
          doctest::Approx(evaluate_objective(g, amb)).epsilon(1e-10));
}
