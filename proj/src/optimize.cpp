#include "amblab/optimize.hpp"

#include <chrono>
#include <cmath>

#include "amblab/io.hpp"
#include "amblab/rng.hpp"
#include "amblab/synth.hpp"
#include "amblab/transforms.hpp"

namespace amblab {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Signal axpy(const Signal& f, double s, const Signal& d) {
    Signal out = f;
    for (std::size_t k = 0; k < out.size(); ++k) out.samples[k] += s * d.samples[k];
    return out;
}

Signal start_signal(const StartSpec& start, const TimeGrid& grid, std::uint64_t seed) {
    switch (start.kind) {
        case StartSpec::Kind::Random:
            return random_signal(grid, seed);
        case StartSpec::Kind::Gaussian:
            return normalized(gaussian_signal(grid, start.lambda));
        case StartSpec::Kind::File: {
            Signal f = io::read_signal_csv(start.path);
            if (f.grid != grid) throw GridMismatch("start signal grid does not match run grid");
            return normalized(f);
        }
    }
    throw InvalidArgument("unknown start kind");
}

} // namespace

Signal resolve_window(const WindowSpec& w, const TimeGrid& grid) {
    switch (w.kind) {
        case WindowSpec::Kind::Gaussian:
            return gaussian_signal(grid, w.lambda);
        case WindowSpec::Kind::File: {
            Signal g = io::read_signal_csv(w.path);
            if (g.grid != grid) throw GridMismatch("window grid does not match run grid");
            return g;
        }
    }
    throw InvalidArgument("unknown window kind");
}

double evaluate_objective(const Signal& f, const ObjectiveSpec& spec) {
    switch (spec.kind) {
        case ObjectiveSpec::Kind::AmbiguityLp:
            return objective_ambiguity(f, rasterize(spec.domain, f.grid), spec.p);
        case ObjectiveSpec::Kind::AmbiguityLinf:
            return objective_linf(f, rasterize(spec.domain, f.grid));
        case ObjectiveSpec::Kind::TimeCorrelationLp:
            return objective_timecorr(f, rasterize_1d(spec.interval, f.grid), spec.p);
        case ObjectiveSpec::Kind::FixedWindowLp:
            return objective_fixed_window(f, resolve_window(spec.window, f.grid),
                                          rasterize(spec.domain, f.grid), spec.p);
        case ObjectiveSpec::Kind::MqNormalizedLp:
            return objective_mq(f, rasterize(spec.domain, f.grid), spec.p, spec.q,
                                resolve_window(spec.window, f.grid));
    }
    throw InvalidArgument("unknown objective kind");
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "converged";
        case RunStatus::MaxIters: return "max_iters";
        case RunStatus::Stalled: return "stalled";
    }
    return "unknown";
}

RunReport proj_grad_ascent(const ObjectiveSpec& spec, const TimeGrid& grid,
                           const OptimizerConfig& cfg) {
    if (spec.kind != ObjectiveSpec::Kind::AmbiguityLp)
        throw InvalidArgument("projected gradient ascent supports the ambiguity L^p objective");
    const double t0 = now_seconds();
    const DomainMask mask = rasterize(spec.domain, grid);
    const Signal recenter_window = gaussian_signal(grid);

    RunReport rep(grid);
    rep.seed = cfg.seed;

    Signal f = normalized(start_signal(cfg.start, grid, cfg.seed));
    double obj = 0.0;
    Signal grad = gradient_ambiguity(f, mask, spec.p, &obj);

    double step = cfg.step0;
    std::size_t small_change_streak = 0;
    RunStatus status = RunStatus::MaxIters;

    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        if (cfg.recenter_every > 0 && it > 0 && it % cfg.recenter_every == 0) {
            const PhasePoint c = snap_to_grid(grid, center_of_mass(f, recenter_window));
            if (c.x != 0.0 || c.w != 0.0) {
                const Signal shifted = normalized(timefreq_shift(f, {-c.x, -c.w}));
                const double shifted_obj = objective_ambiguity(shifted, mask, spec.p);
                if (std::abs(shifted_obj - obj) > 1e-9 * std::max(1.0, std::abs(obj)))
                    throw Error("recentering changed the objective by " +
                                std::to_string(shifted_obj - obj));
                f = shifted;
                grad = gradient_ambiguity(f, mask, spec.p, &obj);
                rep.recenter_shifts.push_back(c);
            }
        }

        const double gnorm = l2_norm(grad);
        rep.objective_trace.push_back(obj);
        rep.grad_norm_trace.push_back(gnorm);

        if (gnorm < cfg.tol_grad) {
            status = RunStatus::Converged;
            break;
        }

        // Armijo backtracking along the gradient; the directional derivative
        // of J along its own gradient is 2 ||grad||^2.
        const double slope = 2.0 * gnorm * gnorm;
        double s = std::min(cfg.step0, 2.0 * step);
        bool accepted = false;
        double trial_obj = 0.0;
        Signal trial = f;
        while (s > 1e-16) {
            trial = normalized(axpy(f, s, grad));
            trial_obj = objective_ambiguity(trial, mask, spec.p);
            if (std::isfinite(trial_obj) && trial_obj >= obj + cfg.armijo.c * s * slope) {
                accepted = true;
                break;
            }
            s *= cfg.armijo.shrink;
        }
        if (!accepted) {
            status = RunStatus::Stalled;
            break;
        }
        step = s;

        const double prev = obj;
        f = trial;
        grad = gradient_ambiguity(f, mask, spec.p, &obj);
        const double rel_change = std::abs(obj - prev) / std::max(1.0, std::abs(obj));
        small_change_streak = rel_change < cfg.tol_obj ? small_change_streak + 1 : 0;
        if (small_change_streak >= 5) {
            rep.objective_trace.push_back(obj);
            rep.grad_norm_trace.push_back(l2_norm(grad));
            status = RunStatus::Converged;
            break;
        }
    }

    rep.final_signal = f;
    rep.final_objective = obj;
    rep.status = status;
    rep.wall_time_s = now_seconds() - t0;
    return rep;
}

Signal apply_localization(const Signal& g, const DomainMask& mask, const Signal& f) {
    if (f.grid != g.grid) throw GridMismatch("window and signal live on different grids");
    TFArray V = stft(f, g);
    const std::size_t n = V.grid.n;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (!mask.at(k, l)) V.at(k, l) = cplx{0.0, 0.0};
    return stft_adjoint(V, g);
}

EigenPair power_iteration(const Signal& g, const DomainMask& mask, double tol,
                          std::size_t max_iters) {
    if (!(l2_norm_sq(g) > 0.0)) throw ZeroWindow("power iteration needs a nonzero window");
    if (g.grid != mask.grid) throw GridMismatch("window and mask live on different grids");

    // Deterministic start: the window plus a fixed-seed perturbation so the
    // overlap with the top eigenfunction cannot vanish by symmetry.
    NoiseGen gen(0x5bd1e995u);
    Signal v = g;
    const double amp = 0.01 * l2_norm(g);
    for (cplx& s : v.samples) s += amp * gen.cnormal();
    v = normalized(v);

    EigenPair out(g.grid);
    for (std::size_t it = 1; it <= max_iters; ++it) {
        const Signal w = apply_localization(g, mask, v);
        double lambda = 0.0; // <Tv, v> is real for a self-adjoint operator
        for (std::size_t k = 0; k < v.size(); ++k)
            lambda += (w.samples[k] * std::conj(v.samples[k])).real();
        lambda *= v.grid.dx;

        double res_sq = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k)
            res_sq += std::norm(w.samples[k] - lambda * v.samples[k]);
        res_sq *= v.grid.dx;

        const double wn = l2_norm(w);
        if (wn > 0.0) {
            Signal next = w;
            const double inv = 1.0 / wn;
            for (cplx& s : next.samples) s *= inv;
            v = next;
        }
        if (std::sqrt(res_sq) <= tol) {
            out.value = lambda;
            out.function = v;
            out.iterations = it;
            return out;
        }
        if (wn == 0.0) { // mask annihilates the window: 0 is the top eigenvalue
            out.value = 0.0;
            out.function = v;
            out.iterations = it;
            return out;
        }
    }
    throw NoConvergence("power iteration did not reach tolerance in " +
                        std::to_string(max_iters) + " iterations");
}

RunReport self_consistent(const DomainMask& mask, const OptimizerConfig& cfg) {
    const TimeGrid grid = mask.grid;
    const double t0 = now_seconds();
    RunReport rep(grid);
    rep.seed = cfg.seed;

    Signal f = normalized(start_signal(cfg.start, grid, cfg.seed));
    double best_obj = objective_ambiguity(f, mask, 2.0);
    Signal best = f;
    rep.objective_trace.push_back(best_obj);

    RunStatus status = RunStatus::Stalled;
    double prev = best_obj;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        EigenPair top(grid);
        try {
            top = power_iteration(f, mask, 1e-10, 5000);
        } catch (const NoConvergence&) {
            break; // keep best-so-far
        }
        f = normalized(top.function);
        const double obj = objective_ambiguity(f, mask, 2.0);
        rep.objective_trace.push_back(obj);
        if (obj > best_obj) {
            best_obj = obj;
            best = f;
        }
        if (std::abs(obj - prev) <= cfg.tol_obj * std::max(1.0, std::abs(obj))) {
            status = RunStatus::Converged;
            break;
        }
        prev = obj;
    }

    rep.final_signal = best;
    rep.final_objective = best_obj;
    rep.status = status;
    rep.wall_time_s = now_seconds() - t0;
    return rep;
}

ScanResult gaussian_family_scan(const DomainMask& mask, double p,
                                const std::vector<double>& lambdas,
                                const std::vector<PhasePoint>& centers) {
    if (lambdas.empty()) throw InvalidArgument("scan needs at least one width");
    std::vector<PhasePoint> cs = centers;
    if (cs.empty()) cs.push_back({0.0, 0.0});

    ScanResult res;
    res.entries.reserve(lambdas.size() * cs.size());
    for (const double lambda : lambdas) {
        const Signal base = gaussian_signal(mask.grid, lambda);
        for (const PhasePoint& c : cs) {
            const PhasePoint snapped = snap_to_grid(mask.grid, c);
            const Signal f = (snapped.x == 0.0 && snapped.w == 0.0)
                                 ? base
                                 : timefreq_shift(base, snapped);
            res.entries.push_back({lambda, snapped, objective_ambiguity(f, mask, p)});
        }
    }
    res.best_index = 0;
    for (std::size_t i = 1; i < res.entries.size(); ++i)
        if (res.entries[i].value > res.entries[res.best_index].value) res.best_index = i;
    return res;
}

} // namespace amblab
