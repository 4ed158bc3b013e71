#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amblab/domains.hpp"
#include "amblab/functionals.hpp"
#include "amblab/grid.hpp"

namespace amblab {

/// Window referenced by an objective: a synthesized Gaussian or a file.
struct WindowSpec {
    enum class Kind { Gaussian, File };
    Kind kind = Kind::Gaussian;
    double lambda = 1.0;
    std::string path;
};

Signal resolve_window(const WindowSpec& w, const TimeGrid& grid);

/// Declarative objective; the domain is rasterized at evaluation time.
struct ObjectiveSpec {
    enum class Kind { AmbiguityLp, AmbiguityLinf, TimeCorrelationLp, FixedWindowLp, MqNormalizedLp };

    Kind kind = Kind::AmbiguityLp;
    double p = 2.0;
    double q = 2.0;          // MqNormalizedLp
    DomainSpec domain;       // all 2-D kinds
    Domain1D interval;       // TimeCorrelationLp
    WindowSpec window;       // FixedWindowLp, MqNormalizedLp
};

/// Evaluate any objective kind at f.
double evaluate_objective(const Signal& f, const ObjectiveSpec& spec);

struct ArmijoParams {
    double c = 1e-4;
    double shrink = 0.5;
};

struct StartSpec {
    enum class Kind { Random, Gaussian, File };
    Kind kind = Kind::Random;
    double lambda = 1.0;
    std::string path;
};

struct OptimizerConfig {
    enum class Method { ProjGrad, PowerIter, SelfConsistent, GaussianScan };

    Method method = Method::ProjGrad;
    std::size_t max_iters = 500;
    double step0 = 1.0;
    ArmijoParams armijo{};
    double tol_grad = 1e-7;
    double tol_obj = 1e-10;
    std::size_t recenter_every = 10;
    std::uint64_t seed = 0;
    StartSpec start{};
    std::vector<double> lambdas;      // GaussianScan
    std::vector<PhasePoint> centers;  // GaussianScan
};

enum class RunStatus { Converged, MaxIters, Stalled };

std::string to_string(RunStatus s);

struct RunReport {
    std::vector<double> objective_trace;
    std::vector<double> grad_norm_trace;
    std::vector<PhasePoint> recenter_shifts;
    Signal final_signal;
    RunStatus status = RunStatus::MaxIters;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    double final_objective = 0.0;

    explicit RunReport(const TimeGrid& g) : final_signal(g) {}
};

/**
 * Projected gradient ascent on the unit sphere for the ambiguity L^p
 * objective: ascend along the gradient, renormalize, backtrack with Armijo
 * until the step is accepted. Every recenter_every iterations the iterate is
 * shifted so its spectrogram center of mass snaps back to the origin; the
 * shift leaves the objective unchanged and the run aborts if it does not
 * (tolerance 1e-9). The objective trace never decreases beyond 1e-12.
 */
RunReport proj_grad_ascent(const ObjectiveSpec& spec, const TimeGrid& grid,
                           const OptimizerConfig& cfg);

/// Localization operator f -> V_g^* (chi_mask . V_g f): self-adjoint, PSD.
Signal apply_localization(const Signal& g, const DomainMask& mask, const Signal& f);

struct EigenPair {
    double value = 0.0;
    Signal function;
    std::size_t iterations = 0;

    explicit EigenPair(const TimeGrid& g) : function(g) {}
};

/**
 * Power iteration for the top eigenpair of the localization operator with
 * window g over the mask. Deterministic start; eigenvalue lies in
 * [0, ||g||^2]. Throws NoConvergence past max_iters.
 */
EigenPair power_iteration(const Signal& g, const DomainMask& mask, double tol = 1e-10,
                          std::size_t max_iters = 5000);

/**
 * Self-consistent iteration for the p = 2 self-windowed problem: replace the
 * iterate by the top eigenfunction of the localization operator windowed by
 * the iterate itself, tracking the objective. Returns the best iterate seen;
 * status Stalled when the sweep budget runs out first.
 */
RunReport self_consistent(const DomainMask& mask, const OptimizerConfig& cfg);

struct ScanEntry {
    double lambda = 0.0;
    PhasePoint center{};
    double value = 0.0;
};

struct ScanResult {
    std::vector<ScanEntry> entries;
    std::size_t best_index = 0;

    const ScanEntry& best() const { return entries[best_index]; }
};

/**
 * Evaluate the ambiguity L^p objective over the dilated Gaussian family
 * shifted to each center (snapped to the grid). Deterministic order,
 * lexicographic tie-break: earlier (lambda, center) wins ties.
 */
ScanResult gaussian_family_scan(const DomainMask& mask, double p,
                                const std::vector<double>& lambdas,
                                const std::vector<PhasePoint>& centers);

} // namespace amblab
