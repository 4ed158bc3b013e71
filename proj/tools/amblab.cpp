// amblab: time-frequency transforms, concentration optimization, and the
// numerical verification suite, driven by JSON configs and CSV grids.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amblab/domains.hpp"
#include "amblab/errors.hpp"
#include "amblab/functionals.hpp"
#include "amblab/io.hpp"
#include "amblab/optimize.hpp"
#include "amblab/synth.hpp"
#include "amblab/transforms.hpp"
#include "amblab/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using amblab::io::ordered_json;

// Exit codes: 0 ok, 1 verification failure, 2 I/O, 3 schema/config, 4
// numerical divergence.
enum ExitCode { kOk = 0, kVerifyFailed = 1, kIoFailure = 2, kSchemaFailure = 3, kDiverged = 4 };

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw amblab::IoError("cannot create output directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

// The manifest carries the wall time, so it is the one artifact exempt from
// the byte-identical reproducibility guarantee.
void write_manifest(const std::string& dir, const std::string& command,
                    const ordered_json& config, double wall_time_s,
                    const ordered_json& diagnostics = ordered_json::object()) {
    ordered_json m;
    m["command"] = command;
    m["config_hash"] = amblab::io::fnv1a_hex(config.dump());
    m["version"] = kVersion;
    m["schema_version"] = 1;
    m["wall_time_s"] = wall_time_s;
    for (const auto& [key, value] : diagnostics.items()) m[key] = value;
    amblab::io::write_json_file(join(dir, "manifest.json"), m);
}

// AMBLAB_THREADS caps worker parallelism. Execution is currently single
// threaded, which respects every cap; the value is validated so configs stay
// portable to parallel builds.
std::size_t thread_cap() {
    const char* env = std::getenv("AMBLAB_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw amblab::InvalidArgument("AMBLAB_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
}

amblab::Signal load_signal_checked(const std::string& path, std::optional<std::size_t> want_n,
                                   std::optional<double> want_dx) {
    amblab::Signal f = amblab::io::read_signal_csv(path);
    if (want_n && *want_n != f.grid.n)
        throw amblab::SchemaError("signal grid n = " + std::to_string(f.grid.n) +
                                  " does not match requested n = " + std::to_string(*want_n));
    if (want_dx && std::abs(*want_dx - f.grid.dx) > 1e-12 * f.grid.dx)
        throw amblab::SchemaError("signal grid dx does not match requested dx");
    return f;
}

int cmd_ambiguity(const std::string& signal_path, std::optional<std::size_t> n,
                  std::optional<double> dx, const std::string& out_dir, bool quiet) {
    Clock clock;
    const amblab::Signal f = load_signal_checked(signal_path, n, dx);
    const amblab::TFArray A = amblab::ambiguity(f);
    ensure_dir(out_dir);
    amblab::io::write_tfarray_csv(join(out_dir, "ambiguity.csv"), A);

    // Mass in the outer frame of cells flags a box too small for the signal:
    // large values mean periodic wrap-around is contaminating the transform.
    const double leak = amblab::tf_edge_mass_ratio(A);

    ordered_json cfg;
    cfg["signal"] = signal_path;
    cfg["grid"] = ordered_json{{"n", f.grid.n}, {"dx", f.grid.dx}};
    write_manifest(out_dir, "ambiguity", cfg, clock.seconds(),
                   ordered_json{{"edge_mass_ratio", leak}});
    if (!quiet)
        std::cout << "ambiguity: " << f.grid.n << " x " << f.grid.n
                  << " cells, edge mass ratio " << leak << " -> "
                  << join(out_dir, "ambiguity.csv") << "\n";
    return kOk;
}

int cmd_stft(const std::string& signal_path, const std::string& window_path,
             double window_lambda, std::optional<std::size_t> n, std::optional<double> dx,
             const std::string& out_dir, bool quiet) {
    Clock clock;
    const amblab::Signal f = load_signal_checked(signal_path, n, dx);
    const amblab::Signal g = window_path.empty()
                                 ? amblab::gaussian_signal(f.grid, window_lambda)
                                 : amblab::io::read_signal_csv(window_path);
    const amblab::TFArray V = amblab::stft(f, g);
    ensure_dir(out_dir);
    amblab::io::write_tfarray_csv(join(out_dir, "stft.csv"), V);

    const double leak = amblab::tf_edge_mass_ratio(V);

    ordered_json cfg;
    cfg["signal"] = signal_path;
    cfg["window"] = window_path.empty() ? ordered_json{{"kind", "gaussian"}, {"lambda", window_lambda}}
                                        : ordered_json{{"kind", "file"}, {"path", window_path}};
    cfg["grid"] = ordered_json{{"n", f.grid.n}, {"dx", f.grid.dx}};
    write_manifest(out_dir, "stft", cfg, clock.seconds(),
                   ordered_json{{"edge_mass_ratio", leak}});
    if (!quiet)
        std::cout << "stft: " << f.grid.n << " x " << f.grid.n
                  << " cells, edge mass ratio " << leak << " -> "
                  << join(out_dir, "stft.csv") << "\n";
    return kOk;
}

void write_final_artifacts(const amblab::io::RunConfig& cfg, const amblab::Signal& final_signal,
                           const ordered_json& report) {
    ensure_dir(cfg.out_dir);
    amblab::io::write_signal_csv(join(cfg.out_dir, "final_signal.csv"), final_signal);
    if (cfg.write_report) amblab::io::write_json_file(join(cfg.out_dir, "report.json"), report);
    if (cfg.write_ambiguity)
        amblab::io::write_tfarray_csv(join(cfg.out_dir, "ambiguity.csv"),
                                      amblab::ambiguity(final_signal));
}

amblab::io::RunConfig load_config_with_overrides(const std::string& config_path,
                                                 std::optional<std::uint64_t> seed_override,
                                                 const std::string& out_override,
                                                 std::optional<std::size_t> n_override,
                                                 std::optional<double> dx_override) {
    amblab::io::RunConfig cfg = amblab::io::read_run_config(config_path);
    if (seed_override) {
        cfg.seed = *seed_override;
        cfg.optimizer.seed = *seed_override;
    }
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (n_override || dx_override)
        cfg.grid = amblab::TimeGrid(n_override.value_or(cfg.grid.n),
                                    dx_override.value_or(cfg.grid.dx));
    return cfg;
}

int run_gaussian_scan(const amblab::io::RunConfig& cfg, const std::string& command, bool quiet,
                      const Clock& clock) {
    if (cfg.objective.kind != amblab::ObjectiveSpec::Kind::AmbiguityLp)
        throw amblab::SchemaError("gaussian_scan needs an ambiguity_lp objective");
    const amblab::DomainMask mask = amblab::rasterize(cfg.objective.domain, cfg.grid);
    const amblab::ScanResult res = amblab::gaussian_family_scan(
        mask, cfg.objective.p, cfg.optimizer.lambdas, cfg.optimizer.centers);
    ensure_dir(cfg.out_dir);
    amblab::io::write_json_file(join(cfg.out_dir, "scan.json"),
                                amblab::io::scan_result_to_json(res));
    write_manifest(cfg.out_dir, command, amblab::io::run_config_to_json(cfg), clock.seconds());
    if (!quiet)
        std::cout << "scan: best value " << res.best().value << " at lambda "
                  << res.best().lambda << "\n";
    return kOk;
}

int cmd_optimize(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 const std::string& out_override, std::optional<std::size_t> n_override,
                 std::optional<double> dx_override, bool quiet) {
    Clock clock;
    amblab::io::RunConfig cfg = load_config_with_overrides(config_path, seed_override,
                                                           out_override, n_override, dx_override);

    using Method = amblab::OptimizerConfig::Method;
    using Kind = amblab::ObjectiveSpec::Kind;

    if (cfg.optimizer.method == Method::GaussianScan)
        return run_gaussian_scan(cfg, "optimize", quiet, clock);

    if (cfg.optimizer.method == Method::PowerIter) {
        if (cfg.objective.kind != Kind::FixedWindowLp || cfg.objective.p != 2.0)
            throw amblab::SchemaError("power_iter needs a fixed_window_lp objective with p = 2");
        const amblab::Signal g = amblab::resolve_window(cfg.objective.window, cfg.grid);
        const amblab::DomainMask mask = amblab::rasterize(cfg.objective.domain, cfg.grid);
        const amblab::EigenPair ep = amblab::power_iteration(g, mask);
        ordered_json rep;
        rep["seed"] = cfg.seed;
        rep["method"] = "power_iter";
        rep["eigenvalue"] = ep.value;
        rep["iterations"] = ep.iterations;
        rep["final_objective"] = std::sqrt(std::max(ep.value, 0.0));
        write_final_artifacts(cfg, ep.function, rep);
        write_manifest(cfg.out_dir, "optimize", amblab::io::run_config_to_json(cfg),
                       clock.seconds());
        if (!quiet) std::cout << "power_iter: eigenvalue " << ep.value << "\n";
        return kOk;
    }

    amblab::RunReport report(cfg.grid);
    if (cfg.optimizer.method == Method::SelfConsistent) {
        if (cfg.objective.kind != Kind::AmbiguityLp || cfg.objective.p != 2.0)
            throw amblab::SchemaError("self_consistent needs an ambiguity_lp objective with p = 2");
        const amblab::DomainMask mask = amblab::rasterize(cfg.objective.domain, cfg.grid);
        report = amblab::self_consistent(mask, cfg.optimizer);
    } else {
        report = amblab::proj_grad_ascent(cfg.objective, cfg.grid, cfg.optimizer);
    }

    write_final_artifacts(cfg, report.final_signal, amblab::io::run_report_to_json(report));
    write_manifest(cfg.out_dir, "optimize", amblab::io::run_config_to_json(cfg), clock.seconds());
    if (!quiet)
        std::cout << "optimize: " << amblab::to_string(report.status) << ", objective "
                  << report.final_objective << " after "
                  << (report.objective_trace.empty() ? 0 : report.objective_trace.size() - 1)
                  << " iterations\n";
    return kOk;
}

int cmd_verify(const std::vector<std::string>& names, std::uint64_t seed,
               const std::string& out_dir, bool quiet) {
    Clock clock;
    const std::vector<amblab::CheckReport> reports = amblab::run_verify(names, seed);
    ensure_dir(out_dir);
    amblab::io::write_json_file(join(out_dir, "verify_report.json"),
                                amblab::io::check_reports_to_json(reports));

    ordered_json cfg;
    cfg["checks"] = names.empty() ? std::vector<std::string>{"all"} : names;
    cfg["seed"] = seed;
    write_manifest(out_dir, "verify", cfg, clock.seconds());

    if (!quiet) std::cout << amblab::format_reports(reports);
    bool all = true;
    for (const auto& rep : reports) all = all && rep.passed;
    if (!quiet)
        std::cout << (all ? "all checks passed" : "CHECK FAILURES PRESENT") << " ("
                  << reports.size() << " reports)\n";
    return all ? kOk : kVerifyFailed;
}

int cmd_scan(const std::string& config_path, std::optional<std::uint64_t> seed_override,
             const std::string& out_override, std::optional<std::size_t> n_override,
             std::optional<double> dx_override, bool quiet) {
    // Scan is optimize with the method pinned; the config may omit it.
    Clock clock;
    amblab::io::RunConfig cfg = load_config_with_overrides(config_path, seed_override,
                                                           out_override, n_override, dx_override);
    cfg.optimizer.method = amblab::OptimizerConfig::Method::GaussianScan;
    return run_gaussian_scan(cfg, "scan", quiet, clock);
}

int cmd_timecorr(const std::string& signal_path, double a, double b, double p,
                 const std::string& out_dir, bool quiet) {
    Clock clock;
    const amblab::Signal f = amblab::io::read_signal_csv(signal_path);
    const amblab::Mask1D mask = amblab::rasterize_1d(amblab::Domain1D::interval(a, b), f.grid);
    const double value = amblab::objective_timecorr(f, mask, p);
    const double bound = std::pow(amblab::measure_1d(mask), 1.0 / p);

    ensure_dir(out_dir);
    ordered_json rep;
    rep["interval"] = ordered_json::array({a, b});
    rep["p"] = p;
    rep["value"] = value;
    rep["bound"] = bound;
    amblab::io::write_json_file(join(out_dir, "timecorr.json"), rep);

    ordered_json cfg;
    cfg["signal"] = signal_path;
    cfg["interval"] = ordered_json::array({a, b});
    cfg["p"] = p;
    write_manifest(out_dir, "timecorr", cfg, clock.seconds());
    if (!quiet) std::cout << "timecorr: value " << value << " (bound " << bound << ")\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-frequency concentration toolbox"};
    app.require_subcommand(1);

    std::string config_path, signal_path, window_path;
    std::string out_dir = "out";   // commands that always write somewhere
    std::string out_override;      // config-driven commands: empty = keep config dir
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_dx;
    bool quiet = false;
    double window_lambda = 1.0;
    double tc_a = 0.0, tc_b = 1.0, tc_p = 1.0;
    std::vector<std::string> check_names;

    app.add_flag("--quiet", quiet, "suppress progress output");

    auto* amb = app.add_subcommand("ambiguity", "self-transform magnitude grid of a signal file");
    amb->add_option("signal", signal_path, "signal CSV (with .json sidecar)")->required();
    amb->add_option("--out", out_dir, "output directory");
    amb->add_option("--grid-n", grid_n, "expected grid size (validated against the sidecar)");
    amb->add_option("--grid-dx", grid_dx, "expected grid step (validated against the sidecar)");

    auto* st = app.add_subcommand("stft", "windowed transform grid of a signal file");
    st->add_option("signal", signal_path, "signal CSV (with .json sidecar)")->required();
    st->add_option("--window", window_path, "window signal CSV; default Gaussian");
    st->add_option("--window-lambda", window_lambda, "Gaussian window width when no file given");
    st->add_option("--out", out_dir, "output directory");
    st->add_option("--grid-n", grid_n, "expected grid size");
    st->add_option("--grid-dx", grid_dx, "expected grid step");

    auto* opt = app.add_subcommand("optimize", "run the optimizer described by a JSON config");
    opt->add_option("--config", config_path, "run configuration JSON")->required();
    opt->add_option("--seed", seed, "override the config seed");
    opt->add_option("--out", out_override, "override the config output directory");
    opt->add_option("--grid-n", grid_n, "override the config grid size");
    opt->add_option("--grid-dx", grid_dx, "override the config grid step");

    auto* ver = app.add_subcommand("verify", "run numerical consistency checks");
    ver->add_option("checks", check_names, "check names, or 'all'");
    ver->add_option("--seed", seed, "seed for randomized checks");
    ver->add_option("--out", out_dir, "output directory");

    auto* sc = app.add_subcommand("scan", "evaluate the dilated Gaussian family baseline");
    sc->add_option("--config", config_path, "run configuration JSON")->required();
    sc->add_option("--seed", seed, "override the config seed");
    sc->add_option("--out", out_override, "override the config output directory");
    sc->add_option("--grid-n", grid_n, "override the config grid size");
    sc->add_option("--grid-dx", grid_dx, "override the config grid step");

    auto* tc = app.add_subcommand("timecorr", "time-correlation objective of a signal file");
    tc->add_option("signal", signal_path, "signal CSV (with .json sidecar)")->required();
    tc->add_option("--a", tc_a, "interval left endpoint");
    tc->add_option("--b", tc_b, "interval right endpoint");
    tc->add_option("--p", tc_p, "exponent p >= 1");
    tc->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        thread_cap();
        if (amb->parsed()) return cmd_ambiguity(signal_path, grid_n, grid_dx, out_dir, quiet);
        if (st->parsed())
            return cmd_stft(signal_path, window_path, window_lambda, grid_n, grid_dx, out_dir,
                            quiet);
        if (opt->parsed())
            return cmd_optimize(config_path, seed, out_override, grid_n, grid_dx, quiet);
        if (ver->parsed()) return cmd_verify(check_names, seed.value_or(0), out_dir, quiet);
        if (sc->parsed()) return cmd_scan(config_path, seed, out_override, grid_n, grid_dx, quiet);
        if (tc->parsed()) return cmd_timecorr(signal_path, tc_a, tc_b, tc_p, out_dir, quiet);
    } catch (const amblab::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kSchemaFailure;
    } catch (const amblab::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const amblab::NonFiniteObjective& e) {
        std::cerr << "numerical divergence: " << e.what() << "\n";
        return kDiverged;
    } catch (const amblab::NoConvergence& e) {
        std::cerr << "numerical divergence: " << e.what() << "\n";
        return kDiverged;
    } catch (const amblab::Error& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kSchemaFailure;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return kIoFailure;
    }
    return kOk;
}
