#include "amblab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "amblab/errors.hpp"

namespace amblab::io {

namespace {

// %.17g round-trips doubles exactly and keeps files diffable.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

TimeGrid grid_from_sidecar(const std::string& csv_path) {
    ordered_json j = read_json_file(sidecar_path(csv_path));
    if (!j.contains("n") || !j.contains("dx"))
        throw SchemaError("sidecar missing n or dx: " + sidecar_path(csv_path));
    try {
        return TimeGrid(j.at("n").get<std::size_t>(), j.at("dx").get<double>());
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("sidecar has malformed n or dx: " + sidecar_path(csv_path));
    } catch (const InvalidArgument& e) {
        throw SchemaError(std::string("sidecar grid invalid: ") + e.what());
    }
}

void write_sidecar(const std::string& csv_path, const TimeGrid& grid) {
    ordered_json j;
    j["n"] = grid.n;
    j["dx"] = grid.dx;
    write_json_file(sidecar_path(csv_path), j);
}

// Reads the next non-empty line, tracking the 1-based line number so schema
// errors can point at the offending row.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

std::string at_line(const std::string& path, std::size_t lineno) {
    return path + ":" + std::to_string(lineno);
}

std::vector<double> parse_row(const std::string& line, std::size_t ncols, const std::string& path,
                              std::size_t lineno) {
    std::vector<double> row;
    row.reserve(ncols);
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        std::string cell = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            row.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw SchemaError("malformed numeric cell '" + cell + "' at " + at_line(path, lineno));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (row.size() != ncols)
        throw SchemaError("expected " + std::to_string(ncols) + " columns at " +
                          at_line(path, lineno));
    return row;
}

template <typename T>
T get_field(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("malformed field: ") + key);
    }
}

const ordered_json& require(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
    return j.at(key);
}

template <typename T>
T get_field_or(const ordered_json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("malformed field: ") + key);
    }
}

PhasePoint point_from_json(const ordered_json& j, const char* key) {
    auto v = get_field<std::vector<double>>(j, key);
    if (v.size() != 2) throw SchemaError(std::string(key) + " must be [x, omega]");
    return PhasePoint{v[0], v[1]};
}

ordered_json point_to_json(const PhasePoint& p) { return ordered_json::array({p.x, p.w}); }

} // namespace

std::string sidecar_path(const std::string& path) { return path + ".json"; }

void write_signal_csv(const std::string& path, const Signal& f) {
    auto out = open_out(path);
    out << "t,re,im\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        out << fmt(f.grid.t(k)) << ',' << fmt(f.samples[k].real()) << ','
            << fmt(f.samples[k].imag()) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
    write_sidecar(path, f.grid);
}

Signal read_signal_csv(const std::string& path) {
    TimeGrid grid = grid_from_sidecar(path);
    auto in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno) || line != "t,re,im")
        throw SchemaError("expected header t,re,im at " + at_line(path, lineno));
    Signal f(grid);
    for (std::size_t k = 0; k < grid.n; ++k) {
        if (!next_line(in, line, lineno))
            throw SchemaError("truncated signal file (need " + std::to_string(grid.n) +
                              " rows): " + path);
        auto row = parse_row(line, 3, path, lineno);
        f.samples[k] = cplx{row[1], row[2]};
    }
    if (next_line(in, line, lineno))
        throw SchemaError("trailing rows at " + at_line(path, lineno));
    return f;
}

void write_tfarray_csv(const std::string& path, const TFArray& a) {
    auto out = open_out(path);
    out << "x,omega,re,im,abs\n";
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t l = 0; l < a.rows(); ++l) {
            const cplx v = a.at(k, l);
            out << fmt(a.grid.t(k)) << ',' << fmt(a.grid.w(l)) << ',' << fmt(v.real()) << ','
                << fmt(v.imag()) << ',' << fmt(std::abs(v)) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
    write_sidecar(path, a.grid);
}

TFArray read_tfarray_csv(const std::string& path) {
    TimeGrid grid = grid_from_sidecar(path);
    auto in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno) || line != "x,omega,re,im,abs")
        throw SchemaError("expected header x,omega,re,im,abs at " + at_line(path, lineno));
    TFArray a(grid);
    for (std::size_t i = 0; i < grid.n * grid.n; ++i) {
        if (!next_line(in, line, lineno)) throw SchemaError("truncated array file: " + path);
        auto row = parse_row(line, 5, path, lineno);
        a.values[i] = cplx{row[2], row[3]};
    }
    if (next_line(in, line, lineno))
        throw SchemaError("trailing rows at " + at_line(path, lineno));
    return a;
}

void write_mask_csv(const std::string& path, const DomainMask& m) {
    auto out = open_out(path);
    const std::size_t n = m.grid.n;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            out << (m.at(k, l) ? '1' : '0');
            out << (l + 1 < n ? ',' : '\n');
        }
    }
    if (!out) throw IoError("write failed: " + path);
    write_sidecar(path, m.grid);
}

DomainMask read_mask_csv(const std::string& path) {
    TimeGrid grid = grid_from_sidecar(path);
    auto in = open_in(path);
    DomainMask m(grid);
    std::string line;
    std::size_t lineno = 0;
    for (std::size_t k = 0; k < grid.n; ++k) {
        if (!next_line(in, line, lineno)) throw SchemaError("truncated mask file: " + path);
        std::size_t pos = 0;
        for (std::size_t l = 0; l < grid.n; ++l) {
            std::size_t comma = line.find(',', pos);
            std::string cell = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
            if (cell == "1") {
                m.cells[k * grid.n + l] = 1;
                ++m.count;
            } else if (cell != "0") {
                throw SchemaError("mask cells must be 0 or 1 at " + at_line(path, lineno));
            }
            if (comma == std::string::npos) {
                if (l + 1 != grid.n)
                    throw SchemaError("short mask row at " + at_line(path, lineno));
                break;
            }
            pos = comma + 1;
        }
    }
    if (next_line(in, line, lineno))
        throw SchemaError("trailing rows at " + at_line(path, lineno));
    return m;
}

ordered_json domain_to_json(const DomainSpec& spec) {
    ordered_json j;
    switch (spec.kind) {
        case DomainSpec::Kind::Ball:
            j["shape"] = "ball";
            j["center"] = point_to_json(spec.center);
            j["radius"] = spec.r;
            break;
        case DomainSpec::Kind::Rect:
            j["shape"] = "rect";
            j["x0"] = spec.box.x0;
            j["x1"] = spec.box.x1;
            j["omega0"] = spec.box.w0;
            j["omega1"] = spec.box.w1;
            break;
        case DomainSpec::Kind::Annulus:
            j["shape"] = "annulus";
            j["center"] = point_to_json(spec.center);
            j["r_in"] = spec.r_in;
            j["r_out"] = spec.r_out;
            break;
        case DomainSpec::Kind::Union: {
            j["shape"] = "union";
            ordered_json parts = ordered_json::array();
            for (const auto& part : spec.parts) parts.push_back(domain_to_json(part));
            j["parts"] = std::move(parts);
            break;
        }
        case DomainSpec::Kind::Difference:
            j["shape"] = "difference";
            j["minuend"] = domain_to_json(spec.parts[0]);
            j["subtrahend"] = domain_to_json(spec.parts[1]);
            break;
        case DomainSpec::Kind::MaskFile:
            j["shape"] = "mask_file";
            j["path"] = spec.path;
            break;
    }
    return j;
}

DomainSpec domain_from_json(const ordered_json& j) {
    auto shape = get_field<std::string>(j, "shape");
    try {
        if (shape == "ball")
            return DomainSpec::ball(point_from_json(j, "center"), get_field<double>(j, "radius"));
        if (shape == "rect")
            return DomainSpec::rect(get_field<double>(j, "x0"), get_field<double>(j, "x1"),
                                    get_field<double>(j, "omega0"), get_field<double>(j, "omega1"));
        if (shape == "annulus")
            return DomainSpec::annulus(point_from_json(j, "center"), get_field<double>(j, "r_in"),
                                       get_field<double>(j, "r_out"));
        if (shape == "union") {
            if (!j.contains("parts") || !j.at("parts").is_array())
                throw SchemaError("union needs a parts array");
            std::vector<DomainSpec> parts;
            for (const auto& part : j.at("parts")) parts.push_back(domain_from_json(part));
            return DomainSpec::union_of(std::move(parts));
        }
        if (shape == "difference")
            return DomainSpec::difference(domain_from_json(require(j, "minuend")),
                                          domain_from_json(require(j, "subtrahend")));
        if (shape == "mask_file")
            return DomainSpec::mask_file(get_field<std::string>(j, "path"));
    } catch (const InvalidArgument& e) {
        throw SchemaError(std::string("invalid domain: ") + e.what());
    }
    throw SchemaError("unknown domain shape: " + shape);
}

namespace {

ordered_json window_to_json(const WindowSpec& w) {
    ordered_json j;
    if (w.kind == WindowSpec::Kind::Gaussian) {
        j["kind"] = "gaussian";
        j["lambda"] = w.lambda;
    } else {
        j["kind"] = "file";
        j["path"] = w.path;
    }
    return j;
}

WindowSpec window_from_json(const ordered_json& j) {
    WindowSpec w;
    auto kind = get_field<std::string>(j, "kind");
    if (kind == "gaussian") {
        w.kind = WindowSpec::Kind::Gaussian;
        w.lambda = get_field_or<double>(j, "lambda", 1.0);
        if (!(w.lambda > 0.0)) throw SchemaError("window lambda must be positive");
    } else if (kind == "file") {
        w.kind = WindowSpec::Kind::File;
        w.path = get_field<std::string>(j, "path");
    } else {
        throw SchemaError("unknown window kind: " + kind);
    }
    return w;
}

ordered_json intervals_to_json(const Domain1D& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& [a, b] : d.intervals) arr.push_back(ordered_json::array({a, b}));
    return arr;
}

Domain1D intervals_from_json(const ordered_json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("intervals must be a nonempty array");
    Domain1D d;
    for (const auto& pair : j) {
        auto v = pair.get<std::vector<double>>();
        if (v.size() != 2 || !(v[0] < v[1]))
            throw SchemaError("each interval must be [a, b] with a < b");
        d.intervals.emplace_back(v[0], v[1]);
    }
    return d;
}

} // namespace

ordered_json objective_to_json(const ObjectiveSpec& spec) {
    ordered_json j;
    switch (spec.kind) {
        case ObjectiveSpec::Kind::AmbiguityLp:
            j["kind"] = "ambiguity_lp";
            j["p"] = spec.p;
            j["domain"] = domain_to_json(spec.domain);
            break;
        case ObjectiveSpec::Kind::AmbiguityLinf:
            j["kind"] = "ambiguity_linf";
            j["domain"] = domain_to_json(spec.domain);
            break;
        case ObjectiveSpec::Kind::TimeCorrelationLp:
            j["kind"] = "time_correlation_lp";
            j["p"] = spec.p;
            j["intervals"] = intervals_to_json(spec.interval);
            break;
        case ObjectiveSpec::Kind::FixedWindowLp:
            j["kind"] = "fixed_window_lp";
            j["p"] = spec.p;
            j["domain"] = domain_to_json(spec.domain);
            j["window"] = window_to_json(spec.window);
            break;
        case ObjectiveSpec::Kind::MqNormalizedLp:
            j["kind"] = "mq_normalized_lp";
            j["p"] = spec.p;
            j["q"] = spec.q;
            j["domain"] = domain_to_json(spec.domain);
            j["window"] = window_to_json(spec.window);
            break;
    }
    return j;
}

ObjectiveSpec objective_from_json(const ordered_json& j) {
    ObjectiveSpec spec;
    auto kind = get_field<std::string>(j, "kind");
    if (kind == "ambiguity_lp") {
        spec.kind = ObjectiveSpec::Kind::AmbiguityLp;
        spec.p = get_field_or<double>(j, "p", 2.0);
        spec.domain = domain_from_json(require(j, "domain"));
    } else if (kind == "ambiguity_linf") {
        spec.kind = ObjectiveSpec::Kind::AmbiguityLinf;
        spec.domain = domain_from_json(require(j, "domain"));
    } else if (kind == "time_correlation_lp") {
        spec.kind = ObjectiveSpec::Kind::TimeCorrelationLp;
        spec.p = get_field_or<double>(j, "p", 2.0);
        if (!j.contains("intervals")) throw SchemaError("missing field: intervals");
        spec.interval = intervals_from_json(j.at("intervals"));
    } else if (kind == "fixed_window_lp") {
        spec.kind = ObjectiveSpec::Kind::FixedWindowLp;
        spec.p = get_field_or<double>(j, "p", 2.0);
        spec.domain = domain_from_json(require(j, "domain"));
        if (j.contains("window")) spec.window = window_from_json(j.at("window"));
    } else if (kind == "mq_normalized_lp") {
        spec.kind = ObjectiveSpec::Kind::MqNormalizedLp;
        spec.p = get_field_or<double>(j, "p", 2.0);
        spec.q = get_field_or<double>(j, "q", 2.0);
        spec.domain = domain_from_json(require(j, "domain"));
        if (j.contains("window")) spec.window = window_from_json(j.at("window"));
    } else {
        throw SchemaError("unknown objective kind: " + kind);
    }
    if (spec.kind != ObjectiveSpec::Kind::AmbiguityLinf && !(spec.p >= 1.0))
        throw SchemaError("objective exponent p must be >= 1");
    if (spec.kind == ObjectiveSpec::Kind::MqNormalizedLp && !(spec.q > 0.0))
        throw SchemaError("objective exponent q must be positive");
    return spec;
}

namespace {

ordered_json start_to_json(const StartSpec& s) {
    ordered_json j;
    switch (s.kind) {
        case StartSpec::Kind::Random: j["kind"] = "random"; break;
        case StartSpec::Kind::Gaussian:
            j["kind"] = "gaussian";
            j["lambda"] = s.lambda;
            break;
        case StartSpec::Kind::File:
            j["kind"] = "file";
            j["path"] = s.path;
            break;
    }
    return j;
}

StartSpec start_from_json(const ordered_json& j) {
    StartSpec s;
    auto kind = get_field<std::string>(j, "kind");
    if (kind == "random") {
        s.kind = StartSpec::Kind::Random;
    } else if (kind == "gaussian") {
        s.kind = StartSpec::Kind::Gaussian;
        s.lambda = get_field_or<double>(j, "lambda", 1.0);
        if (!(s.lambda > 0.0)) throw SchemaError("start lambda must be positive");
    } else if (kind == "file") {
        s.kind = StartSpec::Kind::File;
        s.path = get_field<std::string>(j, "path");
    } else {
        throw SchemaError("unknown start kind: " + kind);
    }
    return s;
}

std::string method_name(OptimizerConfig::Method m) {
    switch (m) {
        case OptimizerConfig::Method::ProjGrad: return "proj_grad";
        case OptimizerConfig::Method::PowerIter: return "power_iter";
        case OptimizerConfig::Method::SelfConsistent: return "self_consistent";
        case OptimizerConfig::Method::GaussianScan: return "gaussian_scan";
    }
    return "proj_grad";
}

OptimizerConfig::Method method_from_name(const std::string& name) {
    if (name == "proj_grad") return OptimizerConfig::Method::ProjGrad;
    if (name == "power_iter") return OptimizerConfig::Method::PowerIter;
    if (name == "self_consistent") return OptimizerConfig::Method::SelfConsistent;
    if (name == "gaussian_scan") return OptimizerConfig::Method::GaussianScan;
    throw SchemaError("unknown optimizer method: " + name);
}

} // namespace

ordered_json optimizer_to_json(const OptimizerConfig& cfg) {
    ordered_json j;
    j["method"] = method_name(cfg.method);
    j["max_iters"] = cfg.max_iters;
    j["step0"] = cfg.step0;
    j["armijo"] = ordered_json{{"c", cfg.armijo.c}, {"shrink", cfg.armijo.shrink}};
    j["tol_grad"] = cfg.tol_grad;
    j["tol_obj"] = cfg.tol_obj;
    j["recenter_every"] = cfg.recenter_every;
    j["start"] = start_to_json(cfg.start);
    if (!cfg.lambdas.empty()) j["lambdas"] = cfg.lambdas;
    if (!cfg.centers.empty()) {
        ordered_json centers = ordered_json::array();
        for (const auto& c : cfg.centers) centers.push_back(point_to_json(c));
        j["centers"] = std::move(centers);
    }
    return j;
}

OptimizerConfig optimizer_from_json(const ordered_json& j) {
    OptimizerConfig cfg;
    cfg.method = method_from_name(get_field_or<std::string>(j, "method", "proj_grad"));
    cfg.max_iters = get_field_or<std::size_t>(j, "max_iters", cfg.max_iters);
    cfg.step0 = get_field_or<double>(j, "step0", cfg.step0);
    if (j.contains("armijo")) {
        cfg.armijo.c = get_field_or<double>(j.at("armijo"), "c", cfg.armijo.c);
        cfg.armijo.shrink = get_field_or<double>(j.at("armijo"), "shrink", cfg.armijo.shrink);
    }
    cfg.tol_grad = get_field_or<double>(j, "tol_grad", cfg.tol_grad);
    cfg.tol_obj = get_field_or<double>(j, "tol_obj", cfg.tol_obj);
    cfg.recenter_every = get_field_or<std::size_t>(j, "recenter_every", cfg.recenter_every);
    if (j.contains("start")) cfg.start = start_from_json(j.at("start"));
    cfg.lambdas = get_field_or<std::vector<double>>(j, "lambdas", {});
    if (j.contains("centers")) {
        for (const auto& c : j.at("centers")) {
            auto v = c.get<std::vector<double>>();
            if (v.size() != 2) throw SchemaError("each center must be [x, omega]");
            cfg.centers.push_back(PhasePoint{v[0], v[1]});
        }
    }
    if (!(cfg.step0 > 0.0) || !(cfg.armijo.c > 0.0 && cfg.armijo.c < 1.0) ||
        !(cfg.armijo.shrink > 0.0 && cfg.armijo.shrink < 1.0))
        throw SchemaError("step0 must be positive and Armijo constants must lie in (0, 1)");
    return cfg;
}

ordered_json run_config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["grid"] = ordered_json{{"n", cfg.grid.n}, {"dx", cfg.grid.dx}};
    j["seed"] = cfg.seed;
    j["objective"] = objective_to_json(cfg.objective);
    j["optimizer"] = optimizer_to_json(cfg.optimizer);
    j["outputs"] = ordered_json{{"dir", cfg.out_dir},
                                {"write_ambiguity", cfg.write_ambiguity},
                                {"write_report", cfg.write_report}};
    return j;
}

RunConfig run_config_from_json(const ordered_json& j) {
    RunConfig cfg;
    if (!j.contains("grid")) throw SchemaError("missing field: grid");
    try {
        cfg.grid = TimeGrid(get_field<std::size_t>(j.at("grid"), "n"),
                            get_field<double>(j.at("grid"), "dx"));
    } catch (const InvalidArgument& e) {
        throw SchemaError(std::string("invalid grid: ") + e.what());
    }
    cfg.seed = get_field_or<std::uint64_t>(j, "seed", 0);
    if (!j.contains("objective")) throw SchemaError("missing field: objective");
    cfg.objective = objective_from_json(j.at("objective"));
    if (j.contains("optimizer")) cfg.optimizer = optimizer_from_json(j.at("optimizer"));
    cfg.optimizer.seed = cfg.seed;
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        cfg.out_dir = get_field_or<std::string>(o, "dir", cfg.out_dir);
        cfg.write_ambiguity = get_field_or<bool>(o, "write_ambiguity", cfg.write_ambiguity);
        cfg.write_report = get_field_or<bool>(o, "write_report", cfg.write_report);
    }
    return cfg;
}

RunConfig read_run_config(const std::string& path) {
    return run_config_from_json(read_json_file(path));
}

ordered_json run_report_to_json(const RunReport& rep) {
    ordered_json j;
    j["seed"] = rep.seed;
    j["status"] = to_string(rep.status);
    j["final_objective"] = rep.final_objective;
    j["iterations"] = rep.objective_trace.empty() ? 0 : rep.objective_trace.size() - 1;
    j["objective_trace"] = rep.objective_trace;
    j["grad_norm_trace"] = rep.grad_norm_trace;
    ordered_json shifts = ordered_json::array();
    for (const auto& s : rep.recenter_shifts) shifts.push_back(point_to_json(s));
    j["recenter_shifts"] = std::move(shifts);
    return j;
}

ordered_json scan_result_to_json(const ScanResult& res) {
    auto entry_json = [](const ScanEntry& e) {
        return ordered_json{
            {"lambda", e.lambda}, {"center", point_to_json(e.center)}, {"value", e.value}};
    };
    ordered_json j;
    j["best"] = entry_json(res.best());
    ordered_json entries = ordered_json::array();
    for (const auto& e : res.entries) entries.push_back(entry_json(e));
    j["entries"] = std::move(entries);
    return j;
}

ordered_json check_reports_to_json(const std::vector<CheckReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json j;
        j["name"] = rep.name;
        j["passed"] = rep.passed;
        j["tolerance"] = rep.tolerance;
        ordered_json measured = ordered_json::array();
        for (const auto& m : rep.measured)
            measured.push_back(ordered_json{{"label", m.label}, {"value", m.value}});
        j["measured"] = std::move(measured);
        j["details"] = rep.details;
        arr.push_back(std::move(j));
    }
    ordered_json root;
    root["checks"] = std::move(arr);
    bool all = true;
    for (const auto& rep : reports) all = all && rep.passed;
    root["all_passed"] = all;
    return root;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ordered_json read_json_file(const std::string& path) {
    auto in = open_in(path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const ordered_json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace amblab::io
