#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "amblab/domains.hpp"
#include "amblab/grid.hpp"
#include "amblab/optimize.hpp"
#include "amblab/verify.hpp"

namespace amblab::io {

using ordered_json = nlohmann::ordered_json;

/// Grid metadata travels next to each CSV in `<path>.json`.
std::string sidecar_path(const std::string& path);

/// Columns t, re, im; one row per sample; sidecar carries {n, dx}.
void write_signal_csv(const std::string& path, const Signal& f);
Signal read_signal_csv(const std::string& path);

/// Columns x, omega, re, im, abs; row-major over (k, l); sidecar as above.
void write_tfarray_csv(const std::string& path, const TFArray& a);
TFArray read_tfarray_csv(const std::string& path);

/// n rows of n comma-separated 0/1 flags; sidecar as above.
void write_mask_csv(const std::string& path, const DomainMask& m);
DomainMask read_mask_csv(const std::string& path);

ordered_json domain_to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const ordered_json& j);

ordered_json objective_to_json(const ObjectiveSpec& spec);
ObjectiveSpec objective_from_json(const ordered_json& j);

ordered_json optimizer_to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_from_json(const ordered_json& j);

/// Full run description: grid, seed, objective, optimizer, outputs.
struct RunConfig {
    TimeGrid grid{256, 1.0 / 16.0};
    std::uint64_t seed = 0;
    ObjectiveSpec objective{};
    OptimizerConfig optimizer{};
    std::string out_dir = "out";
    bool write_ambiguity = false;
    bool write_report = true;
};

ordered_json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const ordered_json& j);
RunConfig read_run_config(const std::string& path);

/// Reproducible report body; wall time is reported in the manifest instead
/// so identical runs produce identical bytes.
ordered_json run_report_to_json(const RunReport& rep);

ordered_json scan_result_to_json(const ScanResult& res);

/// Timing-free, so identical runs serialize to identical bytes.
ordered_json check_reports_to_json(const std::vector<CheckReport>& reports);

/// 64-bit FNV-1a of a byte string, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

ordered_json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);

void write_text_file(const std::string& path, const std::string& text);

} // namespace amblab::io
