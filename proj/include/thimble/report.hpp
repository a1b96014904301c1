#pragma once

// Run configuration, the end-to-end per-model pipeline, and deterministic
// serialization of its results (sorted-key JSON, fixed-format floats, CSV
// polylines and matrices).

#include <string>
#include <utility>
#include <vector>

#include "thimble/borel.hpp"
#include "thimble/flow.hpp"
#include "thimble/laplace.hpp"
#include "thimble/models.hpp"
#include "thimble/wall.hpp"

namespace thimble {

struct RunConfig {
    ModelKind model = ModelKind::airy;
    double delta = 0.1;              // phase offset from the wall for tracing
    std::vector<double> hbar_grid;   // empty -> per-model default
    int series_terms = 24;           // at most 64
    int pade_order = -1;             // -1 -> default order
    IndexWindow window{-2, 2};       // tower window; ignored elsewhere
    double tol_integrate = 1e-9;
    double tol_G = 1e-9;
    double tol_quad = 1e-8;
    double match_eps = 1e-3;
    std::string out_dir = "out";
    bool emit_paths = true;
    bool emit_matrices = true;
    bool emit_report = true;
    bool emit_series = true;
};

void validate(const RunConfig& cfg);  // throws std::invalid_argument

struct ConnectionRecord {
    std::string source, target;
    int sign = 1;
    double theta_star = 0;
    double arclength = 0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    double tolerance = 0;
};

struct ReportBundle {
    RunConfig config;
    std::string model_name;
    double theta_star = 0;
    std::vector<std::string> saddle_labels;
    JumpMatrices geometric;
    NumericFit resurgent;
    std::vector<ConnectionRecord> connections;
    std::vector<SingularityRecord> singularities;
    LateralReport verification;
    std::vector<CheckResult> checks;
    // branch name -> traced path, emitted as CSV only
    std::vector<std::pair<std::string, FlowPath>> traced;

    bool all_pass() const;
};

ReportBundle run_model(const RunConfig& cfg);

// format: "json" (report.json), "csv_paths" (one file per branch),
// "csv_matrices", "csv_series".  Writes under cfg.out_dir; creates it if
// needed.
void emit(const ReportBundle& b, const std::string& format);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

// Byte-stable serialization and its inverse for the JSON-carried fields
// (traced paths live in the CSV files only).
std::string bundle_to_json(const ReportBundle& b);
ReportBundle bundle_from_json(const std::string& text);

std::string model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);
double wall_phase(ModelKind kind);

}  // namespace thimble
