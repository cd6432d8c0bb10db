#pragma once

#include <string>
#include <vector>

#include "korovkin/bounds.hpp"

namespace korovkin::io {

/// Parses a space descriptor, e.g. "sup", "l1", "lp:p=2", "morrey:p=2,p0=3",
/// "wlp:p=2,w=power(0.5)", "varlp:pfn=affine(1,1.5)", "orlicz:phi=power(2)",
/// "smallmorrey:p=2,lambda=0.5", "weakmp:p=2". A "@2pi" suffix moves the
/// space to [-pi, pi] (sup and lp kinds only).
SpaceSpec parse_space(const std::string& descriptor);

/// Parses "kantorovich", "fejer", optionally with ":n=<degree>".
OperatorSpec parse_operator(const std::string& descriptor);

struct ExperimentConfig {
    std::vector<FunctionHandle> functions;
    std::vector<SpaceSpec> spaces;
    OperatorSpec op;
    std::vector<int> n_values;
    BoundFlavor flavor = BoundFlavor::ShishaMond;
    int resolution = 0;          // 0 keeps each space's own resolution
    int modulus_resolution = 1024;
    std::string out;             // empty = stdout
    std::string format = "csv";  // csv | json
    bool plot = false;
    bool strict = false;
};

/// Loads a JSON experiment manifest. Unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

/// Fixed 12-significant-digit float formatting shared by every emitter; the
/// CSV output is byte-stable across runs for identical configs.
std::string format_double(double v);

std::string bound_reports_csv(const std::vector<BoundReport>& reports, bool strict);
std::string bound_reports_json(const std::vector<BoundReport>& reports, bool strict);

struct MuRow {
    std::string space;
    int n = 0;
    double mu = 0.0;
    double mu_squared = 0.0;
    double est_error = 0.0;
};
std::string mu_table_csv(const std::vector<MuRow>& rows);
std::string mu_table_json(const std::vector<MuRow>& rows);

std::string rate_report_csv(const std::string& space_label, const std::string& fn_name,
                            BoundFlavor flavor, const RateReport& report);
std::string rate_report_json(const std::string& space_label, const std::string& fn_name,
                             BoundFlavor flavor, const RateReport& report);

/// Two log-log polylines (lhs, rhs) with fitted-slope labels.
std::string rate_report_svg(const std::string& title, const RateReport& report);

/// Writes content to path via a temp file + rename, so failed runs leave no
/// partial output. Empty path writes to stdout.
void write_output(const std::string& path, const std::string& content);

} // namespace korovkin::io
