#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "korovkin/io.hpp"

namespace {

using namespace korovkin;

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string format;
    int resolution = 0;
    int modulus_resolution = 0;
    bool plot = false;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON experiment manifest");
    cmd->add_option("--out", flags.out, "output path (default: stdout)");
    cmd->add_option("--format", flags.format, "csv or json");
    cmd->add_option("--resolution", flags.resolution, "norm kernel grid resolution override");
    cmd->add_option("--modulus-resolution", flags.modulus_resolution,
                    "starting grid for the modulus estimator");
    cmd->add_flag("--plot", flags.plot, "emit an SVG log-log plot (rate-sweep)");
    cmd->add_flag("--strict", flags.strict, "also report raw-value bound comparisons");
}

void require_ascending(const std::vector<int>& ns) {
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw Error("n values must be >= 1");
        if (i > 0 && ns[i] <= ns[i - 1]) throw Error("n values must be strictly ascending");
    }
}

io::ExperimentConfig merge_config(const CommonFlags& flags,
                                  const std::vector<std::string>& fns,
                                  const std::vector<std::string>& spaces,
                                  const std::string& op,
                                  const std::vector<int>& n_values,
                                  const std::string& flavor) {
    io::ExperimentConfig cfg;
    if (!flags.config_path.empty()) cfg = io::load_config(flags.config_path);
    for (const auto& f : fns) cfg.functions.push_back(builtin_function(f));
    for (const auto& s : spaces) cfg.spaces.push_back(io::parse_space(s));
    if (!op.empty()) cfg.op = io::parse_operator(op);
    if (!n_values.empty()) cfg.n_values = n_values;
    if (!flavor.empty()) cfg.flavor = bound_flavor_from_string(flavor);
    if (!flags.out.empty()) cfg.out = flags.out;
    if (!flags.format.empty()) cfg.format = flags.format;
    if (flags.resolution > 0) cfg.resolution = flags.resolution;
    if (flags.modulus_resolution > 0) cfg.modulus_resolution = flags.modulus_resolution;
    cfg.plot |= flags.plot;
    cfg.strict |= flags.strict;
    if (cfg.format != "csv" && cfg.format != "json") throw Error("format must be csv or json");
    require_ascending(cfg.n_values);
    return cfg;
}

void apply_resolution(io::ExperimentConfig& cfg) {
    if (cfg.resolution > 0) {
        for (auto& s : cfg.spaces) s.resolution = cfg.resolution;
    }
}

BoundOptions bound_options(const io::ExperimentConfig& cfg) {
    BoundOptions opts;
    opts.modulus_resolution = std::max(64, cfg.modulus_resolution);
    return opts;
}

int cmd_norm(const CommonFlags& flags, const std::string& space_desc,
             const std::string& fn_desc) {
    SpaceSpec space = io::parse_space(space_desc);
    if (flags.resolution > 0) space.resolution = flags.resolution;
    const FunctionHandle f = builtin_function(fn_desc);
    const NormResult r = norm(space, f);
    std::cout << io::format_double(r.value) << " est_error=" << io::format_double(r.est_error)
              << " method=" << r.method << "\n";
    return 0;
}

int cmd_mu_table(io::ExperimentConfig cfg) {
    apply_resolution(cfg);
    if (cfg.spaces.empty() || cfg.n_values.empty()) {
        throw Error("mu-table needs at least one space and one n value");
    }
    std::vector<io::MuRow> rows;
    for (const auto& space : cfg.spaces) {
        for (int n : cfg.n_values) {
            const MuResult mu = mu_n_detailed(space, cfg.op.with_n(n));
            io::MuRow row;
            row.space = space.label();
            row.n = n;
            row.mu = mu.value;
            row.mu_squared = mu.value * mu.value;
            row.est_error = mu.err;
            rows.push_back(row);
        }
    }
    io::write_output(cfg.out, cfg.format == "csv" ? io::mu_table_csv(rows)
                                                  : io::mu_table_json(rows));
    return 0;
}

int cmd_bound_check(io::ExperimentConfig cfg) {
    apply_resolution(cfg);
    if (cfg.functions.empty() || cfg.spaces.empty() || cfg.n_values.empty()) {
        throw Error("bound-check needs functions, spaces and n values");
    }
    const BoundOptions opts = bound_options(cfg);
    std::vector<BoundReport> reports;
    for (const auto& f : cfg.functions) {
        for (const auto& space : cfg.spaces) {
            for (int n : cfg.n_values) {
                reports.push_back(evaluate_bound(space, cfg.op.with_n(n), f, cfg.flavor, opts));
            }
        }
    }
    io::write_output(cfg.out, cfg.format == "csv" ? io::bound_reports_csv(reports, cfg.strict)
                                                  : io::bound_reports_json(reports, cfg.strict));

    std::size_t held = 0;
    const BoundReport* worst = nullptr;
    for (const auto& r : reports) {
        held += r.holds ? 1 : 0;
        if (!worst || r.ratio > worst->ratio) worst = &r;
    }
    std::cerr << "summary: " << held << "/" << reports.size() << " bounds hold";
    if (worst) {
        std::cerr << ", worst ratio " << io::format_double(worst->ratio) << " ("
                  << worst->function << ", " << worst->space << ", n=" << worst->n << ")";
    }
    std::cerr << "\n";
    return held == reports.size() ? 0 : 1;
}

int cmd_rate_sweep(io::ExperimentConfig cfg) {
    apply_resolution(cfg);
    if (cfg.functions.empty() || cfg.spaces.empty()) {
        throw Error("rate-sweep needs at least one function and one space");
    }
    if (cfg.n_values.size() < 4) throw Error("rate-sweep needs at least 4 n values");
    const BoundOptions opts = bound_options(cfg);

    std::string body;
    bool first = true;
    int plot_index = 0;
    const std::size_t pairs = cfg.functions.size() * cfg.spaces.size();
    std::vector<std::pair<std::string, std::string>> plots;
    for (const auto& f : cfg.functions) {
        for (const auto& space : cfg.spaces) {
            const RateReport report =
                rate_sweep(space, cfg.op, f, cfg.n_values, cfg.flavor, opts);
            if (cfg.format == "csv") {
                std::string chunk = io::rate_report_csv(space.label(), f.name, cfg.flavor, report);
                if (!first) chunk = chunk.substr(chunk.find('\n') + 1); // drop repeated header
                body += chunk;
            } else {
                body += io::rate_report_json(space.label(), f.name, cfg.flavor, report);
            }
            first = false;

            auto slope_str = [](const SlopeFit& s) {
                return s.defined ? io::format_double(s.slope) : std::string("undefined");
            };
            std::cerr << f.name << " in " << space.label()
                      << ": slope_lhs=" << slope_str(report.slope_lhs)
                      << " slope_rhs=" << slope_str(report.slope_rhs) << "\n";

            if (cfg.plot) {
                std::filesystem::path base =
                    cfg.out.empty() ? std::filesystem::path("rate.svg") : std::filesystem::path(cfg.out);
                base.replace_extension("");
                std::string svg_path = base.string();
                if (pairs > 1) svg_path += "_" + std::to_string(plot_index++);
                svg_path += ".svg";
                const std::string title = f.name + " in " + space.label();
                plots.emplace_back(svg_path, io::rate_report_svg(title, report));
            }
        }
    }
    // All computation succeeded; only now touch the filesystem.
    io::write_output(cfg.out, body);
    for (const auto& [path, svg] : plots) io::write_output(path, svg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive-operator approximation bounds in Banach function space norms"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::vector<std::string> fns, spaces;
    std::string op_desc, flavor, norm_space, norm_fn;
    std::vector<int> n_values;

    auto* norm_cmd = app.add_subcommand("norm", "evaluate one space norm of one function");
    add_common(norm_cmd, flags);
    norm_cmd->add_option("--space", norm_space, "space descriptor")->required();
    norm_cmd->add_option("--fn", norm_fn, "function descriptor")->required();

    auto* mu_cmd = app.add_subcommand("mu-table", "tabulate mu_n per space and n");
    add_common(mu_cmd, flags);
    mu_cmd->add_option("--space", spaces, "space descriptor (repeatable)");
    mu_cmd->add_option("--operator", op_desc, "operator descriptor");
    mu_cmd->add_option("--n", n_values, "n values (repeatable)");

    auto* bound_cmd = app.add_subcommand("bound-check", "evaluate bound reports over a grid");
    add_common(bound_cmd, flags);
    bound_cmd->add_option("--fn", fns, "function descriptor (repeatable)");
    bound_cmd->add_option("--space", spaces, "space descriptor (repeatable)");
    bound_cmd->add_option("--operator", op_desc, "operator descriptor");
    bound_cmd->add_option("--n", n_values, "n values (repeatable)");
    bound_cmd->add_option("--flavor", flavor, "shisha-mond | devore | trig-shisha-mond | trig-devore");

    auto* rate_cmd = app.add_subcommand("rate-sweep", "per-n table plus fitted log-log slopes");
    add_common(rate_cmd, flags);
    rate_cmd->add_option("--fn", fns, "function descriptor (repeatable)");
    rate_cmd->add_option("--space", spaces, "space descriptor (repeatable)");
    rate_cmd->add_option("--operator", op_desc, "operator descriptor");
    rate_cmd->add_option("--n", n_values, "n values (repeatable)");
    rate_cmd->add_option("--flavor", flavor, "bound flavor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (norm_cmd->parsed()) return cmd_norm(flags, norm_space, norm_fn);
        auto cfg = merge_config(flags, fns, spaces, op_desc, n_values, flavor);
        if (mu_cmd->parsed()) return cmd_mu_table(std::move(cfg));
        if (bound_cmd->parsed()) return cmd_bound_check(std::move(cfg));
        if (rate_cmd->parsed()) return cmd_rate_sweep(std::move(cfg));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
