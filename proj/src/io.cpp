#include "korovkin/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace korovkin::io {

namespace {

using nlohmann::json;

/// Splits "a=1,b=f(2,3)" into key/value pairs, respecting parentheses.
std::vector<std::pair<std::string, std::string>> split_params(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    int depth = 0;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error("malformed parameter: " + tok);
        out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        tok.clear();
    };
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            flush();
        } else {
            tok.push_back(c);
        }
    }
    flush();
    return out;
}

FunctionHandle parse_young(const std::string& descriptor) {
    // For the Orlicz phi parameter, power(p) means the Young function t^p/p.
    if (descriptor.rfind("power(", 0) == 0 && descriptor.back() == ')') {
        const double p = std::stod(descriptor.substr(6, descriptor.size() - 7));
        return make_young_power(p);
    }
    return builtin_function(descriptor);
}

} // namespace

SpaceSpec parse_space(const std::string& descriptor) {
    std::string body = descriptor;
    Interval dom = unit_interval;
    if (body.size() > 4 && body.substr(body.size() - 4) == "@2pi") {
        dom = periodic_interval;
        body = body.substr(0, body.size() - 4);
    }
    std::string kind = body;
    std::string params;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
        kind = body.substr(0, colon);
        params = body.substr(colon + 1);
    }

    SpaceSpec s;
    s.domain = dom;
    // lN shorthand: l1, l2, l4, ...
    if (kind.size() >= 2 && kind[0] == 'l' && std::isdigit(static_cast<unsigned char>(kind[1]))) {
        s.kind = SpaceKind::Lp;
        s.p = std::stod(kind.substr(1));
    } else if (kind == "sup") {
        s.kind = SpaceKind::Sup;
    } else if (kind == "lp") {
        s.kind = SpaceKind::Lp;
    } else if (kind == "wlp") {
        s.kind = SpaceKind::WeightedLp;
    } else if (kind == "grand" || kind == "grandlp") {
        s.kind = SpaceKind::GrandLp;
    } else if (kind == "wgrand" || kind == "wgrandlp") {
        s.kind = SpaceKind::WeightedGrandLp;
    } else if (kind == "varlp") {
        s.kind = SpaceKind::VariableLp;
    } else if (kind == "orlicz") {
        s.kind = SpaceKind::Orlicz;
    } else if (kind == "morrey") {
        s.kind = SpaceKind::Morrey;
    } else if (kind == "wmorrey") {
        s.kind = SpaceKind::WeightedMorrey;
    } else if (kind == "smallmorrey") {
        s.kind = SpaceKind::SmallMorrey;
    } else if (kind == "weakmp") {
        s.kind = SpaceKind::WeakMp;
    } else {
        throw Error("unknown space kind: " + kind);
    }

    for (const auto& [key, value] : split_params(params)) {
        if (key == "p") {
            s.p = std::stod(value);
        } else if (key == "p0") {
            s.p0 = std::stod(value);
        } else if (key == "lambda") {
            s.lambda = std::stod(value);
        } else if (key == "resolution") {
            s.resolution = std::stoi(value);
        } else if (key == "w") {
            s.weight = builtin_function(value);
        } else if (key == "pfn") {
            s.exponent_fn = builtin_function(value);
        } else if (key == "phi") {
            s.young_phi = parse_young(value);
        } else {
            throw Error("unknown space parameter '" + key + "' in " + descriptor);
        }
    }
    s.validate();
    return s;
}

OperatorSpec parse_operator(const std::string& descriptor) {
    std::string kind = descriptor;
    int n = 1;
    if (const auto colon = descriptor.find(':'); colon != std::string::npos) {
        kind = descriptor.substr(0, colon);
        for (const auto& [key, value] : split_params(descriptor.substr(colon + 1))) {
            if (key == "n") {
                n = std::stoi(value);
            } else {
                throw Error("unknown operator parameter: " + key);
            }
        }
    }
    if (kind == "kantorovich") return kantorovich(n);
    if (kind == "fejer") return fejer(n);
    throw Error("unknown operator kind: " + kind);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("config parse error: " + std::string(e.what()));
    }

    static const std::vector<std::string> known = {
        "functions", "spaces", "operator", "n_values", "flavor",
        "resolution", "modulus_resolution", "out", "format", "plot", "strict"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error("unknown config key: " + key);
        }
    }

    ExperimentConfig cfg;
    if (j.contains("functions")) {
        for (const auto& item : j["functions"]) {
            if (item.is_string()) {
                cfg.functions.push_back(builtin_function(item.get<std::string>()));
            } else if (item.is_object()) {
                cfg.functions.push_back(make_piecewise_polynomial(
                    item.at("name").get<std::string>(),
                    item.at("breaks").get<std::vector<double>>(),
                    item.at("coeffs").get<std::vector<std::vector<double>>>()));
            } else {
                throw Error("function entries must be names or piecewise objects");
            }
        }
    }
    if (j.contains("spaces")) {
        for (const auto& item : j["spaces"]) {
            cfg.spaces.push_back(parse_space(item.get<std::string>()));
        }
    }
    if (j.contains("operator")) cfg.op = parse_operator(j["operator"].get<std::string>());
    if (j.contains("n_values")) cfg.n_values = j["n_values"].get<std::vector<int>>();
    if (j.contains("flavor")) cfg.flavor = bound_flavor_from_string(j["flavor"].get<std::string>());
    if (j.contains("resolution")) cfg.resolution = j["resolution"].get<int>();
    if (j.contains("modulus_resolution")) cfg.modulus_resolution = j["modulus_resolution"].get<int>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("plot")) cfg.plot = j["plot"].get<bool>();
    if (j.contains("strict")) cfg.strict = j["strict"].get<bool>();
    if (cfg.format != "csv" && cfg.format != "json") {
        throw Error("format must be csv or json");
    }
    return cfg;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

json report_to_json(const BoundReport& r, bool strict) {
    json j{{"function", r.function},
           {"space", r.space},
           {"flavor", to_string(r.flavor)},
           {"n", r.n},
           {"lhs", r.lhs},
           {"mu_n", r.mu_n},
           {"omega", r.omega_val},
           {"term_unital", r.term_unital},
           {"term_drift", r.term_drift},
           {"term_main", r.term_main},
           {"rhs", r.rhs},
           {"ratio", r.ratio},
           {"holds", r.holds},
           {"est_error", r.est_error},
           {"c_norm", r.c_norm}};
    if (strict) j["holds_strict"] = r.holds_strict;
    return j;
}

} // namespace

std::string bound_reports_csv(const std::vector<BoundReport>& reports, bool strict) {
    std::ostringstream out;
    out << "function,space,flavor,n,lhs,mu_n,omega,term_unital,term_main,rhs,ratio,holds,est_error";
    if (strict) out << ",holds_strict";
    out << "\n";
    for (const auto& r : reports) {
        out << r.function << ',' << r.space << ',' << to_string(r.flavor) << ',' << r.n << ','
            << format_double(r.lhs) << ',' << format_double(r.mu_n) << ','
            << format_double(r.omega_val) << ',' << format_double(r.term_unital) << ','
            << format_double(r.term_main) << ',' << format_double(r.rhs) << ','
            << format_double(r.ratio) << ',' << (r.holds ? "true" : "false") << ','
            << format_double(r.est_error);
        if (strict) out << ',' << (r.holds_strict ? "true" : "false");
        out << "\n";
    }
    return out.str();
}

std::string bound_reports_json(const std::vector<BoundReport>& reports, bool strict) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r, strict));
    return arr.dump(2) + "\n";
}

std::string mu_table_csv(const std::vector<MuRow>& rows) {
    std::ostringstream out;
    out << "space,n,mu_n,mu_n_squared,est_error\n";
    for (const auto& r : rows) {
        out << r.space << ',' << r.n << ',' << format_double(r.mu) << ','
            << format_double(r.mu_squared) << ',' << format_double(r.est_error) << "\n";
    }
    return out.str();
}

std::string mu_table_json(const std::vector<MuRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(json{{"space", r.space},
                           {"n", r.n},
                           {"mu_n", r.mu},
                           {"mu_n_squared", r.mu_squared},
                           {"est_error", r.est_error}});
    }
    return arr.dump(2) + "\n";
}

std::string rate_report_csv(const std::string& space_label, const std::string& fn_name,
                            BoundFlavor flavor, const RateReport& report) {
    std::ostringstream out;
    out << "function,space,flavor,n,lhs,rhs,mu_n\n";
    for (std::size_t i = 0; i < report.n_values.size(); ++i) {
        out << fn_name << ',' << space_label << ',' << to_string(flavor) << ','
            << report.n_values[i] << ',' << format_double(report.lhs_values[i]) << ','
            << format_double(report.rhs_values[i]) << ','
            << format_double(report.mu_values[i]) << "\n";
    }
    return out.str();
}

std::string rate_report_json(const std::string& space_label, const std::string& fn_name,
                             BoundFlavor flavor, const RateReport& report) {
    json rows = json::array();
    for (std::size_t i = 0; i < report.n_values.size(); ++i) {
        rows.push_back(json{{"n", report.n_values[i]},
                            {"lhs", report.lhs_values[i]},
                            {"rhs", report.rhs_values[i]},
                            {"mu_n", report.mu_values[i]}});
    }
    auto fit_json = [](const SlopeFit& f) {
        return json{{"slope", f.slope},
                    {"defined", f.defined},
                    {"residual_rms", f.residual_rms},
                    {"excluded_first", f.excluded_first}};
    };
    json j{{"function", fn_name},
           {"space", space_label},
           {"flavor", to_string(flavor)},
           {"rows", rows},
           {"slope_lhs", fit_json(report.slope_lhs)},
           {"slope_rhs", fit_json(report.slope_rhs)}};
    return j.dump(2) + "\n";
}

std::string rate_report_svg(const std::string& title, const RateReport& report) {
    const int width = 640, height = 480;
    const int ml = 70, mr = 20, mt = 40, mb = 50;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto scan = [&](const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (!(vals[i] > 0)) continue;
            const double x = std::log10(report.n_values[i] + 1.0);
            const double y = std::log10(vals[i]);
            xmin = std::min(xmin, x), xmax = std::max(xmax, x);
            ymin = std::min(ymin, y), ymax = std::max(ymax, y);
        }
    };
    scan(report.lhs_values);
    scan(report.rhs_values);
    if (xmin > xmax) {
        xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    }
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    auto polyline = [&](const std::vector<double>& vals, const char* color) {
        std::ostringstream p;
        p << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (!(vals[i] > 0)) continue;
            p << px(std::log10(report.n_values[i] + 1.0)) << ',' << py(std::log10(vals[i])) << ' ';
        }
        p << "\"/>\n";
        return p.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">log10(n+1)</text>\n";
    svg << "<text x=\"18\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
        << height / 2 << ")\">log10(value)</text>\n";
    svg << polyline(report.lhs_values, "#1f77b4");
    svg << polyline(report.rhs_values, "#d62728");
    auto slope_text = [&](const SlopeFit& f, const char* label, const char* color, int y) {
        std::ostringstream t;
        t << "<text x=\"" << width - mr - 8 << "\" y=\"" << y
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << label
          << " slope = " << (f.defined ? format_double(f.slope) : std::string("undefined"))
          << "</text>\n";
        return t.str();
    };
    svg << slope_text(report.slope_lhs, "lhs", "#1f77b4", mt + 16);
    svg << slope_text(report.slope_rhs, "rhs", "#d62728", mt + 34);
    svg << "</svg>\n";
    return svg.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

} // namespace korovkin::io
