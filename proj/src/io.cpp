#include "qtur/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include "json.hpp"

namespace qtur {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(int line) {
    return line > 0 ? " on line " + std::to_string(line) : std::string(" in command-line override");
}

double parse_real(std::string_view key, std::string_view value, int line) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || value.empty()) {
        throw ConfigError("value '" + std::string(value) + "' for key '" + std::string(key) +
                              "' is not a number" + where(line),
                          line);
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view value, int line) {
    std::size_t out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || value.empty()) {
        throw ConfigError("value '" + std::string(value) + "' for key '" + std::string(key) +
                              "' is not a non-negative integer" + where(line),
                          line);
    }
    return out;
}

void apply(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
    auto real = [&] { return parse_real(key, value, line); };
    auto& p = cfg.params;
    if (key == "omega0") p.omega0 = real();
    else if (key == "m") p.m = real();
    else if (key == "T1") p.T1 = real();
    else if (key == "T2") p.T2 = real();
    else if (key == "Omega") p.Omega = real();
    else if (key == "omega1") p.bath1.omega1 = real();
    else if (key == "gamma1") p.bath1.gamma1 = real();
    else if (key == "gamma2") p.bath2.gamma2 = real();
    else if (key == "d1") p.bath1.d1 = real();
    else if (key == "rel_tol") cfg.quad.rel_tol = real();
    else if (key == "abs_tol") cfg.quad.abs_tol = real();
    else if (key == "max_panels") cfg.quad.max_panels = parse_count(key, value, line);
    else if (key == "window_factor") cfg.quad.window_factor = real();
    else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::Csv;
        else if (value == "json") cfg.format = OutputFormat::Json;
        else throw ConfigError("format must be 'csv' or 'json'" + where(line), line);
    } else if (key == "normalize") {
        if (value == "none") cfg.normalize = Normalize::None;
        else if (value == "gamma2_squared") cfg.normalize = Normalize::Gamma2Squared;
        else throw ConfigError("normalize must be 'none' or 'gamma2_squared'" + where(line), line);
    } else if (key == "output") {
        cfg.output = std::string(value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'" + where(line), line);
    }
}

double current_scale(const SweepTable& table, Normalize normalize) {
    if (normalize == Normalize::None) return 1.0;
    const double g = table.params.bath2.gamma2;
    return g * g;
}

double or_nan(const std::optional<double>& x) {
    return x ? *x : std::numeric_limits<double>::quiet_NaN();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json params_json(const MachineParams& p) {
    json j;
    j["omega0"] = p.omega0;
    j["m"] = p.m;
    j["T1"] = p.T1;
    j["T2"] = p.T2;
    j["Omega"] = p.Omega;
    j["omega1"] = p.bath1.omega1;
    j["gamma1"] = p.bath1.gamma1;
    j["gamma2"] = p.bath2.gamma2;
    j["d1"] = p.bath1.d1;
    j["validity_ratio"] = p.validity_ratio();
    j["perturbative_warning"] = p.perturbative_warning();
    return j;
}

json quad_json(const QuadratureConfig& q) {
    json j;
    j["rel_tol"] = q.rel_tol;
    j["abs_tol"] = q.abs_tol;
    j["max_panels"] = q.max_panels;
    j["cluster_multipliers"] = q.cluster_multipliers;
    j["window_factor"] = q.window_factor;
    return j;
}

MachineParams params_from_json(const json& j) {
    MachineParams p;
    p.omega0 = j.at("omega0").get<double>();
    p.m = j.at("m").get<double>();
    p.T1 = j.at("T1").get<double>();
    p.T2 = j.at("T2").get<double>();
    p.Omega = j.at("Omega").get<double>();
    p.bath1.omega1 = j.at("omega1").get<double>();
    p.bath1.gamma1 = j.at("gamma1").get<double>();
    p.bath2.gamma2 = j.at("gamma2").get<double>();
    p.bath1.d1 = j.at("d1").get<double>();
    return p;
}

QuadratureConfig quad_from_json(const json& j) {
    QuadratureConfig q;
    q.rel_tol = j.at("rel_tol").get<double>();
    q.abs_tol = j.at("abs_tol").get<double>();
    q.max_panels = j.at("max_panels").get<std::size_t>();
    q.cluster_multipliers = j.at("cluster_multipliers").get<std::vector<double>>();
    q.window_factor = j.at("window_factor").get<double>();
    return q;
}

std::string_view normalize_name(Normalize n) { return n == Normalize::None ? "none" : "gamma2_squared"; }

std::string_view layout_name(SweepLayout l) { return l == SweepLayout::Grid ? "grid" : "resonance"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "omega0",  "m",       "T1",         "T2",            "Omega",  "omega1",
        "gamma1",  "gamma2",  "d1",         "rel_tol",       "abs_tol", "max_panels",
        "window_factor", "format", "normalize", "output"};
    return keys;
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
    RunConfig cfg;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value' on line " + std::to_string(line_no), line_no);
        }
        apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    }
    for (const auto& [key, value] : overrides) apply(cfg, trim(key), trim(value), 0);

    try {
        cfg.params.validate();
        cfg.quad.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0);
    }
    return cfg;
}

std::string format_number(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const std::vector<std::string>& table_columns() {
    static const std::vector<std::string> columns = {"Omega", "omega1", "J1",   "P",        "J2",
                                                     "Sdot",  "D_J1",   "D_P",  "Q_P",      "Q_J1",
                                                     "eta_norm", "cop_norm", "mode", "converged"};
    return columns;
}

std::string emit_csv(const SweepTable& table, Normalize normalize) {
    const double scale = current_scale(table, normalize);
    std::string out;
    if (normalize == Normalize::Gamma2Squared) {
        out += "# J1,P,J2 normalized to gamma2^2 = " + format_number(scale) + "\n";
    }
    const auto& cols = table_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out += cols[i];
        out += i + 1 < cols.size() ? ',' : '\n';
    }
    for (const auto& row : table.rows) {
        const bool bad = row.error.has_value();
        auto value = [bad](double x) { return format_number(bad ? std::nan("") : x); };
        out += format_number(row.Omega) + ',' + format_number(row.omega1) + ',';
        out += value(row.obs.J1 / scale) + ',' + value(row.obs.P / scale) + ',' + value(row.obs.J2 / scale) + ',';
        out += value(row.obs.Sdot) + ',' + value(row.obs.D_J1) + ',' + value(row.obs.D_P) + ',';
        out += format_number(or_nan(row.perf.Q_P)) + ',' + format_number(or_nan(row.perf.Q_J1)) + ',';
        out += format_number(or_nan(row.perf.eta_norm)) + ',' + format_number(or_nan(row.perf.cop_norm)) + ',';
        out += std::string(to_string(row.mode)) + ',';
        out += (!bad && row.obs.quad_converged) ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string emit_json(const SweepTable& table, Normalize normalize) {
    const double scale = current_scale(table, normalize);
    json root;
    json meta;
    meta["layout"] = layout_name(table.layout);
    meta["normalize"] = normalize_name(normalize);
    meta["params"] = params_json(table.params);
    meta["quadrature"] = quad_json(table.quad);
    json axes = json::array();
    for (const auto& axis : table.axes) {
        json a;
        a["name"] = axis.name;
        a["min"] = axis.min;
        a["max"] = axis.max;
        a["count"] = axis.count;
        a["spacing"] = "linear";
        axes.push_back(a);
    }
    meta["axes"] = axes;
    root["meta"] = meta;

    json rows = json::array();
    for (const auto& row : table.rows) {
        const bool bad = row.error.has_value();
        auto value = [bad](double x) { return bad ? json(nullptr) : number_or_null(x); };
        json r;
        r["Omega"] = number_or_null(row.Omega);
        r["omega1"] = number_or_null(row.omega1);
        r["J1"] = value(row.obs.J1 / scale);
        r["P"] = value(row.obs.P / scale);
        r["J2"] = value(row.obs.J2 / scale);
        r["Sdot"] = value(row.obs.Sdot);
        r["D_J1"] = value(row.obs.D_J1);
        r["D_P"] = value(row.obs.D_P);
        r["Q_P"] = number_or_null(or_nan(row.perf.Q_P));
        r["Q_J1"] = number_or_null(or_nan(row.perf.Q_J1));
        r["eta_norm"] = number_or_null(or_nan(row.perf.eta_norm));
        r["cop_norm"] = number_or_null(or_nan(row.perf.cop_norm));
        r["mode"] = to_string(row.mode);
        r["converged"] = !bad && row.obs.quad_converged;
        if (bad) r["error"] = *row.error;
        rows.push_back(r);
    }
    root["rows"] = rows;
    return dump(root);
}

std::string emit_table(const SweepTable& table, OutputFormat format, Normalize normalize) {
    return format == OutputFormat::Csv ? emit_csv(table, normalize) : emit_json(table, normalize);
}

SweepTable table_from_json(std::string_view text) {
    const json root = json::parse(text);
    const json& meta = root.at("meta");

    SweepTable table;
    table.params = params_from_json(meta.at("params"));
    table.quad = quad_from_json(meta.at("quadrature"));
    table.layout = meta.at("layout").get<std::string>() == "grid" ? SweepLayout::Grid : SweepLayout::Resonance;
    const double scale = meta.at("normalize").get<std::string>() == "none"
                             ? 1.0
                             : table.params.bath2.gamma2 * table.params.bath2.gamma2;
    for (const auto& a : meta.at("axes")) {
        table.axes.push_back(
            Axis{a.at("name").get<std::string>(), a.at("min").get<double>(), a.at("max").get<double>(),
                 a.at("count").get<std::size_t>()});
    }

    auto real = [](const json& j) {
        return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
    };
    auto optional = [](const json& j) -> std::optional<double> {
        if (j.is_null()) return std::nullopt;
        return j.get<double>();
    };

    for (const auto& r : root.at("rows")) {
        SweepRow row;
        row.Omega = real(r.at("Omega"));
        row.omega1 = real(r.at("omega1"));
        row.obs.J1 = real(r.at("J1")) * scale;
        row.obs.P = real(r.at("P")) * scale;
        row.obs.J2 = real(r.at("J2")) * scale;
        row.obs.Sdot = real(r.at("Sdot"));
        row.obs.D_J1 = real(r.at("D_J1"));
        row.obs.D_P = real(r.at("D_P"));
        row.obs.quad_converged = r.at("converged").get<bool>();
        row.perf.Q_P = optional(r.at("Q_P"));
        row.perf.Q_J1 = optional(r.at("Q_J1"));
        row.perf.eta_norm = optional(r.at("eta_norm"));
        row.perf.cop_norm = optional(r.at("cop_norm"));
        const auto mode = r.at("mode").get<std::string>();
        if (mode == "engine") row.mode = RowMode::Engine;
        else if (mode == "refrigerator") row.mode = RowMode::Refrigerator;
        else if (mode == "other") row.mode = RowMode::Other;
        else row.mode = RowMode::Error;
        if (r.contains("error")) row.error = r.at("error").get<std::string>();
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string emit_boundaries(const ModeBoundaries& b, const SweepTable& scan, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "mode,Omega_lo,Omega_hi\n";
        for (const auto& i : b.intervals) {
            out += std::string(to_string(i.mode)) + ',' + format_number(i.Omega_lo) + ',' +
                   format_number(i.Omega_hi) + '\n';
        }
        for (double x : b.excluded_nodes) out += "# excluded node Omega = " + format_number(x) + '\n';
        return out;
    }
    json root;
    json meta;
    meta["layout"] = layout_name(scan.layout);
    meta["params"] = params_json(scan.params);
    meta["quadrature"] = quad_json(scan.quad);
    meta["tolerance"] = kBoundaryTolerance * scan.params.omega0;
    root["meta"] = meta;
    json intervals = json::array();
    for (const auto& i : b.intervals) {
        json j;
        j["mode"] = to_string(i.mode);
        j["Omega_lo"] = i.Omega_lo;
        j["Omega_hi"] = i.Omega_hi;
        intervals.push_back(j);
    }
    root["intervals"] = intervals;
    root["excluded_nodes"] = b.excluded_nodes;
    return dump(root);
}

std::string emit_optimum(const OptimumResult& r, double Omega_lo, double Omega_hi, const MachineParams& params,
                         const QuadratureConfig& quad, OutputFormat format) {
    const double omega1 = resonant_omega1(params, r.Omega_opt);
    if (format == OutputFormat::Csv) {
        return "metric,Omega_lo,Omega_hi,Omega_opt,omega1,value\n" + to_string(r.metric) + ',' +
               format_number(Omega_lo) + ',' + format_number(Omega_hi) + ',' + format_number(r.Omega_opt) + ',' +
               format_number(omega1) + ',' + format_number(r.value) + '\n';
    }
    json root;
    json meta;
    meta["params"] = params_json(params);
    meta["quadrature"] = quad_json(quad);
    root["meta"] = meta;
    root["metric"] = to_string(r.metric);
    root["Omega_lo"] = Omega_lo;
    root["Omega_hi"] = Omega_hi;
    root["Omega_opt"] = r.Omega_opt;
    root["omega1"] = omega1;
    root["value"] = r.value;
    return dump(root);
}

std::string emit_oracle(const OracleComparison& c, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "Omega,omega1,dev_J1,dev_P,dev_D_J1,dev_D_P,excluded,status\n";
        for (const auto& r : c.rows) {
            const bool bad = r.error.has_value();
            auto value = [bad](double x) { return format_number(bad ? std::nan("") : x); };
            out += format_number(r.Omega) + ',' + format_number(r.omega1) + ',' + value(r.dev_J1) + ',' +
                   value(r.dev_P) + ',' + value(r.dev_D_J1) + ',' + value(r.dev_D_P) + ',' +
                   (r.excluded ? "true" : "false") + ',' + (bad ? "error" : "ok") + '\n';
        }
        out += "# max_dev_J1=" + format_number(c.max_dev_J1) + " max_dev_P=" + format_number(c.max_dev_P) +
               " max_dev_D_J1=" + format_number(c.max_dev_D_J1) + " max_dev_D_P=" + format_number(c.max_dev_D_P) +
               '\n';
        return out;
    }
    json root;
    json meta;
    meta["params"] = params_json(c.params);
    meta["quadrature"] = quad_json(c.quad);
    meta["exclusion_radius"] = kOracleExclusionRadius * c.params.omega0;
    root["meta"] = meta;
    json rows = json::array();
    for (const auto& r : c.rows) {
        const bool bad = r.error.has_value();
        auto value = [bad](double x) { return bad ? json(nullptr) : number_or_null(x); };
        json j;
        j["Omega"] = r.Omega;
        j["omega1"] = number_or_null(r.omega1);
        j["dev_J1"] = value(r.dev_J1);
        j["dev_P"] = value(r.dev_P);
        j["dev_D_J1"] = value(r.dev_D_J1);
        j["dev_D_P"] = value(r.dev_D_P);
        j["excluded"] = r.excluded;
        if (bad) j["error"] = *r.error;
        rows.push_back(j);
    }
    root["rows"] = rows;
    json summary;
    summary["max_dev_J1"] = c.max_dev_J1;
    summary["max_dev_P"] = c.max_dev_P;
    summary["max_dev_D_J1"] = c.max_dev_D_J1;
    summary["max_dev_D_P"] = c.max_dev_D_P;
    root["summary"] = summary;
    return dump(root);
}

void write_output(const std::string& path, std::string_view bytes) {
    if (path.empty()) {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace qtur
