#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qtur/cli.hpp"
#include "qtur/io.hpp"

using namespace qtur;

namespace {

std::string first_line_after_comments(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.starts_with('#')) return line;
    }
    return {};
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

TEST_CASE("empty config gives the reference defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.params.omega0 == 1.0);
    CHECK(cfg.params.m == 1.0);
    CHECK(cfg.params.T1 == 0.4);
    CHECK(cfg.params.T2 == 0.8);
    CHECK(cfg.params.bath1.gamma1 == 0.05);
    CHECK(cfg.params.bath2.gamma2 == 0.01);
    CHECK(cfg.params.bath1.d1 == 1e-3);
    CHECK(cfg.format == OutputFormat::Csv);
    CHECK(cfg.normalize == Normalize::None);
}

TEST_CASE("config parsing: comments, last-wins and overrides") {
    const RunConfig cfg = parse_config(
        "# machine\n"
        "T1 = 0.8\n"
        "T2 = 0.4   # mirrored\n"
        "\n"
        "gamma2=0.02\n"
        "gamma2 = 0.03\n"
        "format = json\n",
        {{"gamma1", "0.07"}, {"T1", "0.9"}});
    CHECK(cfg.params.T1 == 0.9);
    CHECK(cfg.params.T2 == 0.4);
    CHECK(cfg.params.bath2.gamma2 == 0.03);
    CHECK(cfg.params.bath1.gamma1 == 0.07);
    CHECK(cfg.format == OutputFormat::Json);
}

TEST_CASE("config errors") {
    try {
        (void)parse_config("T1 = 0.4\nTone = 0.4\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("Tone") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_config("T1 = warm\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("T1 = 0.4x\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("T1 0.4\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("gamma2 = -1\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("max_panels = 2.5\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("format = xml\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("", {{"bogus", "1"}}), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV layout for an engine point") {
    const RunConfig cfg = parse_config("");
    CommandArgs args;
    args.command = Command::Point;
    const auto result = run_subcommand(cfg, args);
    CHECK(result.exit_code == kExitOk);
    std::istringstream in(result.output);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "Omega,omega1,J1,P,J2,Sdot,D_J1,D_P,Q_P,Q_J1,eta_norm,cop_norm,mode,converged");
    const auto fields = split(row);
    REQUIRE(fields.size() == 14);
    CHECK(fields[12] == "engine");
    CHECK(fields[13] == "true");
    CHECK(fields[11] == "nan");
    CHECK(std::stod(fields[10]) > 0.0);
}

TEST_CASE("gamma2 normalization scales only the currents") {
    const RunConfig cfg = parse_config("");
    const auto table = grid_sweep(cfg.params, Axis{"Omega", 0.35, 0.35, 1}, Axis{"omega1", 0.65, 0.65, 1}, cfg.quad);
    const auto plain = split(first_line_after_comments(emit_csv(table, Normalize::None).substr(
        emit_csv(table, Normalize::None).find('\n') + 1)));
    const std::string norm_text = emit_csv(table, Normalize::Gamma2Squared);
    CHECK(norm_text.starts_with("# "));
    std::istringstream in(norm_text);
    std::string note, header, row;
    std::getline(in, note);
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "Omega,omega1,J1,P,J2,Sdot,D_J1,D_P,Q_P,Q_J1,eta_norm,cop_norm,mode,converged");
    const auto scaled = split(row);
    for (int col : {2, 3, 4}) CHECK(std::stod(scaled[col]) == doctest::Approx(std::stod(plain[col]) / 1e-4));
    for (int col : {5, 6, 7, 8}) CHECK(scaled[col] == plain[col]);
}

TEST_CASE("JSON round trip is byte-stable") {
    const RunConfig cfg = parse_config("");
    const auto table = resonance_scan(cfg.params, Axis{"Omega", 0.3, 1.1, 5}, cfg.quad);
    const std::string text = emit_json(table, Normalize::None);
    CHECK(emit_json(table_from_json(text), Normalize::None) == text);
    CHECK(nlohmann::ordered_json::parse(text).dump(2) + "\n" == text);
    CHECK(emit_csv(table_from_json(text), Normalize::None) == emit_csv(table, Normalize::None));

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("rows").size() == 5);
    CHECK(j.at("rows")[4].at("mode") == "error");
    CHECK(j.at("rows")[4].at("J1").is_null());
    CHECK(j.at("meta").at("params").at("gamma2") == 0.01);
}

TEST_CASE("subcommands and exit codes") {
    RunConfig cfg = parse_config("");
    CommandArgs args;

    args.command = Command::Sweep;
    CHECK(run_subcommand(cfg, args).exit_code == kExitValidation);
    args.Omega_axis = parse_axis("Omega", "0.2:0.8:3");
    args.omega1_axis = parse_axis("omega1", "0.4:1.6:2");
    auto sweep = run_subcommand(cfg, args);
    CHECK(sweep.exit_code == kExitOk);
    CHECK(std::count(sweep.output.begin(), sweep.output.end(), '\n') == 7);

    args.command = Command::Resonance;
    args.Omega_axis = parse_axis("Omega", "0.6:1.2:4");
    const auto res = run_subcommand(cfg, args);
    CHECK(res.exit_code == kExitNumerical);
    CHECK(res.output.find(",error,false") != std::string::npos);

    args.command = Command::Boundaries;
    args.Omega_axis = parse_axis("Omega", "0.05:0.95:19");
    const auto bounds = run_subcommand(cfg, args);
    CHECK(bounds.exit_code == kExitOk);
    CHECK(bounds.output.starts_with("mode,Omega_lo,Omega_hi\nengine,"));

    args.command = Command::Optimize;
    args.metric = Metric::Q_P;
    args.Omega_axis = parse_axis("Omega", "0.05:0.95:31");
    const auto opt = run_subcommand(cfg, args);
    REQUIRE(opt.exit_code == kExitOk);
    const auto fields = split(opt.output.substr(opt.output.find('\n') + 1));
    CHECK(fields[0] == "Q_P");
    CHECK(std::stod(fields[3]) == doctest::Approx(0.35).epsilon(0.05 / 0.35));

    args.interval = std::make_pair(0.4, 0.7);
    args.metric = Metric::EtaNorm;
    CHECK(run_subcommand(cfg, args).exit_code == kExitValidation);

    args.command = Command::OracleCompare;
    args.Omega_axis = parse_axis("Omega", "0.1:0.9:5");
    cfg.format = OutputFormat::Json;
    const auto oracle = run_subcommand(cfg, args);
    CHECK(oracle.exit_code == kExitOk);
    CHECK(nlohmann::json::parse(oracle.output).at("rows")[2].at("excluded") == true);

}

TEST_CASE("quadrature non-convergence maps to exit code 2") {
    RunConfig cfg = parse_config("max_panels = 1\n");
    CommandArgs args;
    args.command = Command::Point;
    const auto r = run_subcommand(cfg, args);
    CHECK(r.exit_code == kExitNumerical);
    CHECK(r.output.find(",false\n") != std::string::npos);
}

TEST_CASE("axis and command parsing") {
    const Axis a = parse_axis("Omega", "0.05:0.95:91");
    CHECK(a.count == 91);
    CHECK(a.min == 0.05);
    CHECK_THROWS_AS((void)parse_axis("Omega", "0.05:0.95"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_axis("Omega", "0.05:0.95:x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_axis("Omega", "0.9:0.1:3"), std::invalid_argument);
    CHECK(parse_command("oracle-compare") == Command::OracleCompare);
    CHECK_FALSE(parse_command("plot"));
}
