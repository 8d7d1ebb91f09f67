#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "config.hpp"
#include "error.hpp"
#include "reports.hpp"
#include "serialize.hpp"
#include "verifier.hpp"

using namespace einlab;
using namespace einlab::test;

TEST_CASE("config defaults, parsing and validation") {
    const RunConfig def;
    CHECK(def.residual_tol == 1e-8);
    CHECK(def.grid_points == 200);
    const RunConfig cfg = parse_config("# comment\nresidual_tol = 1e-6\n\n grid_points=50  # trailing\noutput_format = csv\n");
    CHECK(cfg.residual_tol == 1e-6);
    CHECK(cfg.grid_points == 50);
    CHECK(cfg.output_format == OutputFormat::Csv);
    CHECK(cfg.verify_options().residual_rel_tol == 1e-6);
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), Error);
    CHECK_THROWS_AS(parse_config("residual_tol = abc\n"), Error);
    CHECK_THROWS_AS(parse_config("residual_tol = -1\n"), Error);
    CHECK_THROWS_AS(parse_config("grid_points = 5\n"), Error);
    CHECK_THROWS_AS(parse_config("residual_tol\n"), Error);
    RunConfig c2;
    apply_setting(c2, "vol_base", "1");
    CHECK(c2.vol_base == 1.0);
    // The dump reads back to the same configuration.
    const RunConfig back = parse_config(to_text(cfg));
    CHECK(to_text(back) == to_text(cfg));
    CHECK_THROWS_AS(load_config("/nonexistent/einlab.cfg"), Error);
}

TEST_CASE("double formatting round-trips") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, double(i % 40) - 20);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::isnan(parse_double(format_double(NAN))));
    CHECK_THROWS_AS(parse_double("1.5x"), Error);
    CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("family export is byte-identical after a round trip") {
    for (const auto& f : {negative_family(1, 2, 1, 2, 0.5), negative_family(2, 3, 3, 1, 1.0),
                          ricci_flat_family(1, 2, 1, 1, 0.3), positive_family(2, 3, 3, 2)}) {
        const std::string text = export_family(f);
        const Family g = import_family(text);
        CHECK(export_family(g) == text);
        CHECK(g.coeffs.kappa == f.coeffs.kappa);
        CHECK(g.coeffs.c2 == f.coeffs.c2);
        CHECK(g.params.q1 == f.params.q1);
        CHECK(g.compact() == f.compact());
        CHECK(g.metadata.family_class == f.metadata.family_class);
    }
}

TEST_CASE("schema errors") {
    const Family f = negative_family();
    nlohmann::json j = family_to_json(f);
    CHECK(j["schema"] == kFamilySchema);
    CHECK(j["version"] == kFamilySchemaVersion);
    auto bad = j;
    bad["version"] = kFamilySchemaVersion + 1;
    CHECK_THROWS_AS(family_from_json(bad), Error);
    bad = j;
    bad["schema"] = "something.else";
    CHECK_THROWS_AS(family_from_json(bad), Error);
    bad = j;
    bad["coefficients"].erase("kappa");
    CHECK_THROWS_AS(family_from_json(bad), Error);
    CHECK_THROWS_AS(import_family("{not json"), Error);
    try {
        family_from_json(nlohmann::json::object());
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Schema);
    }
}

TEST_CASE("file save and load") {
    const Family f = positive_family();
    const std::string path = "einlab_test_family.json";
    save_family(f, path);
    const Family g = load_family(path);
    CHECK(export_family(g) == export_family(f));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_family("/nonexistent/dir/family.json"), Error);
}

TEST_CASE("a meaningfully corrupted coefficient fails verification after import") {
    const Family f = negative_family(1, 2, 1, 2, 0.5);
    nlohmann::json j = family_to_json(f);
    Family bad = family_from_json(j);
    bad.coeffs.c2 *= 1.1;
    const auto rep = verify_family(bad);
    CHECK_FALSE(rep.all_pass);
    const auto js = verification_json(bad, rep);
    CHECK(js["body"]["all_pass"] == false);
    CHECK(js["schema"] == kReportSchema);
}

TEST_CASE("verification report content") {
    const Family f = positive_family();
    const auto js = verification_json(f, verify_family(f));
    CHECK(js["kind"] == "verify");
    CHECK(js["body"]["all_pass"] == true);
    CHECK(js["body"]["collapse"].size() == 2);
    CHECK(js["body"]["family"]["q1"] == "2");
    CHECK(js["body"].contains("psi_consistency"));
}

TEST_CASE("diagnostics outcomes") {
    const RunConfig cfg;
    const auto neg = run_diagnostics(negative_family(), cfg, 0);
    CHECK(neg.all_pass);
    CHECK(neg.report["body"].contains("q_curvature"));
    CHECK(neg.report["body"].contains("volume"));
    const auto rf = run_diagnostics(ricci_flat_family(), cfg, kDiagDecay | kDiagVolume);
    CHECK(rf.all_pass);
    CHECK(rf.report["body"].contains("decay"));
    CHECK_THROWS_AS(run_diagnostics(ricci_flat_family(), cfg, kDiagQCurvature), Error);
    CHECK_THROWS_AS(run_diagnostics(negative_family(2, 3), cfg, kDiagQCurvature), Error);
}

TEST_CASE("profile CSV") {
    const RunConfig cfg;
    const Family f = positive_family();
    const std::string csv = profile_csv(f, cfg, 50, 0.0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "s,t,alpha,beta,Delta,U1,U2,b11,b12,b22");
    std::size_t rows = 0;
    double first_s = 0, last_s = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const double s = std::stod(line.substr(0, line.find(',')));
        if (rows == 0) first_s = s;
        last_s = s;
        ++rows;
    }
    CHECK(rows == 50);
    CHECK(first_s == f.domain.s1);
    CHECK(last_s == *f.domain.s2);
    CHECK(profile_csv(f, cfg, 50, 0.0) == csv);
}
