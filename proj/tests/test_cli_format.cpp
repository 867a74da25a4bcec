#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "apcasimir/cli.hpp"
#include "apcasimir/errors.hpp"
#include "test_util.hpp"

using namespace apc;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_SUITE_BEGIN("cli_format");

TEST_CASE("format17 round-trips doubles exactly") {
    for (double v : {0.0, 1.0, -1.0, std::numbers::pi, 1.0 / 3.0, 1e-300, -6.02681203969194e21,
                     0.095954487232813208794}) {
        const std::string s = cli::format17(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(cli::format17(std::nan("")) == "nan");
    CHECK(cli::format17(-0.0) == "0");
}

TEST_CASE("sweep spec validation") {
    cli::SweepSpec s;
    s.from = 2.0;
    s.to = 1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.points = 1;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.from = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError); // log spacing needs from > 0
    s.spacing = cli::SweepSpec::Spacing::linear;
    s.to = 21.0;
    CHECK_NOTHROW(s.validate());
    s = {};
    s.a = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("sweep grid endpoints are exact") {
    cli::SweepSpec s;
    const auto g = s.grid();
    REQUIRE(g.size() == 25);
    CHECK(g.front() == 0.05);
    CHECK(std::abs(g.back() - 20.0) < 1e-14 * 20.0);
}

TEST_CASE("rendered sweep: header, row count, thermal monotone, determinism") {
    cli::SweepRequest req;
    const std::string text = cli::render_sweep(req);
    CHECK(text == cli::render_sweep(req)); // byte-identical
    const auto ls = lines_of(text);
    REQUIRE(ls.size() == 3 + 25);
    CHECK(ls[2] == "xi,a,beta,e0,f1,f2,thermal,total,route,est_error");
    // thermal column: negative, decreasing as T grows along the grid
    double prev = 0.0;
    for (std::size_t i = 3; i < ls.size(); ++i) {
        std::istringstream row(ls[i]);
        std::string cell;
        double thermal = 0.0;
        for (int c = 0; c <= 6; ++c) {
            std::getline(row, cell, ',');
            if (c == 6) thermal = std::stod(cell);
        }
        CHECK(thermal < 0.0);
        CHECK(thermal < prev);
        prev = thermal;
    }
}

TEST_CASE("energy command: csv and json agree") {
    cli::EnergyRequest req;
    req.a = 1.0;
    req.have_beta = true;
    req.beta = 1.0;
    req.route = "decomposition";
    std::ostringstream csv, err;
    REQUIRE(cli::cmd_energy(req, csv, err) == 0);
    req.common.format = cli::Format::json;
    std::ostringstream js;
    REQUIRE(cli::cmd_energy(req, js, err) == 0);
    const json j = json::parse(js.str());
    CHECK(j["command"] == "energy");
    REQUIRE(j["rows"].size() == 1);
    const double total_json = j["rows"][0]["total"].get<double>();
    // pull the total out of the CSV row
    const auto ls = lines_of(csv.str());
    std::istringstream row(ls[3]);
    std::string cell;
    for (int c = 0; c <= 7; ++c) std::getline(row, cell, ',');
    CHECK(std::stod(cell) == total_json);
    CHECK(testutil::rel_err(total_json, 0.038165233090717458961) < 1e-10);
}

TEST_CASE("energy command validation paths") {
    std::ostringstream out, err;
    cli::EnergyRequest req; // neither beta nor xi
    CHECK(cli::cmd_energy(req, out, err) == 1);
    CHECK(err.str().find("beta") != std::string::npos);
    req.have_beta = req.have_xi = true;
    req.beta = req.xi = 1.0;
    CHECK(cli::cmd_energy(req, out, err) == 1);
    cli::EnergyRequest bad;
    bad.a = -1.0;
    bad.have_beta = true;
    bad.beta = 1.0;
    std::ostringstream err2;
    CHECK(cli::cmd_energy(bad, out, err2) == 1);
    CHECK(err2.str().find("a") != std::string::npos);
    cli::EnergyRequest badroute;
    badroute.have_beta = true;
    badroute.beta = 1.0;
    badroute.route = "bogus";
    CHECK(cli::cmd_energy(badroute, out, err) == 1);
}

TEST_CASE("energy --xi path equals --beta path") {
    cli::EnergyRequest by_xi, by_beta;
    by_xi.have_xi = true;
    by_xi.xi = 0.5;
    by_beta.have_beta = true;
    by_beta.beta = 1.0 / (std::numbers::pi * 0.5);
    std::ostringstream o1, o2, err;
    REQUIRE(cli::cmd_energy(by_xi, o1, err) == 0);
    REQUIRE(cli::cmd_energy(by_beta, o2, err) == 0);
    CHECK(o1.str() == o2.str());
}

TEST_CASE("sweep json parses and matches schema") {
    cli::SweepRequest req;
    req.spec.points = 5;
    req.common.format = cli::Format::json;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_sweep(req, out, err) == 0);
    const json j = json::parse(out.str());
    CHECK(j["command"] == "sweep");
    REQUIRE(j["rows"].size() == 5);
    for (const auto& row : j["rows"]) {
        for (const char* key : {"xi", "a", "beta", "e0", "f1", "f2", "thermal", "total", "est_error"})
            CHECK(row.contains(key));
        CHECK(row["route"] == "decomposition");
    }
}

TEST_CASE("sweep failure marker and exit code 2") {
    cli::SweepRequest req;
    req.spec.from = 1e-3;
    req.spec.to = 2e-3;
    req.spec.points = 2;
    req.common.max_terms = 8; // far too small for xi ~ 1e-3
    std::ostringstream out, err;
    CHECK(cli::cmd_sweep(req, out, err) == 2);
    CHECK(out.str().find("error=") != std::string::npos);
    CHECK(out.str().find("nan") != std::string::npos);
}

TEST_CASE("tis command reports residuals and fixed points") {
    cli::TISRequest req;
    req.relation = "f1";
    std::ostringstream out, err;
    REQUIRE(cli::cmd_tis(req, out, err) == 0);
    const auto ls = lines_of(out.str());
    CHECK(ls[1] == "relation,xi,lhs,rhs,abs_residual,rel_residual,fixed_point");
    const std::string summary = ls.back();
    REQUIRE(summary.rfind("# max_rel_residual = ", 0) == 0);
    CHECK(std::stod(summary.substr(21)) <= 1e-10);

    cli::TISRequest printed;
    printed.relation = "f2-as-printed";
    printed.points = 5;
    std::ostringstream out2;
    REQUIRE(cli::cmd_tis(printed, out2, err) == 0);
    const std::string s2 = lines_of(out2.str()).back();
    CHECK(std::stod(s2.substr(21)) > 0.1); // the printed variant fails

    cli::TISRequest bad;
    bad.relation = "nope";
    CHECK(cli::cmd_tis(bad, out, err) == 1);
}

TEST_CASE("tis fixed-point row is flagged on a grid through xi = 1/(2 pi)") {
    cli::TISRequest req;
    req.relation = "f1";
    const double fp = 1.0 / (2.0 * std::numbers::pi);
    req.xi_min = fp / 4.0;
    req.xi_max = fp * 4.0;
    req.points = 5; // log grid -> middle point lands exactly on fp/... ratio
    std::ostringstream out, err;
    REQUIRE(cli::cmd_tis(req, out, err) == 0);
    bool saw_fixed = false;
    for (const auto& line : lines_of(out.str()))
        if (!line.empty() && line[0] != '#' && line.back() == '1' &&
            line.find("f1,") == 0)
            saw_fixed = true;
    CHECK(saw_fixed);
}

TEST_CASE("sweep over the zeta route") {
    cli::SweepRequest req;
    req.route = "zeta";
    req.spec.from = 0.2;
    req.spec.to = 2.0;
    req.spec.points = 3;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_sweep(req, out, err) == 0);
    for (const auto& line : lines_of(out.str()))
        if (!line.empty() && line[0] != '#' && line[0] != 'x')
            CHECK(line.find(",zeta,") != std::string::npos);
}

TEST_CASE("tis json output parses") {
    cli::TISRequest req;
    req.relation = "f2-corrected";
    req.points = 4;
    req.common.format = cli::Format::json;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_tis(req, out, err) == 0);
    const json j = json::parse(out.str());
    CHECK(j["relation"] == "f2-corrected");
    REQUIRE(j["rows"].size() == 4);
    CHECK(j["max_rel_residual"].get<double>() <= 1e-10);
}

TEST_CASE("tis grid validation") {
    cli::TISRequest req;
    req.xi_min = 0.0;
    std::ostringstream out, err;
    CHECK(cli::cmd_tis(req, out, err) == 1);
    req = {};
    req.xi_min = 5.0;
    req.xi_max = 1.0;
    CHECK(cli::cmd_tis(req, out, err) == 1);
}

TEST_CASE("epstein command") {
    cli::EpsteinRequest req;
    req.z = 2.0;
    req.direct = true;
    req.check = true;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_epstein(req, out, err) == 0);
    const auto ls = lines_of(out.str());
    CHECK(ls[1] == "z,a1,a2,value,direct_value,direct_est_error,fe_residual");
    std::istringstream row(ls[2]);
    std::string cell;
    for (int c = 0; c <= 3; ++c) std::getline(row, cell, ',');
    CHECK(testutil::rel_err(std::stod(cell), 6.0268120396919401235) < 1e-10);

    cli::EpsteinRequest pole;
    pole.z = 1.0;
    CHECK(cli::cmd_epstein(pole, out, err) == 1);
    cli::EpsteinRequest low;
    low.z = 0.5;
    low.direct = true;
    CHECK(cli::cmd_epstein(low, out, err) == 1);
}

TEST_SUITE_END();
