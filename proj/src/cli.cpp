#include "apcasimir/cli.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "apcasimir/epstein.hpp"
#include "apcasimir/errors.hpp"
#include "apcasimir/lattice.hpp"
#include "apcasimir/oracle.hpp"
#include "apcasimir/selftest.hpp"

namespace apc::cli {

namespace {

constexpr double kPi = std::numbers::pi;

const char* kUnitsNote = "units: natural (hbar = c = kB = 1); free energies per unit transverse area";
const char* kEnergyHeader = "xi,a,beta,e0,f1,f2,thermal,total,route,est_error";

const char* route_name(casimir::Route r) {
    switch (r) {
        case casimir::Route::decomposition: return "decomposition";
        case casimir::Route::f_series: return "f-series";
        case casimir::Route::zeta: return "zeta";
    }
    return "?";
}

bool parse_routes(const std::string& name, std::vector<casimir::Route>& routes) {
    if (name == "decomposition") routes = {casimir::Route::decomposition};
    else if (name == "f-series") routes = {casimir::Route::f_series};
    else if (name == "zeta") routes = {casimir::Route::zeta};
    else if (name == "all")
        routes = {casimir::Route::decomposition, casimir::Route::f_series, casimir::Route::zeta};
    else return false;
    return true;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') { out += "\\n"; continue; }
        out.push_back(c);
    }
    return out;
}

void write_energy_row_csv(std::ostream& os, const EnergyRow& r, casimir::Route route) {
    os << format17(r.xi) << ',' << format17(r.a) << ',' << format17(r.beta) << ','
       << format17(r.breakdown.e0) << ',' << format17(r.breakdown.f1) << ','
       << format17(r.breakdown.f2) << ',' << format17(r.breakdown.thermal) << ','
       << format17(r.breakdown.total) << ',' << route_name(route) << ','
       << format17(r.breakdown.est_error);
    if (r.failed) os << ",error=" << r.error;
    os << '\n';
}

void write_energy_row_json(std::ostream& os, const EnergyRow& r, casimir::Route route,
                           bool last) {
    os << "    {\"xi\": " << format17(r.xi) << ", \"a\": " << format17(r.a)
       << ", \"beta\": " << format17(r.beta) << ", \"e0\": " << format17(r.breakdown.e0)
       << ", \"f1\": " << format17(r.breakdown.f1) << ", \"f2\": " << format17(r.breakdown.f2)
       << ", \"thermal\": " << format17(r.breakdown.thermal)
       << ", \"total\": " << format17(r.breakdown.total) << ", \"route\": \"" << route_name(route)
       << "\", \"est_error\": " << format17(r.breakdown.est_error);
    if (r.failed) os << ", \"error\": \"" << json_escape(r.error) << "\"";
    os << (last ? "}\n" : "},\n");
}

EnergyRow evaluate_point(double a, double beta, casimir::Route route, const SumControl& ctl) {
    EnergyRow row;
    row.a = a;
    row.beta = beta;
    casimir::Slab slab{a, beta};
    row.xi = slab.xi();
    try {
        row.breakdown = casimir::free_energy_antiperiodic(slab, route, ctl);
    } catch (const ConvergenceError& e) {
        row.failed = true;
        row.error = e.what();
        row.breakdown.route = route;
        row.breakdown.e0 = row.breakdown.f1 = row.breakdown.f2 = row.breakdown.thermal =
            row.breakdown.total = row.breakdown.est_error = std::nan("");
    }
    return row;
}

struct VerifyReport {
    double thermal_oracle = 0.0;
    double thermal_rel_diff = 0.0;
    double zero_point_oracle = 0.0;
    double zero_point_rel_diff = 0.0;
    bool ok = true;
};

VerifyReport run_verify(const casimir::Slab& slab, const SumControl& ctl) {
    VerifyReport v;
    oracle::OracleControl octl;
    octl.delta = 0.04 * slab.a;
    const double xi = slab.xi();
    const auto scaled = static_cast<std::int64_t>(std::ceil(1200.0 * xi));
    octl.m_max = std::min<std::int64_t>(20000, std::max<std::int64_t>(400, scaled));
    octl.j_max = octl.m_max;
    v.thermal_oracle = oracle::thermal_oracle(slab, octl);
    const double thermal = casimir::thermal_part(slab, ctl);
    v.thermal_rel_diff = std::abs(thermal - v.thermal_oracle) /
                         std::max(std::abs(v.thermal_oracle), 1e-300);
    v.zero_point_oracle = oracle::zero_point_oracle(slab.a, octl);
    const double e0 = casimir::zero_point_antiperiodic(slab.a);
    v.zero_point_rel_diff = std::abs(e0 - v.zero_point_oracle) / e0;
    v.ok = v.thermal_rel_diff <= 1e-7 && v.zero_point_rel_diff <= 1e-5;
    return v;
}

} // namespace

std::string format17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void SweepSpec::validate() const {
    if (!(a > 0.0)) throw DomainError("SweepSpec.a must be > 0");
    if (!(from < to)) throw DomainError("SweepSpec.from must be < SweepSpec.to");
    if (points < 2) throw DomainError("SweepSpec.points must be >= 2");
    if (spacing == Spacing::log && !(from > 0.0))
        throw DomainError("SweepSpec.from must be > 0 with log spacing");
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        g[static_cast<std::size_t>(i)] =
            (spacing == Spacing::log) ? from * std::pow(to / from, t) : from + (to - from) * t;
    }
    return g;
}

int cmd_energy(const EnergyRequest& req, std::ostream& out, std::ostream& err) {
    try {
        if (req.have_beta == req.have_xi)
            throw DomainError("energy: exactly one of --beta / --xi must be given");
        if (!(req.a > 0.0)) throw DomainError("Slab.a must be > 0");
        std::vector<casimir::Route> routes;
        if (!parse_routes(req.route, routes))
            throw DomainError("energy: unknown --route '" + req.route + "'");
        const double beta = req.have_beta ? req.beta : req.a / (kPi * req.xi);
        casimir::Slab slab{req.a, beta};
        slab.validate();
        const SumControl ctl = req.common.sum_control();
        ctl.validate();

        std::vector<EnergyRow> rows;
        for (auto r : routes) {
            rows.push_back(evaluate_point(slab.a, slab.beta, r, ctl));
            if (rows.back().failed) {
                err << "error: " << rows.back().error << '\n';
                return 2;
            }
        }
        VerifyReport verify;
        if (req.verify) verify = run_verify(slab, ctl);

        if (req.common.format == Format::csv) {
            out << "# antiperiodic-slab free energy\n# " << kUnitsNote << '\n'
                << kEnergyHeader << '\n';
            for (std::size_t i = 0; i < rows.size(); ++i)
                write_energy_row_csv(out, rows[i], routes[i]);
            if (req.verify) {
                out << "# verify: thermal_oracle=" << format17(verify.thermal_oracle)
                    << " rel_diff=" << format17(verify.thermal_rel_diff) << '\n'
                    << "# verify: zero_point_oracle=" << format17(verify.zero_point_oracle)
                    << " rel_diff=" << format17(verify.zero_point_rel_diff) << '\n';
            }
        } else {
            out << "{\n  \"command\": \"energy\",\n  \"units\": \"" << kUnitsNote << "\",\n"
                << "  \"rows\": [\n";
            for (std::size_t i = 0; i < rows.size(); ++i)
                write_energy_row_json(out, rows[i], routes[i], i + 1 == rows.size());
            out << "  ]";
            if (req.verify) {
                out << ",\n  \"verify\": {\"thermal_oracle\": " << format17(verify.thermal_oracle)
                    << ", \"thermal_rel_diff\": " << format17(verify.thermal_rel_diff)
                    << ", \"zero_point_oracle\": " << format17(verify.zero_point_oracle)
                    << ", \"zero_point_rel_diff\": " << format17(verify.zero_point_rel_diff)
                    << "}";
            }
            out << "\n}\n";
        }
        if (req.verify && !verify.ok) {
            err << "error: oracle verification outside tolerance\n";
            return 2;
        }
        return 0;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const RouteDisagreementError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

std::string render_sweep(const SweepRequest& req) {
    std::ostringstream out;
    std::vector<casimir::Route> routes;
    if (!parse_routes(req.route, routes) || routes.size() != 1)
        throw DomainError("sweep: --route must name a single route");
    req.spec.validate();
    const SumControl ctl = req.common.sum_control();
    ctl.validate();

    std::vector<EnergyRow> rows;
    bool any_failed = false;
    for (double v : req.spec.grid()) {
        double beta = 0.0;
        switch (req.spec.variable) {
            case SweepSpec::Variable::xi: beta = req.spec.a / (kPi * v); break;
            case SweepSpec::Variable::beta: beta = v; break;
            case SweepSpec::Variable::temperature:
                if (!(v > 0.0)) throw DomainError("sweep: temperature grid must be positive");
                beta = 1.0 / v;
                break;
        }
        rows.push_back(evaluate_point(req.spec.a, beta, routes[0], ctl));
        any_failed = any_failed || rows.back().failed;
    }

    if (req.common.format == Format::csv) {
        out << "# antiperiodic-slab free energy sweep\n# " << kUnitsNote << '\n'
            << kEnergyHeader << '\n';
        for (const auto& r : rows) write_energy_row_csv(out, r, routes[0]);
    } else {
        out << "{\n  \"command\": \"sweep\",\n  \"units\": \"" << kUnitsNote << "\",\n"
            << "  \"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            write_energy_row_json(out, rows[i], routes[0], i + 1 == rows.size());
        out << "  ]\n}\n";
    }
    if (any_failed) throw ConvergenceError("sweep: some grid points failed to converge\n" + out.str());
    return out.str();
}

int cmd_sweep(const SweepRequest& req, std::ostream& out, std::ostream& err) {
    try {
        out << render_sweep(req);
        return 0;
    } catch (const ConvergenceError& e) {
        // partial output (with per-row failure markers) is part of the payload
        const std::string what = e.what();
        const auto nl = what.find('\n');
        if (nl != std::string::npos) out << what.substr(nl + 1);
        err << "error: " << what.substr(0, nl) << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_tis(const TISRequest& req, std::ostream& out, std::ostream& err) {
    try {
        casimir::TISRelation rel;
        if (req.relation == "f1") rel = casimir::TISRelation::f1_relation;
        else if (req.relation == "f2-corrected") rel = casimir::TISRelation::f2_relation_corrected;
        else if (req.relation == "f2-as-printed") rel = casimir::TISRelation::f2_relation_as_printed;
        else if (req.relation == "g") rel = casimir::TISRelation::g_reflection;
        else throw DomainError("tis: unknown --relation '" + req.relation + "'");
        if (!(req.xi_min > 0.0) || !(req.xi_min < req.xi_max) || req.points < 2)
            throw DomainError("tis: need 0 < --xi-min < --xi-max and --points >= 2");
        const SumControl ctl = req.common.sum_control();
        ctl.validate();

        std::vector<casimir::TISReport> reports;
        double max_rel = 0.0;
        for (int i = 0; i < req.points; ++i) {
            const double t = static_cast<double>(i) / (req.points - 1);
            const double xi = req.xi_min * std::pow(req.xi_max / req.xi_min, t);
            reports.push_back(casimir::tis_check(rel, xi, ctl));
            max_rel = std::max(max_rel, reports.back().rel_residual);
        }
        if (req.common.format == Format::csv) {
            out << "# temperature-inversion-symmetry report: relation=" << req.relation << '\n'
                << "relation,xi,lhs,rhs,abs_residual,rel_residual,fixed_point\n";
            for (const auto& r : reports) {
                out << req.relation << ',' << format17(r.xi) << ',' << format17(r.lhs) << ','
                    << format17(r.rhs) << ',' << format17(r.abs_residual) << ','
                    << format17(r.rel_residual) << ',' << (r.fixed_point ? 1 : 0) << '\n';
            }
            out << "# max_rel_residual = " << format17(max_rel) << '\n';
        } else {
            out << "{\n  \"command\": \"tis\",\n  \"relation\": \"" << req.relation << "\",\n"
                << "  \"rows\": [\n";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const auto& r = reports[i];
                out << "    {\"xi\": " << format17(r.xi) << ", \"lhs\": " << format17(r.lhs)
                    << ", \"rhs\": " << format17(r.rhs)
                    << ", \"abs_residual\": " << format17(r.abs_residual)
                    << ", \"rel_residual\": " << format17(r.rel_residual)
                    << ", \"fixed_point\": " << (r.fixed_point ? "true" : "false")
                    << (i + 1 == reports.size() ? "}\n" : "},\n");
            }
            out << "  ],\n  \"max_rel_residual\": " << format17(max_rel) << "\n}\n";
        }
        return 0;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_epstein(const EpsteinRequest& req, std::ostream& out, std::ostream& err) {
    try {
        epstein::EpsteinForm form{req.z, req.a1, req.a2};
        form.validate();
        const SumControl ctl = req.common.sum_control();
        ctl.validate();
        const double value = epstein::epstein2(form);
        bool have_direct = false;
        LatticeValue direct;
        if (req.direct) {
            direct = epstein::epstein2_direct(form, ctl);
            have_direct = true;
        }
        bool have_fe = false;
        double fe_residual = 0.0;
        if (req.check) {
            // Lambda(z; a1, a2) = (a1 a2)^(-1/2) Lambda(1-z; 1/a1, 1/a2)
            const double lhs = epstein::epstein2_completed(form);
            const double rhs = std::pow(req.a1 * req.a2, -0.5) *
                               epstein::epstein2_completed({1.0 - req.z, 1.0 / req.a1, 1.0 / req.a2});
            fe_residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
            have_fe = true;
        }
        if (req.common.format == Format::csv) {
            out << "# epstein lattice zeta E2(z; a1, a2), primed sum over Z^2 \\ {0}\n"
                << "z,a1,a2,value,direct_value,direct_est_error,fe_residual\n"
                << format17(req.z) << ',' << format17(req.a1) << ',' << format17(req.a2) << ','
                << format17(value) << ','
                << (have_direct ? format17(direct.value) : std::string()) << ','
                << (have_direct ? format17(direct.est_error) : std::string()) << ','
                << (have_fe ? format17(fe_residual) : std::string()) << '\n';
        } else {
            out << "{\n  \"command\": \"epstein\",\n  \"z\": " << format17(req.z)
                << ",\n  \"a1\": " << format17(req.a1) << ",\n  \"a2\": " << format17(req.a2)
                << ",\n  \"value\": " << format17(value);
            if (have_direct)
                out << ",\n  \"direct_value\": " << format17(direct.value)
                    << ",\n  \"direct_est_error\": " << format17(direct.est_error);
            if (have_fe) out << ",\n  \"fe_residual\": " << format17(fe_residual);
            out << "\n}\n";
        }
        return 0;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_selftest(const SelftestRequest& req, std::ostream& out, std::ostream& err) {
    try {
        selftest::Options opt;
        opt.tol_override = req.tol_override;
        return selftest::run_and_report(opt, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace apc::cli
