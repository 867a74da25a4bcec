#pragma once

// Command implementations behind the command-line tool: point evaluations,
// parameter sweeps, inversion-symmetry reports, Epstein queries, selftest.
// All numeric output is locale-free with 17 significant digits so that
// identical invocations produce byte-identical CSV/JSON.
//
// Exit codes: 0 success, 1 usage/validation error, 2 numerical convergence
// failure (including route disagreement).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "apcasimir/casimir.hpp"
#include "apcasimir/sum_control.hpp"

namespace apc::cli {

enum class Format { csv, json };

struct CommonOptions {
    Format format = Format::csv;
    double tol = 1e-10;
    std::int64_t max_terms = 2000000;

    SumControl sum_control() const {
        SumControl c;
        c.rel_tol = tol;
        c.max_terms = max_terms;
        c.mode = SumMode::accelerated;
        return c;
    }
};

std::string format17(double v);

// One evaluated grid point.
struct EnergyRow {
    double xi = 0.0, a = 0.0, beta = 0.0;
    casimir::FreeEnergyBreakdown breakdown;
    bool failed = false;
    std::string error;
};

struct SweepSpec {
    enum class Variable { xi, beta, temperature };
    enum class Spacing { linear, log };
    Variable variable = Variable::xi;
    double from = 0.05;
    double to = 20.0;
    int points = 25;
    Spacing spacing = Spacing::log;
    double a = 1.0;

    void validate() const;
    std::vector<double> grid() const;
};

struct EnergyRequest {
    double a = 1.0;
    bool have_beta = false;
    double beta = 0.0;
    bool have_xi = false;
    double xi = 0.0;
    std::string route = "decomposition"; // decomposition | f-series | zeta | all
    bool verify = false;
    CommonOptions common;
};

struct SweepRequest {
    SweepSpec spec;
    std::string route = "decomposition";
    CommonOptions common;
};

struct TISRequest {
    std::string relation = "f1"; // f1 | f2-corrected | f2-as-printed | g
    double xi_min = 0.02;
    double xi_max = 50.0;
    int points = 25;
    CommonOptions common;
};

struct EpsteinRequest {
    double z = 2.0;
    double a1 = 1.0;
    double a2 = 1.0;
    bool direct = false; // also evaluate the windowed truncated sum (z > 1)
    bool check = false;  // also report the functional-equation residual
    CommonOptions common;
};

struct SelftestRequest {
    double tol_override = 0.0; // 0: built-in per-criterion tolerances
};

int cmd_energy(const EnergyRequest& req, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepRequest& req, std::ostream& out, std::ostream& err);
int cmd_tis(const TISRequest& req, std::ostream& out, std::ostream& err);
int cmd_epstein(const EpsteinRequest& req, std::ostream& out, std::ostream& err);
int cmd_selftest(const SelftestRequest& req, std::ostream& out, std::ostream& err);

// Canonical sweep text used by the determinism criterion; the sweep command
// goes through the same path.
std::string render_sweep(const SweepRequest& req);

} // namespace apc::cli
