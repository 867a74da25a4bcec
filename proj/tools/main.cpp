// apcasimir: finite-temperature free energy of a massless scalar field that
// is antiperiodic across a spatial period, per unit transverse area, with
// cross-checked evaluation routes, inversion-symmetry reports, Epstein
// lattice-zeta queries and an acceptance selftest.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "apcasimir/cli.hpp"

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;
    bool open(const std::string& path) {
        if (path.empty()) return true;
        file.open(path, std::ios::binary);
        if (!file) return false;
        os = &file;
        return true;
    }
};

void add_common(CLI::App* cmd, apc::cli::CommonOptions& common, std::string& format,
                std::string& output) {
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", output, "Write output to PATH (default stdout)");
    cmd->add_option("--tol", common.tol, "Relative tolerance for truncated sums")
        ->capture_default_str();
    cmd->add_option("--max-terms", common.max_terms, "Hard cap per summation index")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir free energy of an antiperiodic massless scalar slab"};
    app.require_subcommand(1);

    apc::cli::EnergyRequest energy;
    std::string energy_format = "csv", energy_output;
    auto* cmd_energy = app.add_subcommand("energy", "Evaluate the free-energy breakdown at one point");
    cmd_energy->add_option("--a", energy.a, "Spatial antiperiod a (length)")->required();
    auto* opt_beta = cmd_energy->add_option("--beta", energy.beta, "Inverse temperature (length)");
    auto* opt_xi = cmd_energy->add_option("--xi", energy.xi, "Reduced temperature xi = a/(pi beta)");
    cmd_energy->add_option("--route", energy.route, "decomposition | f-series | zeta | all")
        ->capture_default_str();
    cmd_energy->add_flag("--verify", energy.verify, "Cross-check against the independent oracles");
    add_common(cmd_energy, energy.common, energy_format, energy_output);

    apc::cli::SweepRequest sweep;
    std::string sweep_format = "csv", sweep_output, sweep_var = "xi", sweep_spacing = "log";
    auto* cmd_sweep = app.add_subcommand("sweep", "Evaluate over a parameter grid (CSV/JSON stream)");
    cmd_sweep->add_option("--a", sweep.spec.a, "Spatial antiperiod a")->capture_default_str();
    cmd_sweep->add_option("--var", sweep_var, "Sweep variable: xi | beta | T")
        ->check(CLI::IsMember({"xi", "beta", "T"}))
        ->capture_default_str();
    cmd_sweep->add_option("--from", sweep.spec.from, "Grid start")->capture_default_str();
    cmd_sweep->add_option("--to", sweep.spec.to, "Grid end")->capture_default_str();
    cmd_sweep->add_option("--points", sweep.spec.points, "Grid size (>= 2)")->capture_default_str();
    cmd_sweep->add_option("--spacing", sweep_spacing, "linear | log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    cmd_sweep->add_option("--route", sweep.route, "decomposition | f-series | zeta")
        ->capture_default_str();
    add_common(cmd_sweep, sweep.common, sweep_format, sweep_output);

    apc::cli::TISRequest tis;
    std::string tis_format = "csv", tis_output;
    auto* cmd_tis = app.add_subcommand("tis", "Temperature-inversion-symmetry residual report");
    cmd_tis->add_option("--relation", tis.relation, "f1 | f2-corrected | f2-as-printed | g")
        ->capture_default_str();
    cmd_tis->add_option("--xi-min", tis.xi_min, "Grid start")->capture_default_str();
    cmd_tis->add_option("--xi-max", tis.xi_max, "Grid end")->capture_default_str();
    cmd_tis->add_option("--points", tis.points, "Grid size")->capture_default_str();
    add_common(cmd_tis, tis.common, tis_format, tis_output);

    apc::cli::EpsteinRequest eps;
    std::string eps_format = "csv", eps_output;
    auto* cmd_eps = app.add_subcommand("epstein", "Evaluate E2(z; a1, a2)");
    cmd_eps->add_option("--z", eps.z, "Exponent z (pole at z = 1)")->required();
    cmd_eps->add_option("--a1", eps.a1, "First coefficient (> 0)")->capture_default_str();
    cmd_eps->add_option("--a2", eps.a2, "Second coefficient (> 0)")->capture_default_str();
    cmd_eps->add_flag("--direct", eps.direct, "Also evaluate the truncated sum (z > 1)");
    cmd_eps->add_flag("--check", eps.check, "Also report the functional-equation residual");
    add_common(cmd_eps, eps.common, eps_format, eps_output);

    apc::cli::SelftestRequest self;
    double self_tol = 0.0;
    auto* cmd_self = app.add_subcommand("selftest", "Run the acceptance suite (exit 0 iff all pass)");
    cmd_self->add_option("--tol", self_tol,
                         "Override the built-in per-criterion agreement tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    OutputTarget target;
    auto emit = [&](const std::string& path, auto&& fn) {
        if (!target.open(path)) {
            std::cerr << "error: cannot open output file '" << path << "'\n";
            return 1;
        }
        return fn(*target.os);
    };

    if (cmd_energy->parsed()) {
        energy.have_beta = opt_beta->count() > 0;
        energy.have_xi = opt_xi->count() > 0;
        energy.common.format = energy_format == "json" ? apc::cli::Format::json : apc::cli::Format::csv;
        return emit(energy_output,
                    [&](std::ostream& os) { return apc::cli::cmd_energy(energy, os, std::cerr); });
    }
    if (cmd_sweep->parsed()) {
        sweep.common.format = sweep_format == "json" ? apc::cli::Format::json : apc::cli::Format::csv;
        sweep.spec.variable = sweep_var == "beta" ? apc::cli::SweepSpec::Variable::beta
                              : sweep_var == "T"  ? apc::cli::SweepSpec::Variable::temperature
                                                  : apc::cli::SweepSpec::Variable::xi;
        sweep.spec.spacing = sweep_spacing == "linear" ? apc::cli::SweepSpec::Spacing::linear
                                                       : apc::cli::SweepSpec::Spacing::log;
        return emit(sweep_output,
                    [&](std::ostream& os) { return apc::cli::cmd_sweep(sweep, os, std::cerr); });
    }
    if (cmd_tis->parsed()) {
        tis.common.format = tis_format == "json" ? apc::cli::Format::json : apc::cli::Format::csv;
        return emit(tis_output,
                    [&](std::ostream& os) { return apc::cli::cmd_tis(tis, os, std::cerr); });
    }
    if (cmd_eps->parsed()) {
        eps.common.format = eps_format == "json" ? apc::cli::Format::json : apc::cli::Format::csv;
        return emit(eps_output,
                    [&](std::ostream& os) { return apc::cli::cmd_epstein(eps, os, std::cerr); });
    }
    if (cmd_self->parsed()) {
        self.tol_override = self_tol;
        return apc::cli::cmd_selftest(self, std::cout, std::cerr);
    }
    return 1;
}
