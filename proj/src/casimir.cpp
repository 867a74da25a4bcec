#include "apcasimir/casimir.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "apcasimir/epstein.hpp"
#include "apcasimir/lattice.hpp"
#include "apcasimir/specfun.hpp"

namespace apc::casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double pi2() { return kPi * kPi; }

// ---- zeta route ----

// Quadrant Epstein sum sum_{n1,n2 >= 1} from the primed full-plane one:
// E2q = (E2' - 2 a1^-z zeta(2z) - 2 a2^-z zeta(2z)) / 4.
double epstein_quadrant(double z, double a1, double a2) {
    const double full = epstein::epstein2({z, a1, a2});
    const double axes = 2.0 * (std::pow(a1, -z) + std::pow(a2, -z)) * specfun::riemann_zeta(2.0 * z);
    return (full - axes) / 4.0;
}

double h_of_s(double s, double a, double beta) {
    const double zterm = 2.0 * std::pow(kPi / a, 2.0 - 2.0 * s) *
                         (1.0 - std::exp2(2.0 - 2.0 * s)) * specfun::riemann_zeta(2.0 * s - 2.0);
    const double z = s - 1.0;
    const double diff = epstein_quadrant(z, 1.0 / (a * a), 4.0 / (beta * beta)) -
                        epstein_quadrant(z, 4.0 / (a * a), 4.0 / (beta * beta));
    return zterm + 4.0 * std::pow(kPi, 2.0 - 2.0 * s) * diff;
}

// F = -(1/2beta) d/ds [ H(s)/(4 pi (s-1)) ]|_{s=0} = (H(0) + H'(0))/(8 pi beta).
// The 1/(s-1) prefactor is differentiated analytically; H'(0) numerically.
double free_energy_zeta(const Slab& slab, double* est) {
    const double h0 = h_of_s(0.0, slab.a, slab.beta);
    const double step = 5e-3;
    auto central = [&](double hh) {
        return (h_of_s(hh, slab.a, slab.beta) - h_of_s(-hh, slab.a, slab.beta)) / (2.0 * hh);
    };
    const double d1 = central(step);
    const double d2 = central(0.5 * step);
    const double hp = (4.0 * d2 - d1) / 3.0;
    const double total = (h0 + hp) / (8.0 * kPi * slab.beta);
    if (est) {
        const double deriv_err = std::abs(d2 - d1) / 3.0 + 1e-11 * std::abs(hp);
        *est = (std::abs(h0) + deriv_err) / (8.0 * kPi * slab.beta) + 8.0 * kEps * std::abs(total);
    }
    return total;
}

// ---- thermal part ----

// -f(xi)/(pi beta^3) with f from the winding representation.
double thermal_winding(const Slab& slab, const SumControl& ctl, double* est) {
    const double xi = slab.xi();
    SumControl c = ctl;
    c.mode = SumMode::accelerated;
    const LatticeValue f = lattice::f_xi_winding(xi, c);
    const double norm = kPi * slab.beta * slab.beta * slab.beta;
    if (est) *est = f.est_error / norm;
    return -f.value / norm;
}

struct DecompParts {
    double f1, f2, est;
};

DecompParts decomposition_parts(const Slab& slab, const SumControl& ctl) {
    const double xi = slab.xi();
    const double a3 = slab.a * slab.a * slab.a;
    const LatticeValue ga = lattice::g_sum(2.0 * kPi * xi, ctl);
    const LatticeValue gb = lattice::g_sum(kPi * xi, ctl);
    DecompParts p;
    p.f1 = -ga.value / (16.0 * pi2() * a3);
    p.f2 = -gb.value / (2.0 * pi2() * a3);
    p.est = ga.est_error / (16.0 * pi2() * a3) + gb.est_error / (2.0 * pi2() * a3) +
            4.0 * kEps * (std::abs(p.f1) + std::abs(p.f2));
    return p;
}

} // namespace

double ModeSpectrum::antiperiodic_wavenumber(std::int64_t n) const {
    return (2.0 * static_cast<double>(n) + 1.0) * kPi / a;
}
double ModeSpectrum::spatial_mode(std::int64_t m) const {
    return (2.0 * static_cast<double>(m) - 1.0) * kPi / a;
}
double ModeSpectrum::matsubara(std::int64_t l) const {
    return 2.0 * kPi * static_cast<double>(l) / beta;
}

double xi_of(const Slab& slab) {
    slab.validate();
    return slab.xi();
}

double zero_point_antiperiodic(double a) {
    if (!(a > 0.0)) throw DomainError("zero_point_antiperiodic: requires a > 0");
    return 7.0 * pi2() / (720.0 * a * a * a);
}

double free_energy_periodic(const Slab& slab, const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    const double xi = slab.xi();
    const double a3 = slab.a * slab.a * slab.a;
    return -lattice::g_sum(kPi * xi, ctl).value / (2.0 * pi2() * a3);
}

double f1(const Slab& slab, const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    return decomposition_parts(slab, ctl).f1;
}

double f2(const Slab& slab, const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    return decomposition_parts(slab, ctl).f2;
}

namespace {

double thermal_with_est(const Slab& slab, const SumControl& ctl, double* est) {
    const double xi = slab.xi();
    if (xi <= 2.0) return thermal_winding(slab, ctl, est);
    const DecompParts p = decomposition_parts(slab, ctl);
    const double e0 = zero_point_antiperiodic(slab.a);
    if (est) *est = p.est + 4.0 * kEps * e0;
    return p.f1 - p.f2 - e0;
}

} // namespace

double thermal_part(const Slab& slab, const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    return thermal_with_est(slab, ctl, nullptr);
}

FreeEnergyBreakdown free_energy_antiperiodic(const Slab& slab, Route route,
                                             const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    FreeEnergyBreakdown out;
    out.route = route;
    out.e0 = zero_point_antiperiodic(slab.a);
    const DecompParts p = decomposition_parts(slab, ctl);
    out.f1 = p.f1;
    out.f2 = p.f2;
    double thermal_est = 0.0;
    out.thermal = thermal_with_est(slab, ctl, &thermal_est);
    // est_error covers both the total and the e0 + thermal recomposition.
    switch (route) {
        case Route::decomposition:
            out.total = p.f1 - p.f2;
            out.est_error = p.est + thermal_est +
                            4.0 * kEps * (std::abs(out.e0) + std::abs(out.thermal));
            break;
        case Route::f_series: {
            const LatticeValue f = lattice::f_xi(slab.xi(), ctl);
            const double norm = kPi * slab.beta * slab.beta * slab.beta;
            out.total = out.e0 - f.value / norm;
            out.est_error = f.est_error / norm + thermal_est +
                            4.0 * kEps * (out.e0 + std::abs(out.total));
            break;
        }
        case Route::zeta: {
            double est = 0.0;
            out.total = free_energy_zeta(slab, &est);
            out.est_error = est + thermal_est;
            break;
        }
    }
    return out;
}

std::vector<FreeEnergyBreakdown> route_triangle(const Slab& slab, const SumControl& ctl) {
    std::vector<FreeEnergyBreakdown> routes;
    routes.push_back(free_energy_antiperiodic(slab, Route::decomposition, ctl));
    routes.push_back(free_energy_antiperiodic(slab, Route::f_series, ctl));
    routes.push_back(free_energy_antiperiodic(slab, Route::zeta, ctl));
    for (std::size_t i = 0; i < routes.size(); ++i) {
        for (std::size_t j = i + 1; j < routes.size(); ++j) {
            const double diff = std::abs(routes[i].total - routes[j].total);
            const double budget = 10.0 * (routes[i].est_error + routes[j].est_error);
            if (diff > budget)
                throw RouteDisagreementError(
                    "free-energy routes disagree: |" + std::to_string(routes[i].total) + " - " +
                    std::to_string(routes[j].total) + "| exceeds 10x combined estimates (" +
                    std::to_string(budget) + ")");
        }
    }
    return routes;
}

TISReport tis_check(TISRelation relation, double xi, const SumControl& ctl) {
    if (!(xi > 0.0)) throw DomainError("tis_check: requires xi > 0");
    ctl.validate();
    // Dimensionless profiles at a = 1.
    auto prof1 = [&](double x) { return -lattice::g_sum(2.0 * kPi * x, ctl).value / (16.0 * pi2()); };
    auto prof2 = [&](double x) { return -lattice::g_sum(kPi * x, ctl).value / (2.0 * pi2()); };
    TISReport r;
    r.relation = relation;
    r.xi = xi;
    switch (relation) {
        case TISRelation::f1_relation: {
            const double scale = std::pow(2.0 * kPi * xi, 4);
            r.lhs = prof1(xi);
            r.rhs = scale * prof1(1.0 / (4.0 * pi2() * xi));
            r.fixed_point = std::abs(scale - 1.0) < 1e-12;
            break;
        }
        case TISRelation::f2_relation_corrected: {
            const double scale = std::pow(kPi * xi, 4);
            r.lhs = prof2(xi);
            r.rhs = scale * prof2(1.0 / (pi2() * xi));
            r.fixed_point = std::abs(scale - 1.0) < 1e-12;
            break;
        }
        case TISRelation::f2_relation_as_printed: {
            const double scale = std::pow(kPi * xi, 4);
            r.lhs = prof2(xi);
            r.rhs = scale * prof1(1.0 / (pi2() * xi));
            break;
        }
        case TISRelation::g_reflection: {
            r.lhs = lattice::g_sum(xi, ctl).value;
            r.rhs = std::pow(xi, 4) * lattice::g_sum(1.0 / xi, ctl).value;
            r.fixed_point = std::abs(xi - 1.0) < 1e-12;
            break;
        }
    }
    r.abs_residual = std::abs(r.lhs - r.rhs);
    const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_residual = (scale > 0.0) ? r.abs_residual / scale : 0.0;
    return r;
}

std::vector<std::pair<std::string, double>> high_temperature_expansion(const Slab& slab) {
    slab.validate();
    const double t = 1.0 / slab.beta;
    const double a = slab.a;
    return {
        {"stefan_boltzmann", -pi2() * a * t * t * t * t / 90.0},
        {"linear_in_T", 3.0 * specfun::riemann_zeta(3.0) * t / (8.0 * kPi * a * a)},
        {"constant", 0.0},
    };
}

double low_temperature_correction(const Slab& slab, const SumControl& ctl) {
    slab.validate();
    ctl.validate();
    const double xi = slab.xi();
    const double a3 = slab.a * slab.a * slab.a;
    // F1, F2 transported to arguments 1/(4 pi^2 xi), 1/(pi^2 xi): their
    // Stefan-Boltzmann pieces rebuild the zero-point constant exactly and
    // the linear pieces cancel, so only the exponential tails remain:
    //   thermal = [ (pi xi)^4 R(1/(pi xi))/2 - (2 pi xi)^4 R(1/(2 pi xi))/16 ] / (pi^2 a^3).
    SumControl c = ctl;
    c.mode = SumMode::accelerated;
    const double r1 = lattice::g_exponential_tail(1.0 / (kPi * xi), c).value;
    const double r2 = lattice::g_exponential_tail(1.0 / (2.0 * kPi * xi), c).value;
    const double p4 = std::pow(kPi * xi, 4); // (2 pi xi)^4/16 = (pi xi)^4
    return (p4 * r1 / 2.0 - p4 * r2) / (pi2() * a3);
}

} // namespace apc::casimir
