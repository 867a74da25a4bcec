#pragma once

// Independent brute-force cross-checks that share no code path with the
// lattice/epstein machinery: geometric series and elementary integrals only.
//
// Thermal oracle: standard statistical mechanics over the antiperiodic
// spectrum. After the elementary transverse integral,
//   Delta/L^2 = -(1/(pi beta^3)) sum_{m odd} sum_{j>=1} e^(-j beta mu_m)
//               (j beta mu_m + 1) / j^3,      mu_m = m pi / a,
// with spatial degeneracy 2 already folded in.
//
// Zero-point oracle: exponential cutoff e^(-delta omega) on the mode sum
// gives E(delta)/L^2 = (1/2pi) d^2/d delta^2 [S(delta)/delta] with
// S(delta) = sum_{m odd} e^(-delta m pi/a) = 1/(2 sinh(pi delta/a)).
// Subtracting the bulk divergence 3a/(2 pi^2 delta^4) and Richardson-
// extrapolating a 3-rung geometric delta ladder (order-2 elimination)
// recovers the zero-point constant with O(delta^2) ladder error.

#include <cstdint>

#include "apcasimir/casimir.hpp"
#include "apcasimir/errors.hpp"

namespace apc::oracle {

struct OracleControl {
    std::int64_t m_max = 400; // odd-mode cutoff (modes m = 1, 3, ..., <= 2 m_max - 1)
    std::int64_t j_max = 400; // Boltzmann-series cutoff
    double delta = 0.04;      // largest cutoff rung (units of a)

    void validate() const {
        if (m_max < 1 || j_max < 1)
            throw DomainError("OracleControl: m_max and j_max must be >= 1");
        if (!(delta > 0.0)) throw DomainError("OracleControl: delta must be > 0");
    }
};

// Thermal part of the free energy per unit area. Throws ConvergenceError if
// the first omitted mode still exceeds rel_tol times the accumulated sum.
double thermal_oracle(const casimir::Slab& slab, const OracleControl& ctl,
                      double rel_tol = 1e-12);

// Cutoff-regularized zero-point energy E(delta), divergent as delta -> 0.
double zero_point_cutoff(double a, double delta);

// E(delta) - 3a/(2 pi^2 delta^4), finite as delta -> 0.
double zero_point_regularized(double a, double delta);

// Richardson extrapolation of zero_point_regularized over the ladder
// {delta, delta/2, delta/4}. Throws ExtrapolationError if the ladder does
// not converge monotonically.
double zero_point_oracle(double a, const OracleControl& ctl);

} // namespace apc::oracle
