#pragma once

// Epstein lattice zeta of a diagonal binary quadratic form,
//
//   E2(z; a1, a2) = sum'_{(n1,n2) in Z^2 \ {0}} (a1 n1^2 + a2 n2^2)^(-z),
//
// convergent for z > 1 and continued to every real z != 1 through the
// Mellin split of the theta kernel: with D = a1 a2, the dual form
// Q*(m) = m1^2/a1 + m2^2/a2 and split point mu = pi D^(-1/4),
//
//   Gamma(z) E2(z) = sum' Q^(-z) Gamma(z, mu Q)
//                  + (pi/sqrt(D)) sum' (pi^2 Q*)^(z-1) Gamma(1-z, pi^2 Q*/mu)
//                  + (pi/sqrt(D)) mu^(z-1)/(z-1) - mu^z/z.
//
// Both theta halves converge like e^(-mu Q); the symmetric split point
// balances them. Dividing by Gamma(z), with the -mu^z/z piece folded into
// Gamma(z+1), removes the spurious singularities at z = 0, -1, -2, ...,
// leaving the genuine simple pole at z = 1 (residue pi/sqrt(D)) and the
// trivial zeros E2(-k) = 0, E2(0) = -1.

#include "apcasimir/sum_control.hpp"

namespace apc::epstein {

struct EpsteinForm {
    double z = 2.0;
    double a1 = 1.0; // inverse length^2
    double a2 = 1.0; // inverse length^2

    void validate() const {
        if (!(a1 > 0.0) || !(a2 > 0.0))
            throw DomainError("EpsteinForm: requires a1 > 0 and a2 > 0");
        if (z == 1.0) throw PoleError("EpsteinForm: simple pole at z = 1");
    }
};

// Truncated primed double sum, z > 1 only. A smooth radial window plus its
// analytic plane integral replace the sharp cutoff, so the truncation error
// decays far faster than the bare R^(2-2z) tail; est_error compares two
// window radii. Stays independent of the theta/incomplete-gamma machinery.
// Throws DomainError for z <= 1, ConvergenceError if the index range needed
// exceeds ctl.max_terms or est_error stays above ctl.rel_tol.
LatticeValue epstein2_direct(const EpsteinForm& form, const SumControl& ctl);

// Analytic continuation, any real z != 1.
double epstein2(const EpsteinForm& form);

// Completed function Lambda(z) = pi^(-z) Gamma(z) E2(z; a1, a2), evaluated
// through the regular rearrangement (finite wherever z != 0, 1). Satisfies
// Lambda(z; a1, a2) = (a1 a2)^(-1/2) Lambda(1-z; 1/a1, 1/a2).
double epstein2_completed(const EpsteinForm& form);

// dE2/dz by Richardson-extrapolated central differences (step 5e-3).
// Throws PoleError for |z - 1| < 2 * step.
double epstein2_deriv_z(const EpsteinForm& form);

} // namespace apc::epstein
