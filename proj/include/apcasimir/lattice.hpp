#pragma once

// Primed double lattice sums over Z^2 \ {(0,0)}:
//
//   g(eta) = sum' eta^4 / (l^2 + eta^2 n^2)^2
//   f(xi)  = (1/(2 pi^4 xi^3)) [ S(xi) - S0 ],
//   S(xi)  = sum' (-1)^n (pi xi)^4 / (l^2 + (pi xi)^2 n^2)^2,
//   S0     = sum_{n != 0} (-1)^n / n^4 = -2 eta(4) = -7 pi^4/360.
//
// Accelerated mode closes the l-sum at fixed n (inner_sum_sq) and peels the
// algebraic part of the n-sum analytically,
//   g(eta) = 2 zeta(4) eta^4 + pi zeta(3) eta + R(eta),
// leaving an exponentially convergent remainder R (g_exponential_tail).
// Naive mode truncates the raw double sums over growing symmetric
// rectangles and is retained purely as an oracle.
//
// f reduces exactly to g through the even/odd split of the alternating
// index: S(xi) = g(2 pi xi)/8 - g(pi xi). Closing the alternating n-sum at
// fixed l instead gives the winding representation
//   f(xi) = sum_{l>=1} [ csch(l/xi)/(2 l^3) + coth(l/xi) csch(l/xi)/(2 xi l^2) ],
// a sum of positive, exponentially small terms that stays fully accurate
// where the g-difference form loses all significance (xi -> 0).

#include <cstdint>

#include "apcasimir/sum_control.hpp"

namespace apc::lattice {

// sum_{l in Z} 1/(l^2 + c^2)^2 = (pi/(2c^3)) coth(pi c) + (pi^2/(2c^2)) csch^2(pi c).
// Throws DomainError for c <= 0.
double inner_sum_sq(double c);

// g(eta) in the mode selected by ctl. Throws DomainError for eta <= 0,
// ConvergenceError if max_terms is hit before rel_tol.
LatticeValue g_sum(double eta, const SumControl& ctl);

// Exponentially small remainder R(eta) = g(eta) - 2 zeta(4) eta^4 - pi zeta(3) eta.
LatticeValue g_exponential_tail(double eta, const SumControl& ctl);

// f(xi) in the mode selected by ctl (accelerated mode uses the g-reduction).
LatticeValue f_xi(double xi, const SumControl& ctl);

// f(xi) through the winding representation (positive exponentially small
// terms; the preferred evaluation for xi <~ 2).
LatticeValue f_xi_winding(double xi, const SumControl& ctl);

} // namespace apc::lattice
