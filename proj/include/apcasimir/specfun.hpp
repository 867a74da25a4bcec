#pragma once

// Classical real-argument special functions used across the library:
// Gamma, Riemann zeta (with analytic continuation), Dirichlet eta, the
// upper incomplete gamma function, and the exponential integral E1.
//
// Accuracy targets (double precision): >= 12 significant digits for gamma
// (|x| <= 30) and zeta ([-10, 30] away from s = 1), >= 10 for the upper
// incomplete gamma on s in [-6, 6], x in [1e-6, 50], >= 8 for the zeta
// derivative. Near the recurrence's own singular divisions (s within
// ~1e-5 of a nonpositive integer at x < 1) the incomplete gamma loses
// digits proportionally to -log10|s - m|; callers in this library only
// evaluate at offsets >= 5e-3 from those points.

namespace apc::specfun {

// Gamma(x). Throws PoleError at x = 0, -1, -2, ...
double gamma_real(double x);

// Riemann zeta on the real axis, analytically continued. Throws PoleError
// at s = 1.
double riemann_zeta(double s);

// zeta'(s) by Richardson-extrapolated central differences on riemann_zeta.
double riemann_zeta_deriv(double s);

// Dirichlet eta; entire, with eta(1) = ln 2.
double dirichlet_eta(double s);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt for any
// real s and x > 0. Throws DomainError for x <= 0.
double upper_incomplete_gamma(double s, double x);

// Exponential integral E1(x) = Gamma(0, x), x > 0.
double exp_integral_e1(double x);

} // namespace apc::specfun
