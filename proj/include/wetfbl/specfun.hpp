// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace wetfbl::specfun {

//! Gaussian tail probability Q(x) = P[N(0,1) > x].
double gaussian_q(double x);

//! Inverse of gaussian_q on (0, 1).
double gaussian_q_inverse(double p);

/*!
 * Generalized exponential integral E_n(x) = \int_1^\infty e^{-xt} t^{-n} dt.
 *
 * Series for x <= 1, modified-Lentz continued fraction otherwise. Returns
 * 1/(n-1) at x = 0 for n >= 2 and 0 once x > 700.
 */
double exp_integral_en(int order, double x);

//! Modified Bessel function of the second kind, order 0 or 1.
double bessel_k(int order, double x);

inline double bessel_k0(double x) { return bessel_k(0, x); }
inline double bessel_k1(double x) { return bessel_k(1, x); }

//! x K_1(x) - 1, without cancellation for small x.
double bessel_xk1_minus_one(double x);

}  // namespace wetfbl::specfun
