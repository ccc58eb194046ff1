#pragma once

// Modified Bessel functions of the first kind and Kummer's confluent
// hypergeometric function, in the ranges the vMF and Watson densities,
// likelihood equations and asymptotic variances need.

namespace stein {

/// log I_nu(x) for nu >= 0, x >= 0. Exponentially scaled power series for
/// moderate x, large-argument expansion once x >= max(50, nu^2). Returns
/// -inf for I_nu(0) with nu > 0.
double log_bessel_i(double nu, double x);

/// I_nu(x). Overflows to +inf past x ~ 700; use log_bessel_i there.
double bessel_i(double nu, double x);

/// I_nu(x) / I_{nu-1}(x) for nu >= 1/2, x > 0. Stable for large x.
double bessel_i_ratio(double nu, double x);

/// A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa), the mean resultant length
/// of vMF(d, kappa). In (0, 1) and strictly increasing.
double bessel_ratio(int d, double kappa);

/// log 1F1(a; b; x). The series is summed directly for x >= 0 and through
/// Kummer's transformation 1F1(a;b;x) = e^x 1F1(b-a;b;-x) for x < 0. The
/// function value must be positive.
double log_kummer_1f1(double a, double b, double x);

/// 1F1(a; b; x).
double kummer_1f1(double a, double b, double x);

/// d/dx log 1F1(a; b; x) = (a/b) 1F1(a+1; b+1; x) / 1F1(a; b; x).
double kummer_ratio(double a, double b, double x);

}  // namespace stein
