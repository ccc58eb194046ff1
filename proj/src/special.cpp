#include "stein/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stein/errors.hpp"

namespace stein {
namespace {

constexpr double kRescale = 1e250;
const double kLogRescale = std::log(kRescale);
constexpr int kMaxTerms = 1000000;

bool use_asymptotic(double nu, double x) { return x >= std::max(50.0, nu * nu); }

// sum_k (-1)^k a_k(nu) / x^k with a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k).
// I_nu(x) ~ e^x / sqrt(2 pi x) times this sum.
double asymptotic_sum(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 500; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (term == 0.0) break;  // half-integer order: the expansion terminates
    if (std::abs(term) > prev) break;  // past the smallest term
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// log sum_k (x^2/4)^k / (k! (nu+1)_k), rescaled to avoid overflow.
double log_bessel_series_sum(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += kLogRescale;
    }
    if (term < 1e-17 * sum) return log_scale + std::log(sum);
  }
  throw ConvergenceError("log_bessel_i: series did not converge");
}

struct LogSeries {
  double log_abs;
  double sign;
};

// Large-x expansion for a, b > 0:
// 1F1(a;b;x) ~ Γ(b)/Γ(a) e^x x^(a-b) sum_k (b-a)_k (1-a)_k / (k! x^k).
bool use_kummer_asymptotic(double a, double b, double x) {
  return a > 0.0 && b > 0.0 && x > std::max(1000.0, 100.0 * (a + std::abs(b - a) + 1.0));
}

LogSeries kummer_asymptotic(double a, double b, double x) {
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 500; ++k) {
    term *= (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
    if (term == 0.0 || std::abs(term) > prev) break;
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return {std::lgamma(b) - std::lgamma(a) + x + (a - b) * std::log(x) + std::log(sum), 1.0};
}

// log |sum_k (a)_k / (b)_k x^k / k!| for x >= 0, rescaled.
LogSeries kummer_series(double a, double b, double x) {
  if (use_kummer_asymptotic(a, b, x)) return kummer_asymptotic(a, b, x);
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (a + k) / (b + k) * x / (k + 1.0);
    sum += term;
    if (std::abs(sum) > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_scale += kLogRescale;
    }
    if (term == 0.0) break;
    // Terms shrink once k exceeds x and |a|; stop at relative 1e-16.
    if (k > x && std::abs(term) < 1e-16 * std::abs(sum)) break;
    if (k + 1 == kMaxTerms) throw ConvergenceError("kummer_1f1: series did not converge");
  }
  return {log_scale + std::log(std::abs(sum)), sum < 0.0 ? -1.0 : 1.0};
}

void check_b(double b) {
  if (b <= 0.0 && b == std::floor(b))
    throw DomainError("kummer_1f1: b must not be a nonpositive integer");
}

LogSeries log_kummer_signed(double a, double b, double x) {
  check_b(b);
  if (x == 0.0) return {0.0, 1.0};
  if (x > 0.0) return kummer_series(a, b, x);
  LogSeries t = kummer_series(b - a, b, -x);
  t.log_abs += x;
  return t;
}

}  // namespace

double log_bessel_i(double nu, double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i: x must be nonnegative");
  if (!(nu >= 0.0)) throw DomainError("bessel_i: order must be nonnegative");
  if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (use_asymptotic(nu, x)) {
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(asymptotic_sum(nu, x));
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_bessel_series_sum(nu, x);
}

double bessel_i(double nu, double x) {
  const double l = log_bessel_i(nu, x);
  return std::exp(l);
}

double bessel_i_ratio(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_i_ratio: x must be positive");
  if (!(nu >= 0.5)) throw DomainError("bessel_i_ratio: order must be at least 1/2");
  if (use_asymptotic(nu, x) && use_asymptotic(nu - 1.0, x))
    return asymptotic_sum(nu, x) / asymptotic_sum(nu - 1.0, x);
  return std::exp(log_bessel_i(nu, x) - log_bessel_i(nu - 1.0, x));
}

double bessel_ratio(int d, double kappa) {
  if (d < 2) throw DomainError("bessel_ratio: dimension must be at least 2");
  if (!(kappa > 0.0)) throw DomainError("bessel_ratio: kappa must be positive");
  return bessel_i_ratio(0.5 * d, kappa);
}

double log_kummer_1f1(double a, double b, double x) {
  const LogSeries s = log_kummer_signed(a, b, x);
  if (s.sign < 0.0) throw DomainError("log_kummer_1f1: function value is negative");
  return s.log_abs;
}

double kummer_1f1(double a, double b, double x) {
  const LogSeries s = log_kummer_signed(a, b, x);
  return s.sign * std::exp(s.log_abs);
}

double kummer_ratio(double a, double b, double x) {
  check_b(b);
  check_b(b + 1.0);
  if (x == 0.0) return a / b;
  LogSeries num;
  LogSeries den;
  if (x > 0.0) {
    num = kummer_series(a + 1.0, b + 1.0, x);
    den = kummer_series(a, b, x);
  } else {
    // The e^x factors of the two transformed series cancel.
    num = kummer_series(b - a, b + 1.0, -x);
    den = kummer_series(b - a, b, -x);
  }
  return (a / b) * num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

}  // namespace stein
