#include "stein/est_vmf.hpp"

#include <cmath>

#include "stein/errors.hpp"
#include "stein/kernels.hpp"
#include "stein/special.hpp"

namespace stein {
namespace {

constexpr double kDegenerateMean = 1e-12;
constexpr double kTinyDenominator = 1e-14;

struct Basics {
  EmpiricalMoments m;
  double r;
  Vector mu_hat;
};

Basics basics(const SampleMatrix& x) {
  Basics b{empirical_moments(x, 2), 0.0, {}};
  b.r = b.m.m1.norm();
  if (!(b.r > kDegenerateMean)) throw DegenerateMean("sample mean vector is (numerically) zero");
  b.mu_hat = b.m.m1 / b.r;
  return b;
}

VmfEstimate start(const Basics& b, VmfEstimator e) {
  VmfEstimate out;
  out.mu_hat = b.mu_hat;
  out.estimator = e;
  out.resultant_length = b.r;
  return out;
}

}  // namespace

std::string vmf_estimator_name(VmfEstimator e) {
  switch (e) {
    case VmfEstimator::ST: return "st";
    case VmfEstimator::ST2: return "st2";
    case VmfEstimator::ML: return "ml";
    case VmfEstimator::SM: return "sm";
  }
  return "?";
}

VmfEstimator parse_vmf_estimator(const std::string& name) {
  if (name == "st") return VmfEstimator::ST;
  if (name == "st2") return VmfEstimator::ST2;
  if (name == "ml") return VmfEstimator::ML;
  if (name == "sm") return VmfEstimator::SM;
  throw DomainError("unknown vmf estimator '" + name + "' (expected st, st2, ml or sm)");
}

Vector mean_direction(const SampleMatrix& x) { return basics(x).mu_hat; }

VmfEstimate kappa_stein(const SampleMatrix& x) {
  const Basics b = basics(x);
  const int d = x.d();
  const Matrix bm = Matrix::Identity(d, d) - b.m.m2;
  const Vector bmu = bm * b.mu_hat;
  const double den = bmu.squaredNorm();
  if (!(den > kTinyDenominator)) throw SingularSystem("kappa_stein denominator", INFINITY);
  VmfEstimate out = start(b, VmfEstimator::ST);
  out.kappa_hat = (d - 1.0) * bmu.dot(b.m.m1) / den;
  // μ̂ᵀ(I-S)X̄ = ‖X̄‖(1 - μ̂ᵀSμ̂) > 0 unless every point equals μ̂.
  if (!(out.kappa_hat > 0.0)) throw DomainError("kappa_stein: non-positive estimate");
  return out;
}

VmfEstimate kappa_stein2(const SampleMatrix& x) {
  const Basics b = basics(x);
  const int d = x.d();
  const Matrix bm = Matrix::Identity(d, d) - b.m.m2;
  const LinearSolution s = solve_linear(bm, b.m.m1, "I - S");
  VmfEstimate out = start(b, VmfEstimator::ST2);
  out.kappa_hat = (d - 1.0) * s.x.norm();
  out.condition = s.condition;
  return out;
}

double vmf_mle_from_resultant(int d, double r, int* iterations) {
  if (!(r > 0.0)) throw DegenerateMean("vmf_mle: resultant length is zero");
  if (!(r < 1.0)) throw DomainError("vmf_mle: resultant length must be below 1");
  const double dm1 = d - 1.0;
  auto f = [&](double k) { return bessel_ratio(d, k) - r; };

  double lo = 0.0;  // A_d(0) = 0 < r
  double k = r * (d - r * r) / (1.0 - r * r);
  double hi = std::max(2.0 * k, 1.0);
  int it = 0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++it > 2000) throw ConvergenceError("vmf_mle: could not bracket the root");
  }
  if (!(k > lo && k < hi)) k = 0.5 * (lo + hi);

  for (; it < 500; ++it) {
    const double a = bessel_ratio(d, k);
    const double fk = a - r;
    if (std::abs(fk) <= 1e-13) break;
    (fk < 0.0 ? lo : hi) = k;
    const double slope = 1.0 - a * a - dm1 * a / k;
    double next = k - fk / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * hi) {
      k = next;
      break;
    }
    k = next;
  }
  if (iterations) *iterations = it;
  if (std::abs(f(k)) > 1e-12) throw ConvergenceError("vmf_mle: root finder did not converge");
  return k;
}

VmfEstimate kappa_mle(const SampleMatrix& x) {
  const Basics b = basics(x);
  if (!(b.r < 1.0)) throw DomainError("kappa_mle: all sample points coincide (‖X̄‖ = 1)");
  VmfEstimate out = start(b, VmfEstimator::ML);
  out.kappa_hat = vmf_mle_from_resultant(x.d(), b.r, &out.iterations);
  return out;
}

VmfEstimate kappa_score_matching(const SampleMatrix& x) {
  const Basics b = basics(x);
  const int d = x.d();
  // e1ᵀ R X_i = μ̂ᵀ X_i for the reflector R with Rμ̂ = e1.
  Vector y = Vector::Zero(static_cast<Eigen::Index>(x.n()));
  const std::span<double> ys{y.data(), x.n()};
  for (int j = 0; j < d; ++j) kernels::axpy(b.mu_hat(j), x.col(j), ys);
  const double inv_n = 1.0 / static_cast<double>(x.n());
  const double y_mean = kernels::sum(ys) * inv_n;
  const double y2_mean = kernels::dot(ys, ys) * inv_n;
  const double den = 1.0 - y2_mean;
  if (!(den > kTinyDenominator))
    throw SingularSystem("kappa_score_matching denominator", INFINITY);
  VmfEstimate out = start(b, VmfEstimator::SM);
  out.kappa_hat = (d - 1.0) * y_mean / den;
  return out;
}

VmfEstimate fit_vmf(const SampleMatrix& x, VmfEstimator e) {
  switch (e) {
    case VmfEstimator::ST: return kappa_stein(x);
    case VmfEstimator::ST2: return kappa_stein2(x);
    case VmfEstimator::ML: return kappa_mle(x);
    case VmfEstimator::SM: return kappa_score_matching(x);
  }
  throw DomainError("fit_vmf: unknown estimator");
}

double kappa_least_squares(const SampleMatrix& x, const SmoothTestFunction& f) {
  const int d = x.d();
  if (f.d != d) throw DomainError("kappa_least_squares: test function dimension mismatch");
  const Vector mu_hat = mean_direction(x);
  Vector q = Vector::Zero(f.m);
  Matrix k_mat = Matrix::Zero(f.m, d);
  Vector xx(d * d);
  for (std::size_t i = 0; i < x.n(); ++i) {
    const Vector xi = x.row(i);
    const Matrix jac = f.jacobian(xi);
    for (int b = 0; b < d; ++b)
      for (int a = 0; a < d; ++a) xx(a + d * b) = xi(a) * xi(b);
    q += (d - 1.0) * (jac * xi) + f.hessians(xi) * xx - f.laplacian(xi);
    k_mat += jac - (jac * xi) * xi.transpose();
  }
  const double inv_n = 1.0 / static_cast<double>(x.n());
  q *= inv_n;
  const Vector k = (k_mat * inv_n) * mu_hat;
  const double kk = k.squaredNorm();
  if (!(kk > kTinyDenominator)) throw SingularSystem("KᵀK", INFINITY);
  return k.dot(q) / kk;
}

}  // namespace stein
