#include "stein/est_watson.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "stein/errors.hpp"
#include "stein/est_fb.hpp"
#include "stein/kernels.hpp"
#include "stein/special.hpp"

namespace stein {
namespace {

constexpr double kTinyGram = 1e-14;
// r = μᵀSμ this close to 0 or 1 means the sample lies in a hyperplane (or on
// the axis) and the likelihood is unbounded along that branch.
constexpr double kDegenerateR = 1e-12;

bool degenerate_r(double r) { return !(r > kDegenerateR && r < 1.0 - kDegenerateR); }

Vector project(const SampleMatrix& x, const Vector& mu) {
  Vector t = Vector::Zero(static_cast<Eigen::Index>(x.n()));
  for (int j = 0; j < x.d(); ++j) kernels::axpy(mu(j), x.col(j), {t.data(), x.n()});
  return t;
}

Vector j_closed_form(const SampleMatrix& x, const Matrix& s, const Vector& mu) {
  const int d = x.d();
  const auto pairs = vech_pairs(d);
  const Vector t = project(x, mu);
  Vector t2(t.size());
  kernels::mul({t.data(), x.n()}, {t.data(), x.n()}, {t2.data(), x.n()});
  const std::span<const double> t2s{t2.data(), x.n()};
  const Vector smu = s * mu;
  const double inv_n = 1.0 / static_cast<double>(x.n());
  Vector j(static_cast<Eigen::Index>(pairs.size() - 1));
  for (Eigen::Index p = 0; p < j.size(); ++p) {
    const auto [a, b] = pairs[static_cast<std::size_t>(p)];
    const double xxt2 = kernels::dot3(x.col(a), x.col(b), t2s) * inv_n;
    j(p) = 2.0 * (mu(a) * smu(b) + mu(b) * smu(a) - 2.0 * xxt2);
  }
  return j;
}

double residual(const Vector& v, const Vector& j, double kappa) { return (j * kappa - v).norm(); }

}  // namespace

std::string branch_name(Branch b) { return b == Branch::plus ? "+" : "-"; }

std::string watson_estimator_name(WatsonEstimator e) {
  switch (e) {
    case WatsonEstimator::ST: return "st";
    case WatsonEstimator::MLa: return "mla";
    case WatsonEstimator::ML: return "ml";
  }
  return "?";
}

WatsonEstimator parse_watson_estimator(const std::string& name) {
  if (name == "st") return WatsonEstimator::ST;
  if (name == "mla") return WatsonEstimator::MLa;
  if (name == "ml") return WatsonEstimator::ML;
  throw DomainError("unknown watson estimator '" + name + "' (expected st, mla or ml)");
}

Vector watson_axis(const SampleMatrix& x, Branch b) {
  const EmpiricalMoments m = empirical_moments(x, 2);
  const EigenDecomposition eig = sym_eigen(m.m2);
  const Eigen::Index col = b == Branch::plus ? 0 : eig.vectors.cols() - 1;
  return canonical_axis(eig.vectors.col(col));
}

WatsonSteinStatistics watson_statistics(const SampleMatrix& x) {
  const int d = x.d();
  const EmpiricalMoments m = empirical_moments(x, 2);
  const EigenDecomposition eig = sym_eigen(m.m2);
  const auto pairs = vech_pairs(d);

  WatsonSteinStatistics s;
  s.mu_plus = canonical_axis(eig.vectors.col(0));
  s.mu_minus = canonical_axis(eig.vectors.col(d - 1));
  s.V.resize(static_cast<Eigen::Index>(pairs.size() - 1));
  for (Eigen::Index p = 0; p < s.V.size(); ++p) {
    const auto [i, j] = pairs[static_cast<std::size_t>(p)];
    s.V(p) = 2.0 * d * m.m2(i, j) - (i == j ? 2.0 : 0.0);
  }
  s.J_plus = j_closed_form(x, m.m2, s.mu_plus);
  s.J_minus = j_closed_form(x, m.m2, s.mu_minus);
  return s;
}

Vector watson_V_generic(const SampleMatrix& x, const SmoothTestFunction& f) {
  const int d = x.d();
  Vector v = Vector::Zero(f.m);
  for (std::size_t r = 0; r < x.n(); ++r) {
    const Vector xi = x.row(r);
    v += (d - 1.0) * (f.jacobian(xi) * xi) + f.hessians(xi) * Vector(kron(xi, xi)) -
         f.laplacian(xi);
  }
  return v / static_cast<double>(x.n());
}

Vector watson_J_generic(const SampleMatrix& x, const SmoothTestFunction& f, const Vector& mu) {
  const int d = x.d();
  const Matrix id = Matrix::Identity(d, d);
  Vector j = Vector::Zero(f.m);
  for (std::size_t r = 0; r < x.n(); ++r) {
    const Vector xi = x.row(r);
    j += f.jacobian(xi) * (id - xi * xi.transpose()) * mu * mu.dot(xi);
  }
  return 2.0 * j / static_cast<double>(x.n());
}

double watson_stein_kappa(const Vector& v, const Vector& j) {
  const double jj = j.squaredNorm();
  if (!(jj > kTinyGram)) throw SingularSystem("JᵀJ", std::numeric_limits<double>::infinity());
  return j.dot(v) / jj;
}

double watson_stein_kappa(const SampleMatrix& x, Branch b) {
  const WatsonSteinStatistics s = watson_statistics(x);
  return watson_stein_kappa(s.V, b == Branch::plus ? s.J_plus : s.J_minus);
}

WatsonEstimate select_branch(const BranchCandidate& plus, const BranchCandidate& minus,
                             WatsonEstimator e) {
  WatsonEstimate out;
  out.estimator = e;
  out.kappa_plus = plus.kappa;
  out.kappa_minus = minus.kappa;
  out.score_plus = plus.score;
  out.score_minus = minus.score;
  out.eligible_plus = plus.kappa >= 0.0;
  out.eligible_minus = minus.kappa <= 0.0;
  if (!out.eligible_plus && !out.eligible_minus)
    throw NotEligible("watson: kappa(+) = " + std::to_string(plus.kappa) +
                      " < 0 and kappa(-) = " + std::to_string(minus.kappa) + " > 0");
  bool take_plus;
  if (out.eligible_plus && out.eligible_minus)
    take_plus = !(minus.score < plus.score);
  else
    take_plus = out.eligible_plus;
  const BranchCandidate& chosen = take_plus ? plus : minus;
  out.branch = take_plus ? Branch::plus : Branch::minus;
  out.mu_hat = chosen.mu;
  out.kappa_hat = chosen.kappa;
  if (out.eligible_plus && out.eligible_minus && std::abs(out.kappa_hat) < kNearUniformKappa)
    out.warnings.push_back("near-uniform: |kappa| < 1e-6 with both branches eligible; the axis "
                           "is not identified");
  return out;
}

WatsonEstimate watson_stein_fit(const SampleMatrix& x) {
  const WatsonSteinStatistics s = watson_statistics(x);
  BranchCandidate plus{s.mu_plus, watson_stein_kappa(s.V, s.J_plus), 0.0};
  BranchCandidate minus{s.mu_minus, watson_stein_kappa(s.V, s.J_minus), 0.0};
  plus.score = residual(s.V, s.J_plus, plus.kappa);
  minus.score = residual(s.V, s.J_minus, minus.kappa);
  return select_branch(plus, minus, WatsonEstimator::ST);
}

std::pair<double, double> watson_mla_bounds(double r, double a, double c) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("watson_mla_bounds: r must lie in (0, 1)");
  const double pre = (r * c - a) / (r * (1.0 - r));
  const double l = pre * (1.0 + (1.0 - r) / (c - a));
  const double u = pre * (1.0 + r / a);
  return {std::min(l, u), std::max(l, u)};
}

double watson_log_likelihood(const SampleMatrix& x, const Vector& mu, double kappa) {
  const WatsonParams p{mu, kappa};
  double total = 0.0;
  for (std::size_t i = 0; i < x.n(); ++i) total += watson_log_density(p, x.row(i));
  return total;
}

namespace {

// NaN kappa fails both eligibility tests, so the branch is never selected.
BranchCandidate degenerate_candidate(BranchCandidate c) {
  c.kappa = std::numeric_limits<double>::quiet_NaN();
  c.score = std::numeric_limits<double>::infinity();
  return c;
}

}  // namespace

WatsonEstimate watson_mla_fit(const SampleMatrix& x) {
  const int d = x.d();
  const EmpiricalMoments m = empirical_moments(x, 2);
  const EigenDecomposition eig = sym_eigen(m.m2);
  auto candidate = [&](Eigen::Index col) {
    BranchCandidate c;
    c.mu = canonical_axis(eig.vectors.col(col));
    const double r = c.mu.dot(m.m2 * c.mu);
    if (degenerate_r(r)) return degenerate_candidate(c);
    const auto [lo, hi] = watson_mla_bounds(r, 0.5, 0.5 * d);
    c.kappa = 0.5 * (lo + hi);
    c.score = -watson_log_likelihood(x, c.mu, c.kappa);
    return c;
  };
  return select_branch(candidate(0), candidate(d - 1), WatsonEstimator::MLa);
}

double watson_mle_from_r(int d, double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("watson_mle: r must lie in (0, 1)");
  const double a = 0.5;
  const double c = 0.5 * d;
  if (r == a / c) return 0.0;
  auto f = [&](double k) { return kummer_ratio(a, c, k) - r; };
  auto [lo, hi] = watson_mla_bounds(r, a, c);
  // The bounds bracket the root; widen defensively if rounding says otherwise.
  for (int i = 0; f(lo) > 0.0; ++i) {
    lo = lo - std::max(1.0, std::abs(lo));
    if (i > 60) throw ConvergenceError("watson_mle: could not bracket the root");
  }
  for (int i = 0; f(hi) < 0.0; ++i) {
    hi = hi + std::max(1.0, std::abs(hi));
    if (i > 60) throw ConvergenceError("watson_mle: could not bracket the root");
  }
  std::uintmax_t max_iter = 200;
  const auto tol = [](double x, double y) {
    return std::abs(x - y) <= 1e-13 * std::max(1.0, std::abs(x));
  };
  const auto root = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
  if (max_iter >= 200) throw ConvergenceError("watson_mle: root finder did not converge");
  return 0.5 * (root.first + root.second);
}

double watson_mle_kappa(const SampleMatrix& x, Branch b) {
  const Vector mu = watson_axis(x, b);
  const EmpiricalMoments m = empirical_moments(x, 2);
  return watson_mle_from_r(x.d(), mu.dot(m.m2 * mu));
}

WatsonEstimate watson_mle_fit(const SampleMatrix& x) {
  const EmpiricalMoments m = empirical_moments(x, 2);
  const EigenDecomposition eig = sym_eigen(m.m2);
  const int d = x.d();
  auto candidate = [&](Eigen::Index col) {
    BranchCandidate c;
    c.mu = canonical_axis(eig.vectors.col(col));
    const double r = c.mu.dot(m.m2 * c.mu);
    if (degenerate_r(r)) return degenerate_candidate(c);
    c.kappa = watson_mle_from_r(d, r);
    c.score = -watson_log_likelihood(x, c.mu, c.kappa);
    return c;
  };
  return select_branch(candidate(0), candidate(d - 1), WatsonEstimator::ML);
}

WatsonEstimate fit_watson(const SampleMatrix& x, WatsonEstimator e) {
  switch (e) {
    case WatsonEstimator::ST: return watson_stein_fit(x);
    case WatsonEstimator::MLa: return watson_mla_fit(x);
    case WatsonEstimator::ML: return watson_mle_fit(x);
  }
  throw DomainError("fit_watson: unknown estimator");
}

}  // namespace stein
