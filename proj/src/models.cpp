#include "stein/models.hpp"

#include <cmath>
#include <numbers>

#include "stein/errors.hpp"
#include "stein/rng.hpp"
#include "stein/sampler.hpp"
#include "stein/special.hpp"

namespace stein {
namespace {

void require_unit(const Vector& x, const char* what) {
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > kUnitTolerance)
    throw DomainError(std::string(what) + ": not a unit vector");
}

void require_dim(const Vector& x, int d, const char* what) {
  if (x.size() != d) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Family family_of(const Params& p) { return static_cast<Family>(p.index()); }

std::string family_name(Family f) {
  switch (f) {
    case Family::fb: return "fb";
    case Family::vmf: return "vmf";
    case Family::watson: return "watson";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "fb") return Family::fb;
  if (name == "vmf") return Family::vmf;
  if (name == "watson") return Family::watson;
  throw DomainError("unknown family '" + name + "' (expected fb, vmf or watson)");
}

int dimension(const Params& p) {
  return std::visit([](const auto& q) { return q.d(); }, p);
}

void validate(const FisherBinghamParams& p) {
  const int d = p.d();
  if (d < 2) throw DomainError("fb: dimension must be at least 2");
  if (!p.mu.allFinite()) throw DomainError("fb: mu has non-finite entries");
  if (p.A.rows() != d || p.A.cols() != d) throw DomainError("fb: A must be d x d");
  if (!p.A.allFinite()) throw DomainError("fb: A has non-finite entries");
  require_symmetric(p.A, "fb: A");
  if (p.A(d - 1, d - 1) != 0.0) throw DomainError("fb: A[d,d] must be 0");
}

void validate(const VmfParams& p) {
  if (p.d() < 2) throw DomainError("vmf: dimension must be at least 2");
  require_unit(p.mu, "vmf: mu");
  if (!(p.kappa > 0.0) || !std::isfinite(p.kappa)) throw DomainError("vmf: kappa must be > 0");
}

void validate(const WatsonParams& p) {
  if (p.d() < 2) throw DomainError("watson: dimension must be at least 2");
  require_unit(p.mu, "watson: mu");
  if (!std::isfinite(p.kappa)) throw DomainError("watson: kappa must be finite");
}

void validate(const Params& p) {
  std::visit([](const auto& q) { validate(q); }, p);
}

Vector canonical_axis(const Vector& u) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < u.size(); ++i)
    if (std::abs(u(i)) > std::abs(u(best))) best = i;
  return u(best) < 0.0 ? Vector(-u) : u;
}

FisherBinghamParams to_fisher_bingham(const Params& p) {
  switch (family_of(p)) {
    case Family::fb: return std::get<FisherBinghamParams>(p);
    case Family::vmf: {
      const auto& v = std::get<VmfParams>(p);
      return {v.kappa * v.mu, Matrix::Zero(v.d(), v.d())};
    }
    case Family::watson: {
      const auto& w = std::get<WatsonParams>(p);
      const int d = w.d();
      Matrix a = w.kappa * w.mu * w.mu.transpose();
      a.diagonal().array() -= a(d - 1, d - 1);
      a(d - 1, d - 1) = 0.0;
      return {Vector::Zero(d), a};
    }
  }
  throw DomainError("to_fisher_bingham: unknown family");
}

double log_unnormalized_density(const Params& p, const Vector& x) {
  require_dim(x, dimension(p), "log_unnormalized_density");
  require_unit(x, "log_unnormalized_density: x");
  switch (family_of(p)) {
    case Family::fb: {
      const auto& f = std::get<FisherBinghamParams>(p);
      return f.mu.dot(x) + x.dot(f.A * x);
    }
    case Family::vmf: {
      const auto& v = std::get<VmfParams>(p);
      return v.kappa * v.mu.dot(x);
    }
    case Family::watson: {
      const auto& w = std::get<WatsonParams>(p);
      const double t = w.mu.dot(x);
      return w.kappa * t * t;
    }
  }
  return 0.0;
}

double log_sphere_area(int d) {
  return std::log(2.0) + 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d);
}

double vmf_log_normalizer(int d, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("vmf_log_normalizer: kappa must be > 0");
  const double nu = 0.5 * d - 1.0;
  return 0.5 * d * std::log(2.0 * std::numbers::pi) + log_bessel_i(nu, kappa) -
         nu * std::log(kappa);
}

double watson_log_normalizer(int d, double kappa) {
  return log_sphere_area(d) + log_kummer_1f1(0.5, 0.5 * d, kappa);
}

double vmf_log_density(const VmfParams& p, const Vector& x) {
  validate(p);
  return log_unnormalized_density(Params{p}, x) - vmf_log_normalizer(p.d(), p.kappa);
}

double watson_log_density(const WatsonParams& p, const Vector& x) {
  validate(p);
  return log_unnormalized_density(Params{p}, x) - watson_log_normalizer(p.d(), p.kappa);
}

McEstimate fb_log_normalizer_mc(const FisherBinghamParams& p, std::size_t n_mc,
                                std::uint64_t seed) {
  validate(p);
  if (n_mc < 1000) throw DomainError("fb_log_normalizer_mc: n_mc must be at least 1000");
  Rng rng(seed);
  const SampleMatrix u = sample_uniform(p.d(), n_mc, rng);
  Vector g(static_cast<Eigen::Index>(n_mc));
  const Params params{p};
  for (std::size_t i = 0; i < n_mc; ++i)
    g(static_cast<Eigen::Index>(i)) = log_unnormalized_density(params, u.row(i));
  const double shift = g.maxCoeff();
  const Vector w = (g.array() - shift).exp().matrix();
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / static_cast<double>(n_mc - 1);
  const double se = std::sqrt(var / static_cast<double>(n_mc));
  return {log_sphere_area(p.d()) + shift + std::log(mean), se / mean};
}

Vector score(const Params& p, const Vector& x) {
  switch (family_of(p)) {
    case Family::fb: {
      const auto& f = std::get<FisherBinghamParams>(p);
      return f.mu + 2.0 * (f.A * x);
    }
    case Family::vmf: {
      const auto& v = std::get<VmfParams>(p);
      return v.kappa * v.mu;
    }
    case Family::watson: {
      const auto& w = std::get<WatsonParams>(p);
      return (2.0 * w.kappa * w.mu.dot(x)) * w.mu;
    }
  }
  return {};
}

SmoothTestFunction identity_test_function(int d) {
  SmoothTestFunction f;
  f.d = d;
  f.m = d;
  f.value = [](const Vector& x) { return x; };
  f.jacobian = [d](const Vector&) { return Matrix::Identity(d, d); };
  f.hessians = [d](const Vector&) { return Matrix::Zero(d, d * d); };
  f.laplacian = [d](const Vector&) { return Vector::Zero(d); };
  return f;
}

SmoothTestFunction vech_outer_test_function(int d) {
  const int m = static_cast<int>(vech_size(static_cast<std::size_t>(d))) - 1;
  // Component p is x_i x_j for the p-th (i >= j) pair in vech order.
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < d; ++j)
    for (int i = j; i < d; ++i) pairs.emplace_back(i, j);
  pairs.pop_back();

  SmoothTestFunction f;
  f.d = d;
  f.m = m;
  f.value = [pairs, m](const Vector& x) {
    Vector v(m);
    for (int p = 0; p < m; ++p) v(p) = x(pairs[p].first) * x(pairs[p].second);
    return v;
  };
  f.jacobian = [pairs, m, d](const Vector& x) {
    Matrix jac = Matrix::Zero(m, d);
    for (int p = 0; p < m; ++p) {
      const auto [i, j] = pairs[p];
      jac(p, i) += x(j);
      jac(p, j) += x(i);
    }
    return jac;
  };
  f.hessians = [pairs, m, d](const Vector&) {
    Matrix h = Matrix::Zero(m, d * d);
    for (int p = 0; p < m; ++p) {
      const auto [i, j] = pairs[p];
      h(p, i + d * j) += 1.0;
      h(p, j + d * i) += 1.0;
    }
    return h;
  };
  f.laplacian = [pairs, m](const Vector&) {
    Vector l = Vector::Zero(m);
    for (int p = 0; p < m; ++p)
      if (pairs[p].first == pairs[p].second) l(p) = 2.0;
    return l;
  };
  return f;
}

SmoothTestFunction sin_first_test_function(int d) {
  SmoothTestFunction f;
  f.d = d;
  f.m = 1;
  f.value = [](const Vector& x) { return Vector::Constant(1, std::sin(x(0))); };
  f.jacobian = [d](const Vector& x) {
    Matrix j = Matrix::Zero(1, d);
    j(0, 0) = std::cos(x(0));
    return j;
  };
  f.hessians = [d](const Vector& x) {
    Matrix h = Matrix::Zero(1, d * d);
    h(0, 0) = -std::sin(x(0));
    return h;
  };
  f.laplacian = [](const Vector& x) { return Vector::Constant(1, -std::sin(x(0))); };
  return f;
}

Vector stein_operator_apply(const Params& p, const SmoothTestFunction& f, const Vector& x) {
  const int d = dimension(p);
  if (f.d != d) throw DomainError("stein_operator_apply: test function dimension mismatch");
  require_dim(x, d, "stein_operator_apply");
  require_unit(x, "stein_operator_apply: x");
  const Matrix jac = f.jacobian(x);
  const Matrix hess = f.hessians(x);
  Vector xx(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) xx(i + d * j) = x(i) * x(j);
  const Vector s = score(p, x);
  const Vector tangent_score = s - x * x.dot(s);  // (I - x xᵀ) s
  return (1.0 - d) * (jac * x) - hess * xx + f.laplacian(x) + jac * tangent_score;
}

SteinMean stein_operator_mean(const Params& p, const SmoothTestFunction& f,
                              const SampleMatrix& x) {
  const std::size_t n = x.n();
  if (n == 0) throw DomainError("stein_operator_mean: empty sample");
  Vector sum = Vector::Zero(f.m);
  Vector sum_sq = Vector::Zero(f.m);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector a = stein_operator_apply(p, f, x.row(i));
    sum += a;
    sum_sq += a.cwiseProduct(a);
  }
  const double nn = static_cast<double>(n);
  SteinMean out{sum / nn, Vector::Zero(f.m)};
  if (n > 1) {
    const Vector var = ((sum_sq / nn - out.mean.cwiseProduct(out.mean)) * (nn / (nn - 1.0)))
                           .cwiseMax(0.0);
    out.std_error = (var / nn).cwiseSqrt();
  }
  return out;
}

}  // namespace stein
