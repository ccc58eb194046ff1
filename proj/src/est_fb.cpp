#include "stein/est_fb.hpp"

#include <cmath>

#include "stein/errors.hpp"

namespace stein {
namespace {

inline double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

void require_dims(const FbSteinStatistics& s) {
  const auto q = static_cast<Eigen::Index>(vech_size(static_cast<std::size_t>(s.d)));
  if (s.M.rows() != q - 1 || s.M.cols() != q || s.G.rows() != s.d || s.G.cols() != q)
    throw DomainError("fb statistics: inconsistent dimensions");
}

}  // namespace

std::vector<std::pair<int, int>> vech_pairs(int d) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < d; ++j)
    for (int i = j; i < d; ++i) out.emplace_back(i, j);
  return out;
}

FbSteinStatistics fb_statistics(const SampleMatrix& x) {
  return fb_statistics(empirical_moments(x, 4));
}

FbSteinStatistics fb_statistics(const EmpiricalMoments& m) {
  if (m.order < 4) throw DomainError("fb_statistics: fourth moments required");
  const int d = m.d;
  const auto pairs = vech_pairs(d);
  const int q = static_cast<int>(pairs.size());

  FbSteinStatistics s;
  s.d = d;
  s.n = m.n;
  s.M.setZero(q - 1, q);
  s.D.setZero(q - 1);
  s.E.setZero(q - 1, d);
  s.G.setZero(d, q);
  s.L = Matrix::Identity(d, d) - m.m2;
  s.H = (d - 1.0) * m.m1;

  // Row p = (i, j) of ∇f2 (I - xxᵀ) has entries
  //   P_p[k] = x_j δ_ik + x_i δ_jk - 2 x_i x_j x_k,
  // and mean(P_p[k] x_l) = δ_ik m2_jl + δ_jk m2_il - 2 m4_ijkl.
  for (int p = 0; p < q - 1; ++p) {
    const auto [i, j] = pairs[p];
    auto pk_xl = [&, i = i, j = j](int k, int l) {
      return delta(i, k) * m.m2(j, l) + delta(j, k) * m.m2(i, l) - 2.0 * m.fourth(i, j, k, l);
    };
    for (int c = 0; c < q; ++c) {
      const auto [a, b] = pairs[c];
      s.M(p, c) = a == b ? 2.0 * pk_xl(a, a) : 2.0 * (pk_xl(a, b) + pk_xl(b, a));
    }
    for (int k = 0; k < d; ++k)
      s.E(p, k) = delta(i, k) * m.m1(j) + delta(j, k) * m.m1(i) - 2.0 * m.third(i, j, k);
    s.D(p) = 2.0 * d * m.m2(i, j) - 2.0 * delta(i, j);
  }

  // f1(x) = x: P_k[a] = δ_ka - x_k x_a, mean(P_k[a] x_b) = δ_ka m1_b - m3_kab.
  for (int k = 0; k < d; ++k) {
    auto pa_xb = [&](int a, int b) { return delta(k, a) * m.m1(b) - m.third(k, a, b); };
    for (int c = 0; c < q; ++c) {
      const auto [a, b] = pairs[c];
      s.G(k, c) = a == b ? 2.0 * pa_xb(a, a) : 2.0 * (pa_xb(a, b) + pa_xb(b, a));
    }
  }
  return s;
}

FbSteinStatistics fb_statistics_generic(const SampleMatrix& x, const SmoothTestFunction& f1,
                                        const SmoothTestFunction& f2) {
  const int d = x.d();
  const auto q = static_cast<int>(vech_size(static_cast<std::size_t>(d)));
  if (f1.d != d || f2.d != d || f1.m != d || f2.m != q - 1)
    throw DomainError("fb_statistics_generic: test functions have the wrong dimensions");
  if (x.n() == 0) throw DomainError("fb_statistics_generic: empty sample");

  const Matrix dup = duplication_matrix(static_cast<std::size_t>(d));
  const Matrix id = Matrix::Identity(d, d);
  FbSteinStatistics s;
  s.d = d;
  s.n = x.n();
  s.M.setZero(q - 1, q);
  s.D.setZero(q - 1);
  s.E.setZero(q - 1, d);
  s.G.setZero(d, q);
  s.H.setZero(d);
  s.L.setZero(d, d);

  for (std::size_t r = 0; r < x.n(); ++r) {
    const Vector xi = x.row(r);
    const Matrix proj = id - xi * xi.transpose();
    const Matrix x_row = xi.transpose();
    const Vector xx = kron(xi, xi);

    const Matrix p2 = f2.jacobian(xi) * proj;
    s.M += 2.0 * kron(p2, x_row) * dup;
    s.D += (d - 1.0) * (f2.jacobian(xi) * xi) + f2.hessians(xi) * xx - f2.laplacian(xi);
    s.E += p2;

    const Matrix p1 = f1.jacobian(xi) * proj;
    s.G += 2.0 * kron(p1, x_row) * dup;
    s.H += (d - 1.0) * (f1.jacobian(xi) * xi) + f1.hessians(xi) * xx - f1.laplacian(xi);
    s.L += p1;
  }
  const double inv_n = 1.0 / static_cast<double>(x.n());
  s.M *= inv_n;
  s.D *= inv_n;
  s.E *= inv_n;
  s.G *= inv_n;
  s.H *= inv_n;
  s.L *= inv_n;
  return s;
}

FbSteinStatistics combine(const FbSteinStatistics& a, const FbSteinStatistics& b) {
  if (a.d != b.d) throw DomainError("combine: dimension mismatch");
  const double total = static_cast<double>(a.n + b.n);
  const double wa = static_cast<double>(a.n) / total;
  const double wb = static_cast<double>(b.n) / total;
  FbSteinStatistics s;
  s.d = a.d;
  s.n = a.n + b.n;
  s.M = wa * a.M + wb * b.M;
  s.D = wa * a.D + wb * b.D;
  s.E = wa * a.E + wb * b.E;
  s.G = wa * a.G + wb * b.G;
  s.H = wa * a.H + wb * b.H;
  s.L = wa * a.L + wb * b.L;
  return s;
}

FbEstimate fb_stein_solve(const FbSteinStatistics& s) {
  require_dims(s);
  const int d = s.d;
  const Matrix mp = s.M_prime();
  const Matrix gp = s.G_prime();
  const Eigen::Index qm1 = mp.rows();

  Matrix rhs(qm1, d + 1);
  rhs << s.E, s.D;
  const LinearSolutionMulti y = solve_linear(mp, rhs, "M_prime");
  const Matrix y_e = y.x.leftCols(d);
  const Vector y_d = y.x.col(d);

  const Matrix schur = s.L - gp * y_e;
  const LinearSolution mu = solve_linear(schur, Vector(s.H - gp * y_d), "schur");
  const Vector a_vec = y_d - y_e * mu.x;

  FbEstimate out;
  out.params.mu = mu.x;
  out.params.A = vech_prime_inverse(a_vec, static_cast<std::size_t>(d));
  out.cond_M_prime = y.condition;
  out.cond_schur = mu.condition;
  const Vector r1 = s.L * mu.x + gp * a_vec - s.H;
  const Vector r2 = s.E * mu.x + mp * a_vec - s.D;
  out.residual_norm = std::sqrt(r1.squaredNorm() + r2.squaredNorm());

  const double mu_norm = mu.x.norm();
  const double a_norm = spectral_norm(out.params.A);
  if (mu_norm > kIdentificationThreshold || a_norm > kIdentificationThreshold)
    out.warnings.push_back(
        "identification: large estimates (|mu| = " + std::to_string(mu_norm) +
        ", |A| = " + std::to_string(a_norm) +
        "); distant (mu, A) can give nearly the same distribution, so parameter errors "
        "overstate the error in the fitted density");
  return out;
}

FbEstimate fb_stein_fit(const SampleMatrix& x) { return fb_stein_solve(fb_statistics(x)); }

Vector fb_stein_residual(const FisherBinghamParams& p, const SampleMatrix& x) {
  validate(p);
  const int d = p.d();
  const Params params{p};
  const SteinMean r1 = stein_operator_mean(params, identity_test_function(d), x);
  const SteinMean r2 = stein_operator_mean(params, vech_outer_test_function(d), x);
  Vector out(r1.mean.size() + r2.mean.size());
  out << r1.mean, r2.mean;
  return out;
}

Vector fb_location_only_fit(const SampleMatrix& x) {
  const EmpiricalMoments m = empirical_moments(x, 2);
  const int d = x.d();
  const Matrix l = Matrix::Identity(d, d) - m.m2;
  return solve_linear(l, Vector((d - 1.0) * m.m1), "L").x;
}

}  // namespace stein
