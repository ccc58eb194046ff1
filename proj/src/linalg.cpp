#include "stein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stein/errors.hpp"

namespace stein {

std::size_t vech_position(std::size_t d, std::size_t row, std::size_t col) {
  // Columns 0..col-1 contribute d, d-1, ..., d-col+1 entries.
  return col * d - col * (col - 1) / 2 + (row - col);
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

void require_symmetric(const Matrix& s, const char* what) {
  if (s.rows() != s.cols()) throw DomainError(std::string(what) + ": matrix is not square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale)
    throw DomainError(std::string(what) + ": matrix is not symmetric");
}

Vector vech(const Matrix& s) {
  require_symmetric(s, "vech");
  const auto d = static_cast<std::size_t>(s.rows());
  Vector out(static_cast<Eigen::Index>(vech_size(d)));
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < s.cols(); ++j)
    for (Eigen::Index i = j; i < s.rows(); ++i) out(k++) = s(i, j);
  return out;
}

Vector vech_prime(const Matrix& s) {
  const Vector v = vech(s);
  return v.head(v.size() - 1);
}

Matrix vech_inverse(const Vector& v, std::size_t d) {
  if (static_cast<std::size_t>(v.size()) != vech_size(d))
    throw DomainError("vech_inverse: length does not match dimension");
  Matrix s(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j)
    for (Eigen::Index i = j; i < static_cast<Eigen::Index>(d); ++i) {
      s(i, j) = v(k);
      s(j, i) = v(k);
      ++k;
    }
  return s;
}

Matrix vech_prime_inverse(const Vector& v, std::size_t d) {
  if (static_cast<std::size_t>(v.size()) + 1 != vech_size(d))
    throw DomainError("vech_prime_inverse: length does not match dimension");
  Vector full(v.size() + 1);
  full << v, 0.0;
  return vech_inverse(full, d);
}

Matrix duplication_matrix(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix out = Matrix::Zero(n * n, static_cast<Eigen::Index>(vech_size(d)));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) {
      const auto col = static_cast<Eigen::Index>(vech_position(d, i, j));
      out(i + n * j, col) = 1.0;
      out(j + n * i, col) = 1.0;
    }
  return out;
}

Matrix commutation_matrix(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix out = Matrix::Zero(n * n, n * n);
  // vec(M)[i + n j] = M(i, j) must land on vec(M^T)[j + n i].
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(j + n * i, i + n * j) = 1.0;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

void fix_sign(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  if (v(best) < 0.0) v = -v;
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& s) {
  require_symmetric(s, "sym_eigen");
  const Eigen::Index n = s.rows();
  Matrix a = 0.5 * (s + s.transpose());
  Matrix v = Matrix::Identity(n, n);

  const double total = a.norm();
  constexpr int kMaxSweeps = 100;
  constexpr double kOffTolerance = 1e-12;

  auto off_norm = [&] {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  int sweep = 0;
  while (total > 0.0 && off_norm() > kOffTolerance * total) {
    if (++sweep > kMaxSweeps) throw ConvergenceError("sym_eigen: Jacobi did not converge");
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        if (c == 1.0 && sn == 0.0) continue;
        rotated = true;
        // A <- J^T A J with J the (p, q) plane rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  // Sort descending; stable so equal eigenvalues keep their index order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
    fix_sign(out.vectors.col(k));
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    const Vector ev = sym_eigen(m).values;
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  const Matrix gram = m.transpose() * m;
  const double top = sym_eigen(0.5 * (gram + gram.transpose())).values(0);
  return std::sqrt(std::max(0.0, top));
}

Matrix rotation_to_e1(const Vector& u) {
  const Eigen::Index d = u.size();
  if (d < 1 || std::abs(u.norm() - 1.0) > kUnitTolerance)
    throw DomainError("rotation_to_e1: input is not a unit vector");
  Vector v = u;
  const double tail = u.tail(d - 1).squaredNorm();
  // v1 = u1 - 1 without cancellation when u1 > 0.
  v(0) = u(0) > 0.0 ? -tail / (1.0 + u(0)) : u(0) - 1.0;
  const double vv = v.squaredNorm();
  if (std::sqrt(vv) < 1e-12) return Matrix::Identity(d, d);
  // Scale v itself so the outer product is exactly symmetric.
  const Vector w = v * std::sqrt(2.0 / vv);
  return Matrix::Identity(d, d) - w * w.transpose();
}

double condition_estimate(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("condition_estimate: matrix is not square");
  if (a.rows() == 0) return 1.0;
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || !std::isfinite(rc)) return std::numeric_limits<double>::infinity();
  return 1.0 / rc;
}

LinearSolutionMulti solve_linear(const Matrix& a, const Matrix& b, const std::string& name) {
  if (a.rows() != a.cols()) throw DomainError("solve_linear: matrix is not square");
  if (b.rows() != a.rows()) throw DomainError("solve_linear: right-hand side has wrong length");
  if (!a.allFinite() || !b.allFinite())
    throw SingularSystem(name, std::numeric_limits<double>::infinity());
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  const double cond = (rc > 0.0 && std::isfinite(rc)) ? 1.0 / rc
                                                      : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxCondition)) throw SingularSystem(name, cond);
  Matrix x = lu.solve(b);
  if (!x.allFinite()) throw SingularSystem(name, cond);
  return {std::move(x), cond};
}

LinearSolution solve_linear(const Matrix& a, const Vector& b, const std::string& name) {
  auto multi = solve_linear(a, Matrix(b), name);
  return {multi.x.col(0), multi.condition};
}

}  // namespace stein
