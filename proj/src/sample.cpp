#include "stein/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stein/errors.hpp"
#include "stein/kernels.hpp"

namespace stein {

Vector row_norms(const Matrix& rows) {
  const auto n = static_cast<std::size_t>(rows.rows());
  Vector acc = Vector::Zero(rows.rows());
  for (Eigen::Index j = 0; j < rows.cols(); ++j)
    kernels::add_squares({rows.col(j).data(), n}, {acc.data(), n});
  kernels::sqrt_inplace({acc.data(), n});
  return acc;
}

SampleMatrix::SampleMatrix(Matrix rows) : x_(std::move(rows)) {
  if (x_.cols() < 2) throw DomainError("sample: dimension must be at least 2");
  if (!x_.allFinite()) throw DomainError("sample: non-finite entries");
  const double dev = max_norm_deviation();
  if (dev > kRowNormTolerance)
    throw DomainError("sample: rows are not unit vectors (max deviation " + std::to_string(dev) +
                      ")");
}

SampleMatrix SampleMatrix::normalized(Matrix rows) {
  if (!rows.allFinite()) throw DomainError("sample: non-finite entries");
  const Vector norms = row_norms(rows);
  if (norms.size() > 0 && norms.minCoeff() == 0.0) throw DomainError("sample: zero row");
  const auto n = static_cast<std::size_t>(rows.rows());
  for (Eigen::Index j = 0; j < rows.cols(); ++j)
    kernels::div_inplace({rows.col(j).data(), n}, {norms.data(), n});
  return SampleMatrix(std::move(rows));
}

double SampleMatrix::max_norm_deviation() const {
  if (x_.rows() == 0) return 0.0;
  return (row_norms(x_).array() - 1.0).abs().maxCoeff();
}

EmpiricalMoments empirical_moments(const SampleMatrix& x, int order) {
  if (order < 1 || order > 4) throw DomainError("empirical_moments: order must be 1..4");
  if (x.n() == 0) throw DomainError("empirical_moments: empty sample");
  const int d = x.d();
  const double inv_n = 1.0 / static_cast<double>(x.n());
  EmpiricalMoments m;
  m.n = x.n();
  m.d = d;
  m.order = order;

  m.m1.resize(d);
  for (int i = 0; i < d; ++i) m.m1(i) = kernels::sum(x.col(i)) * inv_n;
  if (order < 2) return m;

  m.m2.resize(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = j; i < d; ++i) m.m2(i, j) = m.m2(j, i) = kernels::dot(x.col(i), x.col(j)) * inv_n;
  if (order < 3) return m;

  const auto du = static_cast<std::size_t>(d);
  m.m3.assign(du * du * du, 0.0);
  for (int k = 0; k < d; ++k)
    for (int j = k; j < d; ++j)
      for (int i = j; i < d; ++i) {
        const double v = kernels::dot3(x.col(i), x.col(j), x.col(k)) * inv_n;
        const int idx[3] = {i, j, k};
        // Write all permutations of (i, j, k).
        static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perm)
          m.m3[static_cast<std::size_t>(idx[p[0]] + d * (idx[p[1]] + d * idx[p[2]]))] = v;
      }
  if (order < 4) return m;

  m.m4.assign(du * du * du * du, 0.0);
  for (int l = 0; l < d; ++l)
    for (int k = l; k < d; ++k)
      for (int j = k; j < d; ++j)
        for (int i = j; i < d; ++i) {
          const double v = kernels::dot4(x.col(i), x.col(j), x.col(k), x.col(l)) * inv_n;
          int idx[4] = {l, k, j, i};  // ascending, so next_permutation visits all
          do {
            m.m4[static_cast<std::size_t>(idx[0] + d * (idx[1] + d * (idx[2] + d * idx[3])))] = v;
          } while (std::next_permutation(idx, idx + 4));
        }
  return m;
}

EmpiricalMoments combine(const EmpiricalMoments& a, const EmpiricalMoments& b) {
  if (a.d != b.d) throw DomainError("combine: dimension mismatch");
  const double total = static_cast<double>(a.n + b.n);
  const double wa = static_cast<double>(a.n) / total;
  const double wb = static_cast<double>(b.n) / total;
  EmpiricalMoments m;
  m.n = a.n + b.n;
  m.d = a.d;
  m.order = std::min(a.order, b.order);
  m.m1 = wa * a.m1 + wb * b.m1;
  if (m.order >= 2) m.m2 = wa * a.m2 + wb * b.m2;
  auto mix = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = wa * x[i] + wb * y[i];
    return out;
  };
  if (m.order >= 3) m.m3 = mix(a.m3, b.m3);
  if (m.order >= 4) m.m4 = mix(a.m4, b.m4);
  return m;
}

}  // namespace stein
