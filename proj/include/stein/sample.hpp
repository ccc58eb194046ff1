#pragma once

// A sample X_1..X_n of unit vectors in R^d, stored column-major so each
// coordinate is one contiguous array, and the empirical moments computed
// from it.

#include <cstddef>
#include <span>
#include <vector>

#include "stein/linalg.hpp"

namespace stein {

inline constexpr double kRowNormTolerance = 1e-12;

class SampleMatrix {
 public:
  SampleMatrix() = default;
  /// Takes an n x d matrix whose rows must already be unit within 1e-12.
  explicit SampleMatrix(Matrix rows);
  /// Divides every row by its norm; rows of norm zero are an error.
  static SampleMatrix normalized(Matrix rows);

  std::size_t n() const noexcept { return static_cast<std::size_t>(x_.rows()); }
  int d() const noexcept { return static_cast<int>(x_.cols()); }
  const Matrix& matrix() const noexcept { return x_; }
  Vector row(std::size_t i) const { return x_.row(static_cast<Eigen::Index>(i)).transpose(); }
  std::span<const double> col(int j) const {
    return {x_.data() + static_cast<std::ptrdiff_t>(j) * x_.rows(), n()};
  }
  /// Largest |‖x_i‖ - 1| over rows.
  double max_norm_deviation() const;

 private:
  Matrix x_;
};

/// Row norms of an n x d matrix, computed with the column kernels.
Vector row_norms(const Matrix& rows);

/// Sample means of x, x x^T, and (optionally) the third and fourth product
/// tensors. Tensors are stored dense and fully symmetric, index
/// i + d j + d^2 k (+ d^3 l).
struct EmpiricalMoments {
  std::size_t n = 0;
  int d = 0;
  int order = 0;
  Vector m1;
  Matrix m2;
  std::vector<double> m3;
  std::vector<double> m4;

  double third(int i, int j, int k) const {
    return m3[static_cast<std::size_t>(i + d * (j + d * k))];
  }
  double fourth(int i, int j, int k, int l) const {
    return m4[static_cast<std::size_t>(i + d * (j + d * (k + d * l)))];
  }
};

/// order in 1..4.
EmpiricalMoments empirical_moments(const SampleMatrix& x, int order);

/// Moments of the concatenation of the two samples (weighted by n).
EmpiricalMoments combine(const EmpiricalMoments& a, const EmpiricalMoments& b);

}  // namespace stein
