#pragma once

#include <Eigen/QR>
#include <cmath>

#include "stein/linalg.hpp"
#include "stein/rng.hpp"
#include "stein/sample.hpp"

namespace testing {

inline stein::Matrix gaussian(int r, int c, stein::Rng& rng) {
  stein::Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

inline stein::Matrix random_symmetric(int d, stein::Rng& rng) {
  const stein::Matrix a = gaussian(d, d, rng);
  return 0.5 * (a + a.transpose());
}

inline stein::Vector random_unit(int d, stein::Rng& rng) {
  return stein::Vector(gaussian(d, 1, rng).col(0)).normalized();
}

inline stein::Matrix random_orthogonal(int d, stein::Rng& rng) {
  Eigen::HouseholderQR<stein::Matrix> qr(gaussian(d, d, rng));
  return qr.householderQ() * stein::Matrix::Identity(d, d);
}

inline stein::SampleMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
  stein::Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return stein::SampleMatrix::normalized(std::move(m));
}

inline double max_abs(const stein::Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace testing
