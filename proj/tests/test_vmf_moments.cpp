#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "stein/errors.hpp"
#include "stein/linalg.hpp"
#include "stein/sampler.hpp"
#include "stein/special.hpp"
#include "stein/vmf_moments.hpp"

using namespace stein;
using doctest::Approx;

TEST_CASE("mean and Fisher information against closed forms") {
  const VmfMomentSet m = vmf_moments(VmfParams{Vector::Unit(3, 0), 1.0});
  CHECK(m.mean.norm() == Approx(oracle::vmf_d3_k1_mean_length).epsilon(1e-13));
  CHECK(fisher_information_vmf(3, 1.0) == Approx(oracle::vmf_d3_k1_fisher).epsilon(1e-13));
  CHECK(fisher_information_vmf(20, 50.0) == Approx(oracle::vmf_d20_k50_fisher).epsilon(1e-11));
  CHECK(fisher_information_vmf(3, 1e-4) == Approx(1.0 / 3.0).epsilon(1e-6));
  for (int d : {2, 3, 10, 20})
    for (double k = 0.1; k <= 50.0; k *= 1.7) CHECK(fisher_information_vmf(d, k) > 0.0);
}

TEST_CASE("Stein asymptotic variance P") {
  CHECK(stein_asymptotic_variance_vmf(3, 1.0) == Approx(oracle::vmf_d3_k1_stein_variance).epsilon(1e-13));
  CHECK(stein_asymptotic_variance_vmf(10, 10.0) == Approx(oracle::vmf_d10_k10_stein_variance).epsilon(1e-13));
  CHECK(stein_asymptotic_variance_vmf(2, 1.0) == Approx(oracle::vmf_d2_k1_stein_variance).epsilon(1e-13));
  CHECK_THROWS_AS(stein_asymptotic_variance_vmf(3, 0.0), DomainError);
  CHECK_THROWS_AS(stein_asymptotic_variance_vmf(1, 1.0), DomainError);
}

TEST_CASE("delta method matches P at any mean direction") {
  Rng rng(30);
  for (int d : {2, 3, 5, 10})
    for (double k : {0.5, 2.0, 10.0}) {
      const double p = stein_asymptotic_variance_vmf(d, k);
      CHECK(delta_method_variance_vmf(VmfParams{testing::random_unit(d, rng), k}) == Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("kappa map gradient matches finite differences") {
  Rng rng(31);
  const int d = 4;
  const VmfMomentSet m = vmf_moments(VmfParams{testing::random_unit(d, rng), 3.0});
  const Matrix zm = m.second_moment;
  const Vector z = m.mean;
  const double kappa = stein_kappa_map(zm, z);
  CHECK(kappa == Approx(3.0).epsilon(1e-12));
  const SteinKappaGradient g = stein_kappa_map_gradient(zm, z);
  const double h = 1e-6;
  for (int i = 0; i < d; ++i) {
    Vector zp = z, zn = z;
    zp(i) += h;
    zn(i) -= h;
    CHECK(g.d_z(0, i) == Approx((stein_kappa_map(zm, zp) - stein_kappa_map(zm, zn)) / (2 * h)).epsilon(1e-6));
  }
  for (int i = 0; i < d * d; ++i) {
    Matrix zp = zm, zn = zm;
    zp(i % d, i / d) += h;
    zn(i % d, i / d) -= h;
    CHECK(g.d_z_mat(0, i) ==
          Approx((stein_kappa_map(zp, z) - stein_kappa_map(zn, z)) / (2 * h)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("moment blocks match Monte Carlo") {
  Rng rng(32);
  const int d = 3;
  const VmfParams p{testing::rows({{2, 1, -1}}).row(0), 2.0};
  const VmfMomentSet m = vmf_moments(p);
  const std::size_t n = 1000000;
  const SampleMatrix x = sample_vmf(p, n, rng);
  const Matrix& xs = x.matrix();

  // Per-row features: x (d), vec(xxᵀ) (d²).
  Matrix feat(static_cast<Eigen::Index>(n), d + d * d);
  for (Eigen::Index i = 0; i < xs.rows(); ++i) {
    const Vector r = xs.row(i).transpose();
    feat.block(i, 0, 1, d) = r.transpose();
    feat.block(i, d, 1, d * d) = vec(r * r.transpose()).transpose();
  }
  const Vector mean = feat.colwise().mean().transpose();
  const Matrix centred = feat.rowwise() - mean.transpose();
  const Matrix cov = centred.transpose() * centred / static_cast<double>(n - 1);

  Vector want_mean(d + d * d);
  want_mean << m.mean, vec(m.second_moment);
  Matrix want_cov(d + d * d, d + d * d);
  want_cov << m.var_x, m.cross_cov, m.cross_cov.transpose(), m.var_vec_xxt;

  for (int i = 0; i < d + d * d; ++i) {
    const double se = std::sqrt(cov(i, i) / n);
    CHECK(std::abs(mean(i) - want_mean(i)) <= 5.0 * se + 1e-12);
  }
  // Covariance entries: SE from fourth-order products, estimated on the sample.
  for (int i = 0; i < d + d * d; ++i)
    for (int j = 0; j < d + d * d; ++j) {
      const Eigen::ArrayXd prod = centred.col(i).array() * centred.col(j).array();
      const double var = (prod - prod.mean()).square().mean();
      const double se = std::sqrt(var / n);
      CHECK(std::abs(cov(i, j) - want_cov(i, j)) <= 5.0 * se + 1e-12);
    }
  CHECK((m.second_moment - m.second_moment.transpose()).norm() == 0.0);
  CHECK((m.var_vec_xxt - m.var_vec_xxt.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}
