#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "stein/errors.hpp"
#include "stein/est_fb.hpp"
#include "stein/linalg.hpp"
#include "stein/sample.hpp"
#include "stein/sampler.hpp"

using namespace stein;
using testing::max_abs;

namespace {

SampleMatrix from(const double* p, int n, int d) {
  Matrix m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = p[i * d + j];
  return SampleMatrix::normalized(std::move(m));
}

Matrix row_major(const double* p, int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = p[i * c + j];
  return m;
}

}  // namespace

TEST_CASE("single point statistics") {
  const SampleMatrix x = testing::rows({{1, 0, 0}});
  const FbSteinStatistics s = fb_statistics(x);
  Vector want(5);
  want << 4, 0, 0, -2, 0;
  CHECK(max_abs(s.D - want) == 0.0);
  CHECK_THROWS_AS(fb_stein_fit(x), SingularSystem);
}

TEST_CASE("twelve point fixture") {
  const SampleMatrix x = from(oracle::fb_fixture_points, 12, 3);
  const FbSteinStatistics s = fb_statistics(x);
  CHECK(max_abs(s.M - row_major(oracle::fb_fixture_M, 5, 6)) < 1e-14);
  CHECK(max_abs(s.D - row_major(oracle::fb_fixture_D, 5, 1)) < 1e-14);
  CHECK(max_abs(s.E - row_major(oracle::fb_fixture_E, 5, 3)) < 1e-14);
  CHECK(max_abs(s.G - row_major(oracle::fb_fixture_G, 3, 6)) < 1e-14);
  const FbEstimate e = fb_stein_fit(x);
  CHECK(max_abs(e.params.mu - row_major(oracle::fb_fixture_mu, 3, 1)) < 1e-12);
  CHECK(max_abs(e.params.A - row_major(oracle::fb_fixture_A, 3, 3)) < 1e-12);
  CHECK(e.params.A(2, 2) == 0.0);
  CHECK(e.residual_norm < 1e-12);
  CHECK(e.cond_M_prime >= 1.0);
}

TEST_CASE("d = 4 fixture") {
  const SampleMatrix x = from(oracle::fb_fixture4_points, 40, 4);
  const FbEstimate e = fb_stein_fit(x);
  CHECK(max_abs(e.params.mu - row_major(oracle::fb_fixture4_mu, 4, 1)) < 1e-12);
  CHECK(max_abs(e.params.A - row_major(oracle::fb_fixture4_A, 4, 4)) < 1e-12);
}

TEST_CASE("moment path, generic path and chunked accumulation agree") {
  Rng rng(50);
  for (int d : {2, 3, 5}) {
    const SampleMatrix x = sample_uniform(d, 61, rng);
    const FbSteinStatistics a = fb_statistics(x);
    const FbSteinStatistics b = fb_statistics(empirical_moments(x, 4));
    const FbSteinStatistics c = fb_statistics_generic(x, identity_test_function(d), vech_outer_test_function(d));
    const SampleMatrix head{x.matrix().topRows(20)};
    const SampleMatrix tail{x.matrix().bottomRows(41)};
    const FbSteinStatistics m = combine(fb_statistics(head), fb_statistics(tail));
    for (const auto* o : {&b, &c, &m}) {
      CHECK(max_abs(a.M - o->M) < 1e-13);
      CHECK(max_abs(a.D - o->D) < 1e-13);
      CHECK(max_abs(a.E - o->E) < 1e-13);
      CHECK(max_abs(a.G - o->G) < 1e-13);
      CHECK(max_abs(a.H - o->H) < 1e-13);
      CHECK(max_abs(a.L - o->L) < 1e-13);
    }
    CHECK(m.n == x.n());
  }
}

TEST_CASE("consistency on vMF-shaped data") {
  Rng rng(51);
  const SampleMatrix x = sample_fb(FisherBinghamParams{5.0 * Vector::Unit(3, 0), Matrix::Zero(3, 3)}, 100000, rng);
  const FbEstimate e = fb_stein_fit(x);
  CHECK(spectral_norm(e.params.A) < 0.15);
  CHECK((e.params.mu - 5.0 * Vector::Unit(3, 0)).norm() < 0.3);
}

TEST_CASE("Stein residual: zero mean at the truth, larger away from the estimate") {
  Rng rng(52);
  Matrix a = Matrix::Zero(3, 3);
  a(1, 2) = a(2, 1) = -3.0;
  const FisherBinghamParams truth{(Vector(3) << 0, 3, 3).finished(), a};
  const SampleMatrix x = sample_fb(truth, 100000, rng);
  const SteinMean f1 = stein_operator_mean(truth, identity_test_function(3), x);
  const SteinMean f2 = stein_operator_mean(truth, vech_outer_test_function(3), x);
  for (Eigen::Index i = 0; i < f1.mean.size(); ++i) CHECK(std::abs(f1.mean(i)) <= 4.0 * f1.std_error(i));
  for (Eigen::Index i = 0; i < f2.mean.size(); ++i) CHECK(std::abs(f2.mean(i)) <= 4.0 * f2.std_error(i));

  const SampleMatrix small{x.matrix().topRows(2000)};
  const FbEstimate e = fb_stein_fit(small);
  const double at_hat = fb_stein_residual(e.params, small).norm();
  FisherBinghamParams moved = e.params;
  moved.mu(0) += 0.5;
  moved.A(0, 1) = moved.A(1, 0) = moved.A(0, 1) + 0.5;
  CHECK(at_hat < 1e-10);
  CHECK(fb_stein_residual(moved, small).norm() > at_hat);
}

TEST_CASE("identification warning for very concentrated data") {
  Rng rng(53);
  const SampleMatrix x = sample_fb(FisherBinghamParams{40.0 * Vector::Unit(3, 0), Matrix::Zero(3, 3)}, 1000, rng);
  const FbEstimate e = fb_stein_fit(x);
  CHECK(!e.warnings.empty());
}

TEST_CASE("location-only fit recovers mu when A = 0") {
  Rng rng(54);
  const Vector mu = testing::rows({{1, 1, -1}}).row(0) * 4.0;
  const SampleMatrix x = sample_fb(FisherBinghamParams{mu, Matrix::Zero(3, 3)}, 50000, rng);
  CHECK((fb_location_only_fit(x) - mu).norm() < 0.2);
}
