#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "stein/errors.hpp"
#include "stein/linalg.hpp"
#include "stein/models.hpp"
#include "stein/rng.hpp"
#include "stein/sample.hpp"
#include "stein/sampler.hpp"
#include "stein/special.hpp"

using namespace stein;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return worst;
}

// 0.1% critical value for equal sample sizes.
double ks_critical(std::size_t n) { return 1.95 * std::sqrt(2.0 / static_cast<double>(n)); }

std::vector<double> projections(const SampleMatrix& x, const Vector& mu, bool squared) {
  const Vector p = x.matrix() * mu;
  std::vector<double> out(p.data(), p.data() + p.size());
  if (squared)
    for (auto& v : out) v *= v;
  return out;
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(5, 1), b(5, 1), c(5, 2);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  Rng r(1);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  double g = 0.0;
  for (int i = 0; i < n; ++i) g += r.gamma(2.5);
  CHECK(std::abs(g / n - 2.5) < 4.0 * std::sqrt(2.5 / n));
}

TEST_CASE("samples are unit vectors and seeded") {
  const Vector mu = testing::rows({{1, 2, 3}}).row(0);
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = a(1, 0) = 2.0;
  a(0, 0) = -1.0;
  const Params ps[] = {VmfParams{mu, 10.0}, WatsonParams{mu, -10.0}, WatsonParams{mu, 10.0},
                       FisherBinghamParams{3.0 * mu, a}};
  for (const Params& p : ps) {
    Rng r1(42), r2(42);
    const SampleMatrix x = sample(p, 500, r1);
    const SampleMatrix y = sample(p, 500, r2);
    CHECK(x.max_norm_deviation() <= 1e-12);
    CHECK(x.matrix() == y.matrix());
  }
}

TEST_CASE("vMF sampler: mean direction and mean length") {
  Rng rng(20);
  const std::size_t n = 100000;
  for (int d : {2, 3, 10}) {
    const Vector mu = testing::random_unit(d, rng);
    const SampleMatrix x = sample_vmf(VmfParams{mu, 10.0}, n, rng);
    const Vector m = x.matrix().colwise().mean().transpose();
    const double len = m.norm();
    const double se = std::sqrt((1.0 - len * len) / static_cast<double>(n));
    CHECK(std::abs(len - bessel_ratio(d, 10.0)) <= 4.0 * se);
    CHECK(m.normalized().dot(mu) > 0.999);
  }
  const Vector mu = Vector::Unit(3, 1);
  const SampleMatrix c = sample_vmf(VmfParams{mu, 500.0}, 10000, rng);
  CHECK((c.matrix() * mu).minCoeff() > std::cos(0.2));
}

TEST_CASE("Watson sampler: axis recovery for both signs") {
  Rng rng(21);
  const Vector mu = testing::random_unit(3, rng);
  const std::size_t n = 100000;
  const SampleMatrix bip = sample_watson(WatsonParams{mu, 10.0}, n, rng);
  const EigenDecomposition e1 = sym_eigen(bip.matrix().transpose() * bip.matrix() / n);
  CHECK(std::abs(e1.vectors.col(0).dot(mu)) > 0.99);
  const SampleMatrix gir = sample_watson(WatsonParams{mu, -10.0}, n, rng);
  const EigenDecomposition e2 = sym_eigen(gir.matrix().transpose() * gir.matrix() / n);
  CHECK(std::abs(e2.vectors.col(2).dot(mu)) > 0.99);
  // κ = 0 is uniform: E[(μᵀX)²] = 1/d.
  const SampleMatrix u = sample_watson(WatsonParams{mu, 0.0}, n, rng);
  const auto p = projections(u, mu, true);
  double s = 0.0;
  for (double v : p) s += v;
  CHECK(std::abs(s / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("FB sampler reduces to vMF and Watson in distribution") {
  Rng rng(22);
  const std::size_t n = 10000;
  const Vector mu = testing::rows({{1, -2, 2}}).row(0);
  const SampleMatrix fb = sample_fb(FisherBinghamParams{4.0 * mu, Matrix::Zero(3, 3)}, n, rng);
  const SampleMatrix vm = sample_vmf(VmfParams{mu, 4.0}, n, rng);
  CHECK(ks(projections(fb, mu, false), projections(vm, mu, false)) < ks_critical(n));

  // A = κ e1 e1ᵀ has A_dd = 0, so it is a valid FB parameter for Watson(e1, κ).
  const Vector e1 = Vector::Unit(3, 0);
  for (double k : {6.0, -6.0}) {
    const SampleMatrix f = sample_fb(FisherBinghamParams{Vector::Zero(3), k * e1 * e1.transpose()}, n, rng);
    const SampleMatrix w = sample_watson(WatsonParams{e1, k}, n, rng);
    CHECK(ks(projections(f, e1, true), projections(w, e1, true)) < ks_critical(n));
  }
}

TEST_CASE("Bingham sampler matches a density-weighted histogram") {
  // Importance-weighted uniform draws give the target law of x1².
  Rng rng(23);
  Matrix b = Matrix::Zero(3, 3);
  b(0, 0) = 3.0;
  b(1, 1) = -2.0;
  const std::size_t n = 20000;
  const SampleMatrix x = sample_bingham(b, n, rng);
  const SampleMatrix u = sample_uniform(3, 400000, rng);
  double wsum = 0.0, wx = 0.0, xs = 0.0;
  for (std::size_t i = 0; i < u.n(); ++i) {
    const Vector r = u.row(i);
    const double w = std::exp(r.dot(b * r));
    wsum += w;
    wx += w * r(0) * r(0);
  }
  for (std::size_t i = 0; i < n; ++i) xs += x.matrix()(static_cast<Eigen::Index>(i), 0) * x.matrix()(static_cast<Eigen::Index>(i), 0);
  CHECK(std::abs(xs / n - wx / wsum) < 0.01);
}

TEST_CASE("sampler errors") {
  Rng rng(24);
  CHECK_THROWS_AS(sample_vmf(VmfParams{Vector::Ones(3), 1.0}, 5, rng), DomainError);
  CHECK_THROWS_AS(sample_vmf(VmfParams{Vector::Unit(3, 0), 1.0}, 0, rng), DomainError);
}
