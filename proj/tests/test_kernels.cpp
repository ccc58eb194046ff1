#include <doctest.h>

#include <cmath>
#include <vector>

#include "stein/kernels.hpp"
#include "stein/rng.hpp"

using namespace stein;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-13 * std::max(1.0, scale); }

}  // namespace

TEST_CASE("every available kernel table matches the scalar reference") {
  const auto& ref = kernels::scalar_table();
  Rng rng(99);
  const auto tables = kernels::available_tables();
  REQUIRE(!tables.empty());
  CHECK(tables.front() == &ref);
  for (const kernels::KernelTable* t : tables) {
    CAPTURE(t->name);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 67u, 1000u}) {
      CAPTURE(n);
      const auto a = random_vec(n, rng), b = random_vec(n, rng), c = random_vec(n, rng), d = random_vec(n, rng);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i] * c[i] * d[i]) + std::abs(a[i]);
      CHECK(close(t->sum(a.data(), n), ref.sum(a.data(), n), scale));
      CHECK(close(t->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), scale));
      CHECK(close(t->dot3(a.data(), b.data(), c.data(), n), ref.dot3(a.data(), b.data(), c.data(), n), scale));
      CHECK(close(t->dot4(a.data(), b.data(), c.data(), d.data(), n),
                  ref.dot4(a.data(), b.data(), c.data(), d.data(), n), scale));

      auto y1 = b, y2 = b;
      t->axpy(0.75, a.data(), y1.data(), n);
      ref.axpy(0.75, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], std::abs(y2[i])));

      std::vector<double> m1(n), m2(n);
      t->mul(a.data(), b.data(), m1.data(), n);
      ref.mul(a.data(), b.data(), m2.data(), n);
      CHECK(m1 == m2);

      auto s1 = c, s2 = c;
      for (auto& v : s1) v = std::abs(v);
      s2 = s1;
      t->add_squares(a.data(), s1.data(), n);
      ref.add_squares(a.data(), s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(s1[i], s2[i], s2[i]));
      t->sqrt_inplace(s1.data(), n);
      ref.sqrt_inplace(s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(s1[i], s2[i], s2[i]));

      auto q1 = a, q2 = a;
      t->div_inplace(q1.data(), s1.data(), n);
      ref.div_inplace(q2.data(), s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(q1[i], q2[i], std::abs(q2[i])));
    }
  }
}

TEST_CASE("span wrappers route through the active table") {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{2, 2, 2, 2, 2};
  CHECK(kernels::sum(a) == 15.0);
  CHECK(kernels::dot(a, b) == 30.0);
  CHECK(kernels::dot3(a, b, b) == 60.0);
  CHECK(kernels::dot4(a, b, b, b) == 120.0);
  CHECK(kernels::isa_name(kernels::active().isa) == std::string_view(kernels::active().name));
}
