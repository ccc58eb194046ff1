#include <cassert>
#include <cstdlib>
#include <string>

#include "stein/kernels.hpp"

namespace stein::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(STEIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* env = std::getenv("STEIN_SIMD");
  const std::string pref = env ? env : "auto";
  if (pref == "scalar") return detail::scalar();
  for (const KernelTable* t : available_tables()) {
    if (pref == t->name) return *t;
  }
  // "auto" or an unavailable request: the widest variant available.
  return *available_tables().back();
}

}  // namespace

const KernelTable& scalar_table() { return detail::scalar(); }

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&detail::scalar()};
#if defined(STEIN_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&detail::avx2());
#endif
#if defined(STEIN_HAVE_NEON)
  out.push_back(&detail::neon());
#endif
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
  assert(a.size() == b.size() && a.size() == c.size());
  return active().dot3(a.data(), b.data(), c.data(), a.size());
}

double dot4(std::span<const double> a, std::span<const double> b, std::span<const double> c,
            std::span<const double> d) {
  assert(a.size() == b.size() && a.size() == c.size() && a.size() == d.size());
  return active().dot4(a.data(), b.data(), c.data(), d.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().mul(a.data(), b.data(), out.data(), a.size());
}

void add_squares(std::span<const double> x, std::span<double> acc) {
  assert(x.size() == acc.size());
  active().add_squares(x.data(), acc.data(), x.size());
}

void sqrt_inplace(std::span<double> x) { active().sqrt_inplace(x.data(), x.size()); }

void div_inplace(std::span<double> y, std::span<const double> denom) {
  assert(y.size() == denom.size());
  active().div_inplace(y.data(), denom.data(), y.size());
}

}  // namespace stein::kernels
