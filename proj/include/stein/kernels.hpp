#pragma once

// Data-parallel inner loops over sample columns.
//
// Samples are stored column-major (one contiguous array per coordinate), so
// every moment the estimators need reduces to sums of elementwise products
// of a few columns. Each kernel has a scalar reference implementation and
// vector variants (AVX2+FMA on x86-64, NEON on AArch64); the variant is
// picked once at startup from CPU features. Set STEIN_SIMD=scalar to force
// the reference path.
//
// Reductions may differ from the scalar path by reassociation (a few ulp
// times the term count). Elementwise kernels are bit-identical across
// variants: they avoid FMA contraction and use correctly rounded sqrt/div.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace stein::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  const char* name;

  // Reductions.
  double (*sum)(const double* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
  double (*dot4)(const double* a, const double* b, const double* c, const double* d,
                 std::size_t n);

  // Elementwise.
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);  // y += alpha*x
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  void (*add_squares)(const double* x, double* acc, std::size_t n);  // acc += x*x
  void (*sqrt_inplace)(double* x, std::size_t n);
  void (*div_inplace)(double* y, const double* denom, std::size_t n);  // y /= denom
};

const KernelTable& scalar_table();

/// Every variant compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available_tables();

/// The table used by the library. Chosen on first call.
const KernelTable& active();

std::string_view isa_name(Isa isa);

// Span conveniences over active().
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c);
double dot4(std::span<const double> a, std::span<const double> b, std::span<const double> c,
            std::span<const double> d);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void mul(std::span<const double> a, std::span<const double> b, std::span<double> out);
void add_squares(std::span<const double> x, std::span<double> acc);
void sqrt_inplace(std::span<double> x);
void div_inplace(std::span<double> y, std::span<const double> denom);

namespace detail {
// Variant tables, defined in their own translation units.
const KernelTable& scalar();
#if defined(STEIN_HAVE_AVX2)
const KernelTable& avx2();
#endif
#if defined(STEIN_HAVE_NEON)
const KernelTable& neon();
#endif
}  // namespace detail

}  // namespace stein::kernels
