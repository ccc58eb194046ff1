#include <cmath>

#include "stein/kernels.hpp"

namespace stein::kernels::detail {
namespace {

double sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

double dot4_scalar(const double* a, const double* b, const double* c, const double* d,
                   std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] * b[i]) * (c[i] * d[i]);
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void add_squares_scalar(const double* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i] * x[i];
    acc[i] = acc[i] + t;
  }
}

void sqrt_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sqrt(x[i]);
}

void div_scalar(double* y, const double* denom, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] / denom[i];
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      Isa::scalar,   "scalar",   sum_scalar,         dot_scalar,  dot3_scalar, dot4_scalar,
      axpy_scalar,   mul_scalar, add_squares_scalar, sqrt_scalar, div_scalar,
  };
  return table;
}

}  // namespace stein::kernels::detail
