// AArch64 NEON variants (Advanced SIMD is mandatory on AArch64, so no
// runtime probe is needed).

#include <arm_neon.h>

#include <cmath>

#include "stein/kernels.hpp"

namespace stein::kernels::detail {
namespace {

double sum_neon(const double* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(a + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(a + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i];
  return s;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3_neon(const double* a, const double* b, const double* c, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t ab0 = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t ab1 = vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc0 = vfmaq_f64(acc0, ab0, vld1q_f64(c + i));
    acc1 = vfmaq_f64(acc1, ab1, vld1q_f64(c + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

double dot4_neon(const double* a, const double* b, const double* c, const double* d,
                 std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t ab0 = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t cd0 = vmulq_f64(vld1q_f64(c + i), vld1q_f64(d + i));
    const float64x2_t ab1 = vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    const float64x2_t cd1 = vmulq_f64(vld1q_f64(c + i + 2), vld1q_f64(d + i + 2));
    acc0 = vfmaq_f64(acc0, ab0, cd0);
    acc1 = vfmaq_f64(acc1, ab1, cd1);
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += (a[i] * b[i]) * (c[i] * d[i]);
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

void mul_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void add_squares_neon(const double* x, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vmulq_f64(v, v)));
  }
  for (; i < n; ++i) {
    const double t = x[i] * x[i];
    acc[i] = acc[i] + t;
  }
}

void sqrt_neon(double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vsqrtq_f64(vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] = std::sqrt(x[i]);
}

void div_neon(double* y, const double* denom, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vdivq_f64(vld1q_f64(y + i), vld1q_f64(denom + i)));
  for (; i < n; ++i) y[i] = y[i] / denom[i];
}

}  // namespace

const KernelTable& neon() {
  static const KernelTable table{
      Isa::neon, "neon",   sum_neon,         dot_neon,  dot3_neon, dot4_neon,
      axpy_neon, mul_neon, add_squares_neon, sqrt_neon, div_neon,
  };
  return table;
}

}  // namespace stein::kernels::detail
