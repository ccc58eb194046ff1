#include "stein/vmf_moments.hpp"

#include <cmath>

#include "stein/errors.hpp"
#include "stein/special.hpp"

namespace stein {
namespace {

void check_args(int d, double kappa) {
  if (d < 2) throw DomainError("vmf moments: d must be at least 2");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("vmf moments: kappa must be > 0");
}

}  // namespace

BesselRatios vmf_bessel_ratios(int d, double kappa) {
  check_args(d, kappa);
  const double nu = 0.5 * d - 1.0;
  BesselRatios out{};
  out.r[0] = 1.0;
  for (int k = 1; k <= 4; ++k) out.r[k] = out.r[k - 1] * bessel_i_ratio(nu + k, kappa);
  return out;
}

VmfMomentSet vmf_moments(const VmfParams& p) {
  validate(p);
  const int d = p.d();
  const double k = p.kappa;
  const BesselRatios br = vmf_bessel_ratios(d, k);
  const double* r = br.r;

  const Vector& mu = p.mu;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix mm = mu * mu.transpose();
  const Vector vec_i = vec(id);
  const Vector vec_mm = vec(mm);
  const Matrix comm = commutation_matrix(static_cast<std::size_t>(d));
  const Matrix mu_row = mu.transpose();

  VmfMomentSet m;
  m.mean = r[1] * mu;
  m.second_moment = (r[1] / k) * id + r[2] * mm;
  m.var_x = (r[1] / k) * id + (r[2] - r[1] * r[1]) * mm;

  const Matrix mm_i = kron(mm, id);
  const Matrix i_mm = kron(id, mm);
  const Matrix i_i = kron(id, id);
  m.fourth_moment =
      (r[3] / k) * (vec_i * vec_mm.transpose() + vec_mm * vec_i.transpose() + mm_i + i_mm +
                    mm_i * comm + i_mm * comm) +
      (r[2] / (k * k)) * (vec_i * vec_i.transpose() + i_i + i_i * comm) +
      r[4] * (vec_mm * vec_mm.transpose());

  const Matrix i_mu = kron(id, mu_row);
  m.third_moment = (r[2] / k) * (i_mu + i_mu * comm + mu * vec_i.transpose()) +
                   r[3] * (mu * vec_mm.transpose());

  const Vector vec_second = vec(m.second_moment);
  m.var_vec_xxt = m.fourth_moment - vec_second * vec_second.transpose();
  m.cross_cov = m.third_moment - m.mean * vec_second.transpose();
  return m;
}

double fisher_information_vmf(int d, double kappa) {
  check_args(d, kappa);
  const double a = bessel_ratio(d, kappa);
  return 1.0 - a * a - (d - 1.0) * a / kappa;
}

double stein_asymptotic_variance_vmf(int d, double kappa) {
  check_args(d, kappa);
  const double a = bessel_ratio(d, kappa);
  return kappa * (2.0 * kappa - (d + 1.0) * a) / ((d - 1.0) * a * a);
}

double stein_kappa_map(const Matrix& z_mat, const Vector& z) {
  const int d = static_cast<int>(z.size());
  const Vector l = z / z.norm();
  const Matrix b = Matrix::Identity(d, d) - z_mat;
  const Vector bl = b * l;
  return (d - 1.0) * bl.dot(z) / bl.squaredNorm();
}

SteinKappaGradient stein_kappa_map_gradient(const Matrix& z_mat, const Vector& z) {
  const int d = static_cast<int>(z.size());
  const double nz = z.norm();
  const Vector l = z / nz;
  const Matrix id = Matrix::Identity(d, d);
  const Matrix b = id - z_mat;
  const double den = l.dot(b * b * l);
  const double num = l.dot(b * z);
  const double g = (d - 1.0) * num / den;

  SteinKappaGradient out;
  // ∂G/∂vec(Z) = -(d-1)(z⊗ℓ)ᵀ/den + (d-1) vec(Bᵀℓℓᵀ + ℓℓᵀBᵀ)ᵀ num / den².
  const Matrix ll = l * l.transpose();
  const Vector z_kron_l = vec(l * z.transpose());  // z⊗ℓ
  const Vector sym = vec(b.transpose() * ll + ll * b.transpose());
  out.d_z_mat = ((-(d - 1.0) / den) * z_kron_l + ((d - 1.0) * num / (den * den)) * sym).transpose();

  // ∂G/∂z from G = (d-1) ℓᵀBℓ / ℓᵀB²ℓ · ‖z‖, using ∇ℓ = (I - ℓℓᵀ)/‖z‖.
  const Vector lb = b.transpose() * l;
  const Vector lbb = (b * b).transpose() * l;
  const double lbl = l.dot(b * l);
  const Vector inner = lb / den - (lbl / (den * den)) * lbb;
  out.d_z = (2.0 * (d - 1.0) * (inner.transpose() * (id - ll)) + (g / nz) * l.transpose());
  return out;
}

double delta_method_variance_vmf(const VmfParams& p) {
  const VmfMomentSet m = vmf_moments(p);
  const SteinKappaGradient grad = stein_kappa_map_gradient(m.second_moment, m.mean);
  const Matrix& p1 = grad.d_z_mat;
  const Matrix& p2 = grad.d_z;
  const Matrix total = p1 * m.var_vec_xxt * p1.transpose() +
                       2.0 * p2 * m.cross_cov * p1.transpose() + p2 * m.var_x * p2.transpose();
  return total(0, 0);
}

}  // namespace stein
