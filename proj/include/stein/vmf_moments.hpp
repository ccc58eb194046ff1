#pragma once

// Closed-form vMF moments up to order four, the Fisher information for κ,
// and the asymptotic variance P of √n(κ̂_ST - κ), both in closed form and
// assembled through the delta method from the moment blocks.

#include "stein/linalg.hpp"
#include "stein/models.hpp"

namespace stein {

/// r_k = I_{d/2-1+k}(κ) / I_{d/2-1}(κ) for k = 1..4 (index 0 holds 1).
struct BesselRatios {
  double r[5];
};
BesselRatios vmf_bessel_ratios(int d, double kappa);

struct VmfMomentSet {
  Vector mean;           // E[X]
  Matrix second_moment;  // E[XXᵀ]
  Matrix var_x;          // Var[X]
  Matrix fourth_moment;  // E[vec(XXᵀ) vec(XXᵀ)ᵀ], d² x d²
  Matrix third_moment;   // E[X vec(XXᵀ)ᵀ], d x d²
  Matrix var_vec_xxt;    // Var[vec(XXᵀ)]
  Matrix cross_cov;      // Cov[X, vec(XXᵀ)], d x d²
};

VmfMomentSet vmf_moments(const VmfParams& p);

/// 1 - A² - (d-1)A/κ with A = I_{d/2}/I_{d/2-1}.
double fisher_information_vmf(int d, double kappa);

/// κ(2κ - (d+1)A) / ((d-1)A²).
double stein_asymptotic_variance_vmf(int d, double kappa);

/// The Stein estimator as a function of (Z, z) = (mean XXᵀ, mean X):
/// G = (d-1) ℓᵀ(I-Z)z / ℓᵀ(I-Z)²ℓ with ℓ = z/‖z‖.
double stein_kappa_map(const Matrix& z_mat, const Vector& z);

struct SteinKappaGradient {
  Matrix d_z_mat;  // 1 x d², with respect to vec(Z)
  Matrix d_z;      // 1 x d
};
/// Analytic partial derivatives of stein_kappa_map.
SteinKappaGradient stein_kappa_map_gradient(const Matrix& z_mat, const Vector& z);

/// P1 Var[vec XXᵀ] P1ᵀ + 2 P2 V P1ᵀ + P2 Var[X] P2ᵀ with (P1, P2) the
/// gradient of stein_kappa_map at (E[XXᵀ], E[X]).
double delta_method_variance_vmf(const VmfParams& p);

}  // namespace stein
