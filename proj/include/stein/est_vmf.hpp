#pragma once

// Concentration estimators for vMF samples. All of them use the directional
// mean for μ.

#include <string>
#include <vector>

#include "stein/models.hpp"
#include "stein/sample.hpp"

namespace stein {

enum class VmfEstimator { ST, ST2, ML, SM };

std::string vmf_estimator_name(VmfEstimator e);  // "st", "st2", "ml", "sm"
VmfEstimator parse_vmf_estimator(const std::string& name);

struct VmfEstimate {
  Vector mu_hat;
  double kappa_hat = 0.0;
  VmfEstimator estimator = VmfEstimator::ST;
  double resultant_length = 0.0;  // ‖X̄‖
  int iterations = 0;             // ML root finder
  double condition = 1.0;         // ST2 solve
  std::vector<std::string> warnings;
};

/// X̄/‖X̄‖; DegenerateMean when ‖X̄‖ <= 1e-12.
Vector mean_direction(const SampleMatrix& x);

/// (d-1) μ̂ᵀ(I - S)X̄ / ‖(I - S)μ̂‖², S the scatter matrix.
VmfEstimate kappa_stein(const SampleMatrix& x);
/// (d-1) ‖(I - S)⁻¹ X̄‖.
VmfEstimate kappa_stein2(const SampleMatrix& x);
/// Root of I_{d/2}(κ)/I_{d/2-1}(κ) = ‖X̄‖.
VmfEstimate kappa_mle(const SampleMatrix& x);
/// (d-1) Ȳ / (1 - mean Y²), Y_i = μ̂ᵀX_i.
VmfEstimate kappa_score_matching(const SampleMatrix& x);

VmfEstimate fit_vmf(const SampleMatrix& x, VmfEstimator e);

/// Solve A_d(κ) = r for 0 < r < 1 by bracketed Newton. |A_d(κ) - r| <= 1e-12
/// on return.
double vmf_mle_from_resultant(int d, double r, int* iterations = nullptr);

/// Least-squares κ for an arbitrary test function f: with
/// Q = mean[(d-1)∇f X + ∇²f (X⊗X) - Δf] and K = mean[∇f (I - XXᵀ)] μ̂,
/// κ = KᵀQ / KᵀK. With f(x) = x this is kappa_stein.
double kappa_least_squares(const SampleMatrix& x, const SmoothTestFunction& f);

}  // namespace stein
