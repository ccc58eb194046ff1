#pragma once

// Parameter types for the three families, their densities, smooth test
// functions with analytic derivatives, and the spherical Stein operator
//
//   A f(x) = (1-d) ∇f(x) x - ∇²f(x) (x⊗x) + Δf(x) + ∇f(x) (I - x xᵀ) s(x)
//
// applied componentwise, with s = ∇p/p the family's score (normalizer-free).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "stein/linalg.hpp"
#include "stein/sample.hpp"

namespace stein {

/// exp(μᵀx + xᵀAx) / C(μ, A); A symmetric with A(d-1, d-1) == 0.
struct FisherBinghamParams {
  Vector mu;
  Matrix A;
  int d() const { return static_cast<int>(mu.size()); }
};

/// vMF(μ, κ): unit μ, κ > 0.
struct VmfParams {
  Vector mu;
  double kappa = 0.0;
  int d() const { return static_cast<int>(mu.size()); }
};

/// W(μ, κ): unit axis μ (±μ equivalent), any real κ.
struct WatsonParams {
  Vector mu;
  double kappa = 0.0;
  int d() const { return static_cast<int>(mu.size()); }
};

using Params = std::variant<FisherBinghamParams, VmfParams, WatsonParams>;

enum class Family { fb, vmf, watson };

Family family_of(const Params& p);
std::string family_name(Family f);
/// "fb", "vmf", "watson"; throws DomainError otherwise.
Family parse_family(const std::string& name);
int dimension(const Params& p);

/// Throw DomainError unless the invariants of each type hold.
void validate(const FisherBinghamParams& p);
void validate(const VmfParams& p);
void validate(const WatsonParams& p);
void validate(const Params& p);

/// Flip u so its first largest-magnitude component is nonnegative.
Vector canonical_axis(const Vector& u);

/// Same family expressed as Fisher-Bingham parameters. Watson's κμμᵀ is
/// shifted by -κμ_d² I so that A(d-1, d-1) = 0; the density is unchanged.
FisherBinghamParams to_fisher_bingham(const Params& p);

/// Exponent of the unnormalized density: μᵀx + xᵀAx, κμᵀx, κ(μᵀx)².
double log_unnormalized_density(const Params& p, const Vector& x);

double log_sphere_area(int d);
/// log ∫ exp(κμᵀx) dσ = (d/2) log 2π + log I_{d/2-1}(κ) - (d/2-1) log κ.
double vmf_log_normalizer(int d, double kappa);
/// log ∫ exp(κ(μᵀx)²) dσ = log|S^{d-1}| + log 1F1(1/2; d/2; κ).
double watson_log_normalizer(int d, double kappa);

double vmf_log_density(const VmfParams& p, const Vector& x);
double watson_log_density(const WatsonParams& p, const Vector& x);

struct McEstimate {
  double value;
  double std_error;
};

/// log C(μ, A) by uniform importance sampling on the sphere. Validation
/// only; the estimators never need it.
McEstimate fb_log_normalizer_mc(const FisherBinghamParams& p, std::size_t n_mc,
                                std::uint64_t seed);

/// ∇p(x)/p(x): μ + 2Ax, κμ, 2κ(μᵀx)μ.
Vector score(const Params& p, const Vector& x);

/// f: S^{d-1} -> R^m with analytic derivatives. hessians() returns an
/// m x d² matrix whose row r is vec of the Hessian of component r.
struct SmoothTestFunction {
  int d = 0;
  int m = 0;
  std::function<Vector(const Vector&)> value;
  std::function<Matrix(const Vector&)> jacobian;
  std::function<Matrix(const Vector&)> hessians;
  std::function<Vector(const Vector&)> laplacian;
};

/// f(x) = x.
SmoothTestFunction identity_test_function(int d);
/// f(x) = vech'(x xᵀ), rows in vech order without the (d, d) entry.
SmoothTestFunction vech_outer_test_function(int d);
/// f(x) = sin(x_1), scalar.
SmoothTestFunction sin_first_test_function(int d);

/// A f(x), length m.
Vector stein_operator_apply(const Params& p, const SmoothTestFunction& f, const Vector& x);

struct SteinMean {
  Vector mean;
  Vector std_error;
};

/// Sample mean and standard error of A f(X_i), componentwise.
SteinMean stein_operator_mean(const Params& p, const SmoothTestFunction& f,
                              const SampleMatrix& x);

}  // namespace stein
