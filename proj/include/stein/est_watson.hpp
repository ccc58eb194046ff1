#pragma once

// Watson W(μ, κ) estimators. The axis is an extreme eigenvector of the
// scatter matrix S; which one depends on the sign of κ, so each estimator is
// computed on both branches and a selection rule picks one:
//   (+): top eigenvector, eligible when κ̂ >= 0;
//   (-): bottom eigenvector, eligible when κ̂ <= 0.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stein/models.hpp"
#include "stein/sample.hpp"

namespace stein {

enum class Branch { plus, minus };
enum class WatsonEstimator { ST, MLa, ML };

std::string branch_name(Branch b);  // "+" / "-"
std::string watson_estimator_name(WatsonEstimator e);  // "st", "mla", "ml"
WatsonEstimator parse_watson_estimator(const std::string& name);

inline constexpr double kNearUniformKappa = 1e-6;

/// Top (+) or bottom (-) eigenvector of S, canonical sign.
Vector watson_axis(const SampleMatrix& x, Branch b);

/// V and J for f2(x) = vech'(xxᵀ) on both branches.
struct WatsonSteinStatistics {
  Vector V;
  Vector J_plus;
  Vector J_minus;
  Vector mu_plus;
  Vector mu_minus;
};

/// Closed forms: V_p = 2d S_ij - 2δ_ij and
/// J_p = 2[μ_i (Sμ)_j + μ_j (Sμ)_i - 2 mean(x_i x_j (μᵀx)²)].
WatsonSteinStatistics watson_statistics(const SampleMatrix& x);

/// V = mean[(d-1)∇f X + ∇²f (X⊗X) - Δf] for any test function.
Vector watson_V_generic(const SampleMatrix& x, const SmoothTestFunction& f);
/// J = 2 mean[∇f (I - XXᵀ) μ μᵀX].
Vector watson_J_generic(const SampleMatrix& x, const SmoothTestFunction& f, const Vector& mu);

/// JᵀV / JᵀJ; SingularSystem when JᵀJ <= 1e-14.
double watson_stein_kappa(const Vector& v, const Vector& j);
double watson_stein_kappa(const SampleMatrix& x, Branch b);

struct BranchCandidate {
  Vector mu;
  double kappa = 0.0;
  /// Lower is better: ‖Jκ - V‖ for ST, minus the log-likelihood for MLa/ML.
  double score = 0.0;
};

struct WatsonEstimate {
  Vector mu_hat;
  double kappa_hat = 0.0;
  Branch branch = Branch::plus;
  WatsonEstimator estimator = WatsonEstimator::ST;
  bool eligible_plus = false;
  bool eligible_minus = false;
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double score_plus = 0.0;
  double score_minus = 0.0;
  std::vector<std::string> warnings;
};

/// The selection rule. Neither eligible: NotEligible. One eligible: that
/// one. Both: lower score, exact ties to (+).
WatsonEstimate select_branch(const BranchCandidate& plus, const BranchCandidate& minus,
                             WatsonEstimator e);

WatsonEstimate watson_stein_fit(const SampleMatrix& x);

/// Bounds on the MLE for r = μᵀSμ (a = 1/2, c = d/2), returned as
/// (min, max) so the order also holds for girdle (κ < 0) data.
std::pair<double, double> watson_mla_bounds(double r, double a, double c);

WatsonEstimate watson_mla_fit(const SampleMatrix& x);

/// Root of (a/c) 1F1(a+1; c+1; κ)/1F1(a; c; κ) = r with a = 1/2, c = d/2.
/// Zero when r == 1/d.
double watson_mle_from_r(int d, double r);
double watson_mle_kappa(const SampleMatrix& x, Branch b);
/// Both branch MLEs; the one with the higher likelihood.
WatsonEstimate watson_mle_fit(const SampleMatrix& x);

WatsonEstimate fit_watson(const SampleMatrix& x, WatsonEstimator e);

/// Σ_i log W(x_i; μ, κ).
double watson_log_likelihood(const SampleMatrix& x, const Vector& mu, double kappa);

}  // namespace stein
