#pragma once

// Stein estimator for Fisher-Bingham (μ, A) with A(d-1, d-1) = 0.
//
// With test functions f1: S^{d-1} -> R^d and f2: S^{d-1} -> R^{q-1},
// q = d(d+1)/2, the empirical Stein identity is linear in (μ, vech'(A)):
//
//   E μ + M' vech'(A) = D,      L μ + G' vech'(A) = H,
//
// where M' and G' are M and G without their last column. The canonical pair
// f1(x) = x, f2(x) = vech'(xxᵀ) makes every statistic a linear function of
// the first four empirical moments.

#include <string>
#include <utility>
#include <vector>

#include "stein/models.hpp"
#include "stein/sample.hpp"

namespace stein {

/// (i, j), i >= j, in vech order; length q.
std::vector<std::pair<int, int>> vech_pairs(int d);

struct FbSteinStatistics {
  int d = 0;
  std::size_t n = 0;
  Matrix M;  // (q-1) x q
  Vector D;  // q-1
  Matrix E;  // (q-1) x d
  Matrix G;  // d x q
  Vector H;  // d
  Matrix L;  // d x d

  Matrix M_prime() const { return M.leftCols(M.cols() - 1); }
  Matrix G_prime() const { return G.leftCols(G.cols() - 1); }
};

/// Canonical test functions, from empirical moments.
FbSteinStatistics fb_statistics(const SampleMatrix& x);
FbSteinStatistics fb_statistics(const EmpiricalMoments& m);

/// Any test-function pair (f1.m == d, f2.m == q-1), from explicit per-point
/// Jacobians, Hessian rows, Kronecker products and the duplication matrix.
FbSteinStatistics fb_statistics_generic(const SampleMatrix& x, const SmoothTestFunction& f1,
                                        const SmoothTestFunction& f2);

/// Statistics of the concatenated sample (n-weighted average).
FbSteinStatistics combine(const FbSteinStatistics& a, const FbSteinStatistics& b);

inline constexpr double kIdentificationThreshold = 25.0;

struct FbEstimate {
  FisherBinghamParams params;
  double cond_M_prime = 0.0;
  double cond_schur = 0.0;
  double residual_norm = 0.0;  // of the linear system at the solution
  std::vector<std::string> warnings;
};

/// Solves the trimmed system via the Schur complement of M'. Throws
/// SingularSystem("M_prime" or "schur") above condition 1e12.
FbEstimate fb_stein_solve(const FbSteinStatistics& s);
FbEstimate fb_stein_fit(const SampleMatrix& x);

/// [mean A_θ f1(X); mean A_θ f2(X)] for the canonical pair.
Vector fb_stein_residual(const FisherBinghamParams& p, const SampleMatrix& x);

/// μ' = L⁻¹H from the f1 equations alone with A = 0, i.e. the vMF location
/// κμ; equals (d-1)(I - S)⁻¹X̄.
Vector fb_location_only_fit(const SampleMatrix& x);

}  // namespace stein
