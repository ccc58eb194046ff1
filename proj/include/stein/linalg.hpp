#pragma once

// Dense matrix helpers the estimators are written in. Matrices and vectors
// are Eigen types; this module adds the vectorization operators, the
// duplication and commutation matrices, a Jacobi symmetric eigensolver with a
// deterministic sign convention, and a conditioned linear solve.
//
// vec() stacks columns left to right. vech() stacks the lower triangle
// (diagonal included) column by column: (s11, s21, ..., sd1, s22, ..., sdd).

#include <Eigen/Dense>
#include <cstddef>
#include <string>

namespace stein {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kUnitTolerance = 1e-8;
inline constexpr double kMaxCondition = 1e12;

/// Number of free entries of a symmetric d x d matrix, d(d+1)/2.
constexpr std::size_t vech_size(std::size_t d) { return d * (d + 1) / 2; }

/// Position of (row, col), row >= col, in vech order.
std::size_t vech_position(std::size_t d, std::size_t row, std::size_t col);

Vector vec(const Matrix& m);
Vector vech(const Matrix& s);
/// vech(s) without its final component (the s_dd entry).
Vector vech_prime(const Matrix& s);
/// Symmetric matrix whose vech_prime is `v`, with the (d,d) entry set to 0.
Matrix vech_prime_inverse(const Vector& v, std::size_t d);
/// Symmetric matrix whose vech is `v`.
Matrix vech_inverse(const Vector& v, std::size_t d);

/// The 0/1 matrix D with D * vech(S) = vec(S) for symmetric S.
Matrix duplication_matrix(std::size_t d);
/// The permutation K with K * vec(M) = vec(M^T) for d x d M.
Matrix commutation_matrix(std::size_t d);
Matrix kron(const Matrix& a, const Matrix& b);

void require_symmetric(const Matrix& s, const char* what);

struct EigenDecomposition {
  Vector values;   // descending
  Matrix vectors;  // orthonormal columns, same order as values
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Each eigenvector
/// is signed so that its first component of largest magnitude is
/// nonnegative. Throws ConvergenceError after 100 sweeps.
EigenDecomposition sym_eigen(const Matrix& s);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Householder reflector R = I - 2 v v^T / v^T v, v = u - e1, so R u = e1.
/// R is symmetric and orthogonal; identity when u is already e1.
Matrix rotation_to_e1(const Vector& u);

struct LinearSolution {
  Vector x;
  double condition;  // 1-norm condition estimate of A
};

/// LU with partial pivoting. Throws SingularSystem (tagged with `name`) when
/// the condition estimate exceeds 1e12 or the factorization is singular.
LinearSolution solve_linear(const Matrix& a, const Vector& b, const std::string& name = "A");

/// Same as above for several right-hand sides at once.
struct LinearSolutionMulti {
  Matrix x;
  double condition;
};
LinearSolutionMulti solve_linear(const Matrix& a, const Matrix& b, const std::string& name);

/// 1-norm condition estimate of a square matrix (infinity when singular).
double condition_estimate(const Matrix& a);

}  // namespace stein
