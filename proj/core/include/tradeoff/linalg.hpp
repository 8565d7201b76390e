#pragma once

// Dense linear algebra used by every recovery model: SPD solves with jitter
// escalation, SVD and a tolerance-based pseudoinverse. Backed by Eigen.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>

namespace tradeoff {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

// Cholesky factorization of a symmetric matrix. Tries jitter 0, then
// 1e-12*trace/n escalating by x10 up to 1e-6*trace/n.
class SpdFactorization {
 public:
  explicit SpdFactorization(const Matrix& a);

  Matrix solve(const Matrix& b) const;
  Vector solve(const Vector& b) const;

  // Returns L^{-1} b, so that b^T A^{-1} b = |L^{-1} b|^2.
  Vector half_solve(const Vector& b) const;

  // Diagonal jitter added before the successful factorization.
  double jitter() const noexcept { return jitter_; }
  Eigen::Index size() const noexcept { return llt_.rows(); }

  // Factor of A + jitter()*I.
  const Eigen::LLT<Matrix>& llt() const noexcept { return llt_; }

 private:
  Eigen::LLT<Matrix> llt_;
  double jitter_ = 0.0;
};

struct SvdResult {
  Matrix u;       // rows x k
  Vector sigma;   // k = min(rows, cols), nonincreasing, >= 0
  Matrix v;       // cols x k
};

Matrix solve_spd(const Matrix& a, const Matrix& b);

SvdResult svd(const Matrix& a);

double default_rtol(const Matrix& a) noexcept;

// A^+ with singular values below rtol * sigma_max dropped.
// rtol defaults to default_rtol(a).
Matrix pseudoinverse(const Matrix& a, std::optional<double> rtol = std::nullopt);

// A^+ assembled from an existing decomposition.
Matrix pseudoinverse(const SvdResult& s, double rtol);

// Number of singular values >= rtol * sigma_max.
Eigen::Index numerical_rank(const Vector& sigma, double rtol) noexcept;

bool is_symmetric(const Matrix& a, double rel_tol = 1e-12) noexcept;

}  // namespace linalg
}  // namespace tradeoff
