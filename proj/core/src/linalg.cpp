#include "tradeoff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::DuplicateNodes: return "DuplicateNodes";
    case ErrorCode::NodeCoincidence: return "NodeCoincidence";
    case ErrorCode::OutOfCell: return "OutOfCell";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DegenerateEvaluation: return "DegenerateEvaluation";
    case ErrorCode::SingularVandermonde: return "SingularVandermonde";
    case ErrorCode::RankDeficientConstraints: return "RankDeficientConstraints";
    case ErrorCode::ExcludedCase: return "ExcludedCase";
    case ErrorCode::NoBumpExists: return "NoBumpExists";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace linalg {

namespace {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

}  // namespace

SpdFactorization::SpdFactorization(const Matrix& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "solve_spd needs a square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  require_finite(a, "SPD matrix");
  const auto n = a.rows();
  if (n == 0) {
    return;
  }
  const double scale = std::max(a.trace() / static_cast<double>(n), 0.0);

  llt_.compute(a);
  if (llt_.info() == Eigen::Success) {
    return;
  }
  for (double rel = 1e-12; rel <= 1e-6 * (1.0 + 1e-9); rel *= 10.0) {
    jitter_ = rel * scale;
    Matrix shifted = a;
    shifted.diagonal().array() += jitter_;
    llt_.compute(shifted);
    if (llt_.info() == Eigen::Success) {
      return;
    }
  }
  std::ostringstream os;
  os << "Cholesky failed for " << n << "x" << n << " matrix even with jitter " << jitter_;
  throw Error(ErrorCode::NotPositiveDefinite, os.str());
}

Matrix SpdFactorization::solve(const Matrix& b) const {
  if (b.rows() != llt_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side rows do not match the factorization");
  }
  if (llt_.rows() == 0) {
    return Matrix(0, b.cols());
  }
  return llt_.solve(b);
}

Vector SpdFactorization::solve(const Vector& b) const {
  if (b.size() != llt_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match the factorization");
  }
  if (llt_.rows() == 0) {
    return Vector(0);
  }
  return llt_.solve(b);
}

Vector SpdFactorization::half_solve(const Vector& b) const {
  if (b.size() != llt_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match the factorization");
  }
  if (llt_.rows() == 0) {
    return Vector(0);
  }
  return llt_.matrixL().solve(b);
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  return SpdFactorization(a).solve(b);
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "SVD input");
  if (a.size() == 0) {
    return {Matrix(a.rows(), 0), Vector(0), Matrix(a.cols(), 0)};
  }
  // One-sided Jacobi: slow for big matrices but accurate for the small
  // singular values that decide numerical rank.
  Eigen::JacobiSVD<Matrix> jacobi(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {jacobi.matrixU(), jacobi.singularValues(), jacobi.matrixV()};
}

double default_rtol(const Matrix& a) noexcept {
  return 1e-12 * static_cast<double>(std::max(a.rows(), a.cols()));
}

Eigen::Index numerical_rank(const Vector& sigma, double rtol) noexcept {
  if (sigma.size() == 0) {
    return 0;
  }
  const double cutoff = rtol * sigma(0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > 0.0 && sigma(k) >= cutoff) {
      ++rank;
    }
  }
  return rank;
}

Matrix pseudoinverse(const Matrix& a, std::optional<double> rtol) {
  if (a.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "pseudoinverse of an empty matrix");
  }
  const double tol = rtol.value_or(default_rtol(a));
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "pseudoinverse rtol must lie in (0,1)");
  }
  return pseudoinverse(svd(a), tol);
}

Matrix pseudoinverse(const SvdResult& s, double rtol) {
  const Eigen::Index rank = numerical_rank(s.sigma, rtol);
  // V_r diag(1/sigma_r) U_r^T
  const Vector inv = s.sigma.head(rank).cwiseInverse();
  return s.v.leftCols(rank) * inv.asDiagonal() * s.u.leftCols(rank).transpose();
}

bool is_symmetric(const Matrix& a, double rel_tol) noexcept {
  if (a.rows() != a.cols()) {
    return false;
  }
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

}  // namespace linalg
}  // namespace tradeoff
