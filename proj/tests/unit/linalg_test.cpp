#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/linalg.hpp"

using namespace tradeoff;
using testing_support::random_matrix;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SolveSpd, Identity) {
  const Vector b = Vector::LinSpaced(3, 1.0, 3.0);
  EXPECT_TRUE(linalg::solve_spd(Matrix::Identity(3, 3), b).isApprox(b));
}

TEST(SolveSpd, Diagonal) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 4.0;
  const Matrix x = linalg::solve_spd(a, Vector{{2.0, 8.0}});
  EXPECT_DOUBLE_EQ(x(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(x(1, 0), 2.0);
}

TEST(SolveSpd, RandomResidual) {
  std::mt19937_64 rng(11);
  const Matrix m = random_matrix(rng, 5, 5);
  const Matrix a = m.transpose() * m + Matrix::Identity(5, 5);
  const Matrix b = random_matrix(rng, 5, 1);
  EXPECT_LE((a * linalg::solve_spd(a, b) - b).norm(), 1e-10);
}

TEST(SolveSpd, ResidualAtCondition1e10) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, 8, 8));
    const Matrix q = qr.householderQ();
    Vector d(8);
    for (int i = 0; i < 8; ++i) d(i) = std::pow(10.0, -10.0 * i / 7.0);
    const Matrix a = q * d.asDiagonal() * q.transpose();
    const Matrix b = random_matrix(rng, 8, 3);
    const Matrix x = linalg::solve_spd(0.5 * (a + a.transpose()), b);
    EXPECT_LE((a * x - b).norm(), 1e-9 * a.norm() * x.norm());
  }
}

TEST(SolveSpd, JitterRescuesSemidefinite) {
  const Matrix ones = Matrix::Ones(3, 3);
  const linalg::SpdFactorization f(ones);
  EXPECT_GT(f.jitter(), 0.0);
  EXPECT_LE(f.jitter(), 1e-6);
}

TEST(SolveSpd, Errors) {
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  EXPECT_EQ(code_of([&] { linalg::SpdFactorization f(indefinite); }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([&] { linalg::solve_spd(Matrix::Identity(2, 3), Matrix::Ones(2, 1)); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { linalg::solve_spd(Matrix::Identity(2, 2), Matrix::Ones(3, 1)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Pseudoinverse, DiagonalWithZero) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 2.0;
  const Matrix p = linalg::pseudoinverse(a);
  EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
  EXPECT_EQ(p(1, 1), 0.0);
  EXPECT_EQ(p(0, 1), 0.0);
}

TEST(Pseudoinverse, OrthogonalIsTranspose) {
  std::mt19937_64 rng(3);
  const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, 4, 4));
  const Matrix q = qr.householderQ();
  EXPECT_LE((linalg::pseudoinverse(q) - q.transpose()).norm(), 1e-12);
}

TEST(Pseudoinverse, MoorePenroseIdentities) {
  std::mt19937_64 rng(4);
  for (auto [r, c] : {std::pair{6, 4}, std::pair{4, 6}, std::pair{5, 5}}) {
    const Matrix a = random_matrix(rng, r, c);
    const Matrix p = linalg::pseudoinverse(a);
    EXPECT_LE((a * p * a - a).norm(), 1e-9 * a.norm());
    EXPECT_LE((p * a * p - p).norm(), 1e-8 * p.norm());
    EXPECT_LE(((a * p).transpose() - a * p).norm(), 1e-8 * (a * p).norm());
    EXPECT_LE(((p * a).transpose() - p * a).norm(), 1e-8 * (p * a).norm());
  }
}

TEST(Pseudoinverse, RankMatchesRetainedValues) {
  std::mt19937_64 rng(5);
  // rank 3 by construction
  const Matrix a = random_matrix(rng, 6, 3) * random_matrix(rng, 3, 5);
  const auto s = linalg::svd(a);
  const double tol = linalg::default_rtol(a);
  const Matrix p = linalg::pseudoinverse(a);
  EXPECT_EQ(linalg::numerical_rank(s.sigma, tol), 3);
  EXPECT_EQ(Eigen::FullPivLU<Matrix>(p).rank(), 3);
}

TEST(Pseudoinverse, Errors) {
  EXPECT_EQ(code_of([] { linalg::pseudoinverse(Matrix(0, 0)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { linalg::pseudoinverse(Matrix::Identity(2, 2), 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { linalg::pseudoinverse(Matrix::Identity(2, 2), 1.5); }), ErrorCode::InvalidArgument);
}

TEST(Svd, ReconstructionAndOrdering) {
  std::mt19937_64 rng(6);
  for (auto [r, c] : {std::pair{7, 3}, std::pair{3, 7}, std::pair{6, 6}}) {
    const Matrix a = random_matrix(rng, r, c);
    const auto s = linalg::svd(a);
    EXPECT_LE((a - s.u * s.sigma.asDiagonal() * s.v.transpose()).norm(), 1e-10 * a.norm());
    for (Eigen::Index k = 1; k < s.sigma.size(); ++k) EXPECT_LE(s.sigma(k), s.sigma(k - 1));
    EXPECT_GE(s.sigma.minCoeff(), 0.0);
  }
}

TEST(Svd, RejectsNonFinite) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_EQ(code_of([&] { linalg::svd(a); }), ErrorCode::InvalidArgument);
}

TEST(Linalg, DefaultRtol) {
  EXPECT_DOUBLE_EQ(linalg::default_rtol(Matrix::Zero(137, 121)), 137e-12);
}
