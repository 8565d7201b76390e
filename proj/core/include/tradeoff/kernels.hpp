#pragma once

// Positive-definite kernels and the dual inner products
// (lambda, mu) = lambda^x mu^y K(x, y) they induce.

#include <cstddef>
#include <variant>

#include <nlohmann/json.hpp>

#include "tradeoff/basis.hpp"
#include "tradeoff/functionals.hpp"
#include "tradeoff/linalg.hpp"

namespace tradeoff {

// Whittle-Matern kernel whose native space is the Sobolev space H^m(R^d):
//   phi(r) = 2^(1-nu)/Gamma(nu) (r/c)^nu K_nu(r/c),  nu = m - d/2,
// normalized to phi(0) = 1.
//
// Supported functionals: PointEval, LaplacianEval and, for d = 1, DerivEval.
// A pair whose total derivative order is n needs nu > n/2, so
// Laplacian-Laplacian pairs need nu > 2.
class MaternSobolevKernel {
 public:
  MaternSobolevKernel(int m, int d, double c);

  int order() const noexcept { return m_; }
  int dimension() const noexcept { return d_; }
  double scale() const noexcept { return c_; }
  double nu() const noexcept { return nu_; }

  // phi(r) for r >= 0.
  double radial(double r) const;

  double apply(const Functional& lambda, const Functional& mu) const;

  bool operator==(const MaternSobolevKernel& o) const noexcept {
    return m_ == o.m_ && d_ == o.d_ && c_ == o.c_;
  }

 private:
  double univariate(int order_x, int order_y, double t) const;
  double laplacian_power(int count, double r) const;

  int m_;
  int d_;
  double c_;
  double nu_;
  double normalization_;
};

// K(x,y) = sum_{j<=K} T_j(x) T_j(y) / w_j on [-1, 1].
class ChebWeightKernel {
 public:
  ChebWeightKernel(WeightRule weights, std::size_t truncation);

  std::size_t truncation() const noexcept { return truncation_; }
  const Vector& weights() const noexcept { return w_; }
  const WeightRule& weight_rule() const noexcept { return rule_; }

  double apply(const Functional& lambda, const Functional& mu) const;

 private:
  WeightRule rule_;
  std::size_t truncation_;
  Vector w_;
};

using Kernel = std::variant<MaternSobolevKernel, ChebWeightKernel>;

double kernel_apply(const Kernel& kernel, const Functional& lambda, const Functional& mu);

struct DualGram {
  Matrix matrix;
  FunctionalSet functionals;
};

DualGram dual_gram(const Kernel& kernel, const FunctionalSet& lambdas);

// Rectangular block (lambda_i, mu_j).
Matrix cross_gram(const Kernel& kernel, const FunctionalSet& lambdas, const FunctionalSet& mus);

// (lambda_i, mu) for every i.
Vector cross_column(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu);

void to_json(nlohmann::json& j, const Kernel& kernel);
Kernel kernel_from_json(const nlohmann::json& j);

}  // namespace tradeoff
