#pragma once

// Univariate expansion bases and weighted coefficient norms.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tradeoff/linalg.hpp"

namespace tradeoff {

enum class BasisKind {
  Chebyshev,           // T_k on [-1, 1]
  Monomial,            // x^k
  AbstractOrthonormal  // only coefficient functionals are meaningful
};

std::string to_string(BasisKind kind);
BasisKind basis_from_string(const std::string& name);

// Positive weights w_j for the coefficient norm |f|^2 = sum_j a_j^2 w_j.
//
// Grammar accepted by parse():
//   "<number>"               constant weight, e.g. "1"
//   "(j+1)^<p>"              w_j = (j+1)^p, e.g. "(j+1)^2"
//   "factorial_sq_over:<b>^j" w_j = (j!)^2 / b^j, e.g. "factorial_sq_over:2^j"
class WeightRule {
 public:
  static WeightRule parse(const std::string& text);
  static WeightRule constant(double value);
  static WeightRule power_of_index(double exponent);
  static WeightRule factorial_sq_over(double base);
  static WeightRule custom(std::string label, std::function<double(std::size_t)> rule);

  double operator()(std::size_t j) const { return rule_(j); }

  // w_0..w_n
  Vector head(std::size_t n) const;

  const std::string& text() const noexcept { return text_; }

 private:
  WeightRule(std::string text, std::function<double(std::size_t)> rule)
      : text_(std::move(text)), rule_(std::move(rule)) {}

  std::string text_;
  std::function<double(std::size_t)> rule_;
};

// f = sum_k a_k b_k with an implicit zero tail.
struct ExpansionFunction {
  BasisKind basis = BasisKind::Chebyshev;
  Vector coefficients;
  WeightRule weights = WeightRule::constant(1.0);

  double norm_squared() const;
  double norm() const;
};

ExpansionFunction operator+(const ExpansionFunction& f, const ExpansionFunction& g);
ExpansionFunction operator*(double alpha, const ExpansionFunction& f);

namespace basis {

// values(m, k) = d^m/dx^m b_k(x) for m = 0..max_order, k = 0..n.
Matrix derivative_table(BasisKind kind, double x, std::size_t n, std::size_t max_order);

// Chebyshev T_0..T_n at x by the three-term recurrence.
Vector chebyshev_values(double x, std::size_t n);

}  // namespace basis
}  // namespace tradeoff
