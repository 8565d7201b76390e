#include "tradeoff/basis.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Chebyshev: return "chebyshev";
    case BasisKind::Monomial: return "monomial";
    case BasisKind::AbstractOrthonormal: return "orthonormal";
  }
  return "unknown";
}

BasisKind basis_from_string(const std::string& name) {
  if (name == "chebyshev") return BasisKind::Chebyshev;
  if (name == "monomial") return BasisKind::Monomial;
  if (name == "orthonormal") return BasisKind::AbstractOrthonormal;
  throw Error(ErrorCode::ConfigError, "unknown basis '" + name + "'");
}

WeightRule WeightRule::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::BadWeights, "constant weight must be positive and finite");
  }
  std::ostringstream os;
  os << value;
  return WeightRule(os.str(), [value](std::size_t) { return value; });
}

WeightRule WeightRule::power_of_index(double exponent) {
  std::ostringstream os;
  os << "(j+1)^" << exponent;
  return WeightRule(os.str(), [exponent](std::size_t j) {
    return std::pow(static_cast<double>(j) + 1.0, exponent);
  });
}

WeightRule WeightRule::factorial_sq_over(double base) {
  if (!(base > 0.0)) {
    throw Error(ErrorCode::BadWeights, "factorial_sq_over base must be positive");
  }
  std::ostringstream os;
  os << "factorial_sq_over:" << base << "^j";
  const double log_base = std::log(base);
  return WeightRule(os.str(), [log_base](std::size_t j) {
    const double jd = static_cast<double>(j);
    return std::exp(2.0 * std::lgamma(jd + 1.0) - jd * log_base);
  });
}

WeightRule WeightRule::custom(std::string label, std::function<double(std::size_t)> rule) {
  return WeightRule(std::move(label), std::move(rule));
}

WeightRule WeightRule::parse(const std::string& text) {
  static const std::regex kConstant(R"(\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*)");
  static const std::regex kPower(R"(\s*\(\s*j\s*\+\s*1\s*\)\s*\^\s*([-+]?[0-9]*\.?[0-9]+)\s*)");
  static const std::regex kFactorial(R"(\s*factorial_sq_over\s*:\s*([0-9]*\.?[0-9]+)\s*\^\s*j\s*)");
  std::smatch m;
  if (std::regex_match(text, m, kConstant)) {
    return constant(std::stod(m[1].str()));
  }
  if (std::regex_match(text, m, kPower)) {
    return power_of_index(std::stod(m[1].str()));
  }
  if (std::regex_match(text, m, kFactorial)) {
    return factorial_sq_over(std::stod(m[1].str()));
  }
  throw Error(ErrorCode::ConfigError,
              "cannot parse weight rule '" + text +
                  "'; expected '<c>', '(j+1)^<p>' or 'factorial_sq_over:<b>^j'");
}

Vector WeightRule::head(std::size_t n) const {
  Vector w(static_cast<Eigen::Index>(n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    const double value = rule_(j);
    if (!(value > 0.0)) {
      std::ostringstream os;
      os << "weight w_" << j << " = " << value << " is not positive";
      throw Error(ErrorCode::BadWeights, os.str());
    }
    w(static_cast<Eigen::Index>(j)) = value;
  }
  return w;
}

double ExpansionFunction::norm_squared() const {
  if (coefficients.size() == 0) {
    return 0.0;
  }
  const Vector w = weights.head(static_cast<std::size_t>(coefficients.size() - 1));
  return (coefficients.array().square() * w.array()).sum();
}

double ExpansionFunction::norm() const { return std::sqrt(norm_squared()); }

ExpansionFunction operator+(const ExpansionFunction& f, const ExpansionFunction& g) {
  if (f.basis != g.basis) {
    throw Error(ErrorCode::InvalidArgument, "cannot add expansions in different bases");
  }
  const auto n = std::max(f.coefficients.size(), g.coefficients.size());
  Vector sum = Vector::Zero(n);
  sum.head(f.coefficients.size()) += f.coefficients;
  sum.head(g.coefficients.size()) += g.coefficients;
  return {f.basis, std::move(sum), f.weights};
}

ExpansionFunction operator*(double alpha, const ExpansionFunction& f) {
  return {f.basis, alpha * f.coefficients, f.weights};
}

namespace basis {

Vector chebyshev_values(double x, std::size_t n) {
  Vector t(static_cast<Eigen::Index>(n + 1));
  t(0) = 1.0;
  if (n >= 1) t(1) = x;
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(n); ++k) {
    t(k + 1) = 2.0 * x * t(k) - t(k - 1);
  }
  return t;
}

Matrix derivative_table(BasisKind kind, double x, std::size_t n, std::size_t max_order) {
  const auto cols = static_cast<Eigen::Index>(n + 1);
  const auto rows = static_cast<Eigen::Index>(max_order + 1);
  Matrix d = Matrix::Zero(rows, cols);
  switch (kind) {
    case BasisKind::Chebyshev: {
      // T_{k+1}^{(m)} = 2x T_k^{(m)} + 2m T_k^{(m-1)} - T_{k-1}^{(m)}
      d.row(0) = chebyshev_values(x, n).transpose();
      for (Eigen::Index m = 1; m < rows; ++m) {
        if (cols > 1 && m == 1) d(m, 1) = 1.0;
        for (Eigen::Index k = 1; k + 1 < cols; ++k) {
          d(m, k + 1) = 2.0 * x * d(m, k) + 2.0 * static_cast<double>(m) * d(m - 1, k) - d(m, k - 1);
        }
      }
      break;
    }
    case BasisKind::Monomial: {
      for (Eigen::Index m = 0; m < rows; ++m) {
        for (Eigen::Index k = m; k < cols; ++k) {
          double falling = 1.0;
          for (Eigen::Index i = 0; i < m; ++i) falling *= static_cast<double>(k - i);
          d(m, k) = falling * std::pow(x, static_cast<double>(k - m));
        }
      }
      break;
    }
    case BasisKind::AbstractOrthonormal:
      throw Error(ErrorCode::UnsupportedPair, "orthonormal basis has no pointwise values");
  }
  return d;
}

}  // namespace basis
}  // namespace tradeoff
