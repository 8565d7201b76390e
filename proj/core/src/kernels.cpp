#include "tradeoff/kernels.hpp"

#include <cmath>
#include <sstream>

#include "tradeoff/bessel.hpp"
#include "tradeoff/detail/overloaded.hpp"
#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

using detail::overloaded;

struct Operator {
  int derivative_order = 0;  // DerivEval order, or 2 for a 1-D Laplacian
  int laplacians = 0;
  bool is_derivative = false;
  Point x;
};

Operator classify(const Functional& f, int d) {
  return std::visit(
      overloaded{
          [&](const PointEval& p) { return Operator{0, 0, false, p.x}; },
          [&](const LaplacianEval& l) { return Operator{2, 1, false, l.x}; },
          [&](const DerivEval& e) {
            if (d != 1) {
              throw Error(ErrorCode::UnsupportedPair, "derivative functionals need a 1-D kernel");
            }
            if (e.order > 2) {
              throw Error(ErrorCode::UnsupportedPair, "Matern kernel supports derivative order <= 2");
            }
            return Operator{e.order, 0, true, Point{e.x}};
          },
          [&](const CoeffEval&) -> Operator {
            throw Error(ErrorCode::UnsupportedPair, "coefficient functionals do not act on a Matern kernel");
          },
      },
      f.kind());
}

double distance(const Point& x, const Point& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

MaternSobolevKernel::MaternSobolevKernel(int m, int d, double c) : m_(m), d_(d), c_(c) {
  if (d != 1 && d != 2) {
    throw Error(ErrorCode::InvalidArgument, "Matern kernel dimension must be 1 or 2");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidArgument, "Matern kernel scale must be positive");
  }
  nu_ = static_cast<double>(m) - 0.5 * static_cast<double>(d);
  if (!(nu_ > 0.0)) {
    std::ostringstream os;
    os << "Matern order m = " << m << " must exceed d/2";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  normalization_ = 1.0 / bessel::h_at_zero(nu_);
}

double MaternSobolevKernel::radial(double r) const {
  return normalization_ * bessel::scaled_h(nu_, r / c_, 0);
}

double MaternSobolevKernel::univariate(int order_x, int order_y, double t) const {
  const int n = order_x + order_y;
  if (!(static_cast<double>(n) < 2.0 * nu_)) {
    std::ostringstream os;
    os << "derivative order " << n << " needs nu > " << n / 2.0 << ", kernel has nu = " << nu_;
    throw Error(ErrorCode::UnsupportedPair, os.str());
  }
  const double u = t / c_;
  const double s = std::abs(u);
  const double sign = u < 0.0 ? -1.0 : 1.0;
  // u^p h_alpha(|u|)
  auto term = [&](double alpha, int p) {
    const double value = bessel::scaled_h(alpha, s, p);
    return (p % 2 == 1) ? sign * value : value;
  };
  double value = 0.0;
  switch (n) {
    case 0: value = term(nu_, 0); break;
    case 1: value = -term(nu_ - 1, 1); break;
    case 2: value = -term(nu_ - 1, 0) + term(nu_ - 2, 2); break;
    case 3: value = 3.0 * term(nu_ - 2, 1) - term(nu_ - 3, 3); break;
    case 4: value = 3.0 * term(nu_ - 2, 0) - 6.0 * term(nu_ - 3, 2) + term(nu_ - 4, 4); break;
    default:
      throw Error(ErrorCode::UnsupportedPair, "total derivative order above 4");
  }
  // d/dy of a function of (x - y) flips the sign once per derivative.
  if (order_y % 2 == 1) value = -value;
  return normalization_ * value / std::pow(c_, n);
}

double MaternSobolevKernel::laplacian_power(int count, double r) const {
  if (!(static_cast<double>(count) < nu_)) {
    std::ostringstream os;
    os << count << " Laplacian(s) need nu > " << count << ", kernel has nu = " << nu_;
    throw Error(ErrorCode::UnsupportedPair, os.str());
  }
  const double s = r / c_;
  const double d = d_;
  double value = 0.0;
  switch (count) {
    case 0:
      value = bessel::scaled_h(nu_, s, 0);
      break;
    case 1:
      value = bessel::scaled_h(nu_ - 2, s, 2) - d * bessel::scaled_h(nu_ - 1, s, 0);
      break;
    case 2:
      value = bessel::scaled_h(nu_ - 4, s, 4) - (4.0 + 2.0 * d) * bessel::scaled_h(nu_ - 3, s, 2) +
              (2.0 * d + d * d) * bessel::scaled_h(nu_ - 2, s, 0);
      break;
    default:
      throw Error(ErrorCode::UnsupportedPair, "more than two Laplacians");
  }
  return normalization_ * value / std::pow(c_, 2 * count);
}

double MaternSobolevKernel::apply(const Functional& lambda, const Functional& mu) const {
  const Operator a = classify(lambda, d_);
  const Operator b = classify(mu, d_);
  if (a.x.size() != static_cast<std::size_t>(d_) || b.x.size() != static_cast<std::size_t>(d_)) {
    std::ostringstream os;
    os << "functional dimension does not match kernel dimension " << d_;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (d_ == 1) {
    return univariate(a.derivative_order, b.derivative_order, a.x[0] - b.x[0]);
  }
  return laplacian_power(a.laplacians + b.laplacians, distance(a.x, b.x));
}

ChebWeightKernel::ChebWeightKernel(WeightRule weights, std::size_t truncation)
    : rule_(std::move(weights)), truncation_(truncation), w_(rule_.head(truncation)) {}

double ChebWeightKernel::apply(const Functional& lambda, const Functional& mu) const {
  const Vector a = apply_to_basis(lambda, BasisKind::Chebyshev, truncation_);
  const Vector b = apply_to_basis(mu, BasisKind::Chebyshev, truncation_);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < w_.size(); ++j) {
    sum += a(j) * b(j) / w_(j);
  }
  return sum;
}

double kernel_apply(const Kernel& kernel, const Functional& lambda, const Functional& mu) {
  return std::visit([&](const auto& k) { return k.apply(lambda, mu); }, kernel);
}

DualGram dual_gram(const Kernel& kernel, const FunctionalSet& lambdas) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = kernel_apply(kernel, lambdas[static_cast<std::size_t>(i)], lambdas[static_cast<std::size_t>(j)]);
      g(j, i) = g(i, j);
    }
  }
  return {std::move(g), lambdas};
}

Matrix cross_gram(const Kernel& kernel, const FunctionalSet& lambdas, const FunctionalSet& mus) {
  Matrix g(static_cast<Eigen::Index>(lambdas.size()), static_cast<Eigen::Index>(mus.size()));
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = 0; j < mus.size(); ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kernel_apply(kernel, lambdas[i], mus[j]);
    }
  }
  return g;
}

Vector cross_column(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu) {
  Vector v(static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = kernel_apply(kernel, lambdas[i], mu);
  }
  return v;
}

void to_json(nlohmann::json& j, const Kernel& kernel) {
  std::visit(overloaded{
                 [&](const MaternSobolevKernel& k) {
                   j = {{"family", "matern"}, {"m", k.order()}, {"d", k.dimension()}, {"c", k.scale()}};
                 },
                 [&](const ChebWeightKernel& k) {
                   j = {{"family", "chebweight"}, {"weights", k.weight_rule().text()}, {"K", k.truncation()}};
                 },
             },
             kernel);
}

Kernel kernel_from_json(const nlohmann::json& j) {
  try {
    const std::string family = j.at("family").get<std::string>();
    if (family == "matern") {
      return MaternSobolevKernel(j.at("m").get<int>(), j.value("d", 2), j.value("c", 1.0));
    }
    if (family == "chebweight") {
      return ChebWeightKernel(WeightRule::parse(j.value("weights", std::string("(j+1)^2"))),
                              j.value("K", std::size_t{121}));
    }
    throw Error(ErrorCode::ConfigError, "unknown kernel family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad kernel JSON: ") + e.what());
  }
}

}  // namespace tradeoff
