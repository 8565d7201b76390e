#include "tradeoff/expansion_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

std::string to_string(StabilitySource s) {
  switch (s) {
    case StabilitySource::Lagrangian: return "lagrangian";
    case StabilitySource::Bump: return "bump";
    case StabilitySource::PseudoLagrangian: return "pseudo_lagrangian";
  }
  return "unknown";
}

std::vector<double> equidistant_nodes(std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two equidistant nodes");
  std::vector<double> x(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    x[j] = -1.0 + 2.0 * static_cast<double>(j) / n;
  }
  return x;
}

std::vector<double> chebyshev_extrema(std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two Chebyshev extrema");
  std::vector<double> x(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    // ascending: k = 0 gives -1
    x[k] = -std::cos(static_cast<double>(k) * std::numbers::pi / n);
  }
  // exact symmetric endpoints and midpoint
  x.front() = -1.0;
  x.back() = 1.0;
  if (count % 2 == 1) x[count / 2] = 0.0;
  return x;
}

std::vector<double> chebyshev_zeros(std::size_t count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one Chebyshev zero");
  std::vector<double> x(count);
  const double n = static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    x[k] = -std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * n));
  }
  if (count % 2 == 1) x[count / 2] = 0.0;
  return x;
}

namespace {

void require_distinct(std::span<const double> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "node set is empty");
  std::vector<double> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::DuplicateNodes, "interpolation nodes must be distinct");
  }
}

void require_in_cell(double xk, double xk1, double x) {
  if (!(xk < x && x < xk1)) {
    std::ostringstream os;
    os << "x = " << x << " is not inside the open cell (" << xk << ", " << xk1 << ")";
    throw Error(ErrorCode::OutOfCell, os.str());
  }
}

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

double poly_power(std::span<const double> nodes, double x) {
  require_distinct(nodes);
  if (std::abs(x) > 1.0) throw Error(ErrorCode::InvalidArgument, "evaluation point outside [-1, 1]");
  double product = 1.0;
  for (double xj : nodes) product *= std::abs(x - xj);
  return product / factorial(nodes.size());
}

double poly_lagrangian_seminorm(std::span<const double> nodes, double x) {
  require_distinct(nodes);
  double product = 1.0;
  for (double xj : nodes) {
    if (x == xj) {
      throw Error(ErrorCode::NodeCoincidence, "evaluation point coincides with a node");
    }
    product *= std::abs(x - xj);
  }
  return factorial(nodes.size()) / product;
}

double ctd_power(double xk, double xk1, double x) {
  require_in_cell(xk, xk1, x);
  return 2.0 * (xk1 - x) * (x - xk) / (xk1 - xk);
}

double ctd_lagrangian_norm(double xk, double xk1, double x) {
  require_in_cell(xk, xk1, x);
  return 1.0 / std::min(xk1 - x, x - xk);
}

double taylor_power(const WeightRule& rho, std::size_t k) {
  const double r = rho(k);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::BadWeights, "Taylor weight rho_k must be positive and finite");
  }
  return std::sqrt(r) / factorial(k);
}

double taylor_monomial_norm(const WeightRule& rho, std::size_t k) {
  const double r = rho(k);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::BadWeights, "Taylor weight rho_k must be positive and finite");
  }
  return factorial(k) / std::sqrt(r);
}

SeriesProbe taylor_convergence_probe(const WeightRule& rho, std::size_t horizon) {
  SeriesProbe probe;
  double previous = 0.0;
  for (std::size_t j = 0; j <= horizon; ++j) {
    const double r = rho(j);
    if (!(r > 0.0)) throw Error(ErrorCode::BadWeights, "Taylor weights must be positive");
    if (!std::isfinite(r)) break;
    const double term = std::exp(std::log(r) - 2.0 * std::lgamma(static_cast<double>(j) + 1.0));
    if (j > 0 && previous > 0.0) probe.tail_ratio = term / previous;
    probe.partial_sum += term;
    previous = term;
  }
  probe.converges = std::isfinite(probe.partial_sum) &&
                    (probe.tail_ratio < 1.0 - 1e-3 || previous <= 1e-16 * probe.partial_sum);
  return probe;
}

OrthoResult ortho_power_and_bump(std::span<const double> mu_tail) {
  double power_sq = 0.0;
  for (double m : mu_tail) power_sq += m * m;
  if (!(power_sq > 0.0)) {
    throw Error(ErrorCode::DegenerateEvaluation, "all tail coefficients vanish, no bump function exists");
  }
  OrthoResult out;
  out.power = std::sqrt(power_sq);
  out.bump_coefficients.resize(static_cast<Eigen::Index>(mu_tail.size()));
  for (std::size_t i = 0; i < mu_tail.size(); ++i) {
    out.bump_coefficients(static_cast<Eigen::Index>(i)) = mu_tail[i] / power_sq;
  }
  out.bump_norm = out.bump_coefficients.norm();
  return out;
}

namespace {

struct ChebSystem {
  Matrix full;  // (n+1) x (K+1), lambda_j(T_k)
  Eigen::PartialPivLU<Matrix> lu;
};

ChebSystem factor_cheb_system(const FunctionalSet& lambdas, std::size_t n, std::size_t order) {
  if (lambdas.size() != n + 1) {
    std::ostringstream os;
    os << "need n+1 = " << n + 1 << " functionals, got " << lambdas.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  ChebSystem sys;
  sys.full = vandermonde(lambdas, BasisKind::Chebyshev, std::max(order, n));
  const auto m = static_cast<Eigen::Index>(n + 1);
  sys.lu.compute(sys.full.leftCols(m));
  const double rcond = sys.lu.rcond();
  if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << "Chebyshev-Vandermonde matrix is singular (rcond " << rcond << ")";
    throw Error(ErrorCode::SingularVandermonde, os.str());
  }
  return sys;
}

}  // namespace

std::vector<ExpansionFunction> cheb_lagrangians(const FunctionalSet& lambdas, const WeightRule& weights,
                                                std::size_t n) {
  const ChebSystem sys = factor_cheb_system(lambdas, n, n);
  const auto m = static_cast<Eigen::Index>(n + 1);
  const Matrix inverse = sys.lu.solve(Matrix::Identity(m, m));
  std::vector<ExpansionFunction> out;
  out.reserve(n + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.push_back({BasisKind::Chebyshev, inverse.col(i), weights});
  }
  return out;
}

namespace {

// mu(eps_k) for k = 0..K together with the system it came from.
Vector cheb_errors_under(const ChebSystem& sys, std::size_t n, std::size_t order, const Functional& mu) {
  const Vector mu_row = apply_to_basis(mu, BasisKind::Chebyshev, order);
  const auto m = static_cast<Eigen::Index>(n + 1);
  // mu(u_j) = (V^{-T} mu_head)_j
  const Vector mu_u = sys.lu.transpose().solve(mu_row.head(m));
  return mu_row - sys.full.transpose() * mu_u;
}

}  // namespace

double cheb_power_addone(const FunctionalSet& lambdas, const WeightRule& weights, std::size_t n,
                         std::size_t tail_order, const Functional& mu) {
  if (tail_order <= n) {
    throw Error(ErrorCode::InvalidArgument, "tail order K must exceed the trial order n");
  }
  const ChebSystem sys = factor_cheb_system(lambdas, n, tail_order);
  const Vector eps = cheb_errors_under(sys, n, tail_order, mu);
  const Vector w = weights.head(tail_order);
  double sum = 0.0;
  for (auto k = static_cast<Eigen::Index>(n + 1); k <= static_cast<Eigen::Index>(tail_order); ++k) {
    sum += eps(k) * eps(k) / w(k);
  }
  return std::sqrt(sum);
}

ExpansionFunction cheb_addone_lagrangian(const FunctionalSet& lambdas, const WeightRule& weights,
                                         std::size_t n, const Functional& mu) {
  if (lambdas.contains(mu)) {
    throw Error(ErrorCode::ExcludedCase, "mu belongs to the data functionals (1 <= 0*inf)");
  }
  const ChebSystem sys = factor_cheb_system(lambdas, n, n + 1);
  const Vector eps = cheb_errors_under(sys, n, n + 1, mu);
  const auto m = static_cast<Eigen::Index>(n + 1);
  const double mu_eps = eps(m);
  const double scale = apply_to_basis(mu, BasisKind::Chebyshev, n + 1).cwiseAbs().maxCoeff();
  if (!(std::abs(mu_eps) > 1e-14 * std::max(scale, 1.0))) {
    throw Error(ErrorCode::ExcludedCase, "mu(eps_{n+1}) vanishes, no add-one-in Lagrangian");
  }
  // eps_{n+1} = T_{n+1} - sum_k T_k (V^{-1} lambda(T_{n+1}))_k
  Vector coeffs = Vector::Zero(m + 1);
  coeffs(m) = 1.0;
  coeffs.head(m) = -sys.lu.solve(Vector(sys.full.col(m)));
  return {BasisKind::Chebyshev, coeffs / mu_eps, weights};
}

ExpansionFunction cheb_bump_min(const FunctionalSet& lambdas, const WeightRule& weights,
                                std::size_t tail_order, const Functional& mu) {
  if (lambdas.contains(mu)) {
    throw Error(ErrorCode::ExcludedCase, "mu belongs to the data functionals (1 <= 0*inf)");
  }
  const auto rows = static_cast<Eigen::Index>(lambdas.size() + 1);
  const auto cols = static_cast<Eigen::Index>(tail_order + 1);
  Matrix b(rows, cols);
  if (!lambdas.empty()) {
    b.topRows(rows - 1) = vandermonde(lambdas, BasisKind::Chebyshev, tail_order);
  }
  b.row(rows - 1) = apply_to_basis(mu, BasisKind::Chebyshev, tail_order).transpose();

  // min sum a_k^2 w_k  s.t.  B a = e  <=>  min |y|  s.t. (B W^{-1/2}) y = e, a = W^{-1/2} y
  const Vector inv_sqrt_w = weights.head(tail_order).cwiseSqrt().cwiseInverse();
  const Matrix scaled = b * inv_sqrt_w.asDiagonal();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(scaled);
  if (cod.rank() < rows) {
    std::ostringstream os;
    os << "bump constraints have rank " << cod.rank() << " < " << rows;
    throw Error(ErrorCode::RankDeficientConstraints, os.str());
  }
  Vector e = Vector::Zero(rows);
  e(rows - 1) = 1.0;
  const Vector y = cod.solve(e);
  Vector a = inv_sqrt_w.cwiseProduct(y);
  const double residual = (b * a - e).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8)) {
    std::ostringstream os;
    os << "bump constraints violated by " << residual;
    throw Error(ErrorCode::RankDeficientConstraints, os.str());
  }
  return {BasisKind::Chebyshev, std::move(a), weights};
}

TradeoffReport cheb_tradeoff(const FunctionalSet& lambdas, const WeightRule& weights, std::size_t n,
                             std::size_t tail_order, const Functional& mu) {
  TradeoffReport report{mu};
  report.source = StabilitySource::Bump;
  report.power = cheb_power_addone(lambdas, weights, n, tail_order, mu);
  if (lambdas.contains(mu)) {
    report.excluded = true;
    return report;
  }
  report.stability_norm = cheb_bump_min(lambdas, weights, tail_order, mu).norm();
  report.product = report.power * report.stability_norm;
  return report;
}

double evaluate(const ExpansionFunction& f, double x) { return apply(Functional::point(x), f); }

}  // namespace tradeoff
