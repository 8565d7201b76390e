#include "tradeoff/unsymmetric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

Point perimeter_point(double t) {
  t = std::fmod(t, 4.0);
  if (t < 0.0) t += 4.0;
  if (t < 1.0) return {t, 0.0};
  if (t < 2.0) return {1.0, t - 1.0};
  if (t < 3.0) return {3.0 - t, 1.0};
  return {0.0, 4.0 - t};
}

std::vector<Point> perimeter_points(std::size_t count, bool offset) {
  std::vector<Point> pts;
  pts.reserve(count);
  const double spacing = 4.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back(perimeter_point((static_cast<double>(i) + (offset ? 0.5 : 0.0)) * spacing));
  }
  return pts;
}

std::vector<Point> interior_grid(std::size_t per_side) {
  std::vector<Point> pts;
  pts.reserve(per_side * per_side);
  const double h = 1.0 / static_cast<double>(per_side + 1);
  for (std::size_t i = 1; i <= per_side; ++i) {
    for (std::size_t j = 1; j <= per_side; ++j) {
      pts.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h});
    }
  }
  return pts;
}

FunctionalSet PoissonSetup::data_functionals() const {
  FunctionalSet set;
  for (std::size_t i = 0; i < interior.size(); ++i) set.push_back(Functional::laplacian(interior[i]), "interior");
  for (std::size_t i = 0; i < boundary.size(); ++i) set.push_back(Functional::point(boundary[i]), "boundary");
  return set;
}

void PoissonSetup::validate() const {
  auto on_square = [](const Point& p) { return p.size() == 2; };
  for (const auto& p : interior) {
    if (!on_square(p) || !(p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "interior points must lie strictly inside the unit square");
    }
  }
  for (const auto& p : boundary) {
    const bool inside = on_square(p) && p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
    const bool on_edge = inside && (p[0] == 0.0 || p[0] == 1.0 || p[1] == 0.0 || p[1] == 1.0);
    if (!on_edge) {
      throw Error(ErrorCode::InvalidArgument, "boundary points must lie on the boundary of the unit square");
    }
  }
  for (const auto& p : trial) {
    if (!on_square(p)) throw Error(ErrorCode::InvalidArgument, "trial points must be 2-D");
  }
  if (interior.size() + boundary.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "Poisson setup has no data functionals");
  }
  if (kernel.dimension() != 2) {
    throw Error(ErrorCode::InvalidArgument, "Poisson setup needs a 2-D kernel");
  }
}

PoissonSetup make_poisson_setup(const PoissonLayout& layout, const MaternSobolevKernel& kernel) {
  PoissonSetup setup{interior_grid(layout.interior_per_side),
                     perimeter_points(layout.boundary_count, layout.boundary_offset),
                     interior_grid(layout.trial_per_side.value_or(layout.interior_per_side)), kernel};
  setup.validate();
  return setup;
}

void to_json(nlohmann::json& j, const PoissonSetup& setup) {
  nlohmann::json kernel;
  to_json(kernel, Kernel(setup.kernel));
  j = {{"interior", setup.interior}, {"boundary", setup.boundary}, {"trial", setup.trial}, {"kernel", kernel}};
}

PoissonSetup poisson_setup_from_json(const nlohmann::json& j) {
  try {
    const Kernel kernel = kernel_from_json(j.at("kernel"));
    const auto* matern = std::get_if<MaternSobolevKernel>(&kernel);
    if (!matern) throw Error(ErrorCode::ConfigError, "Poisson setup needs a Matern kernel");
    PoissonSetup setup{j.at("interior").get<std::vector<Point>>(), j.at("boundary").get<std::vector<Point>>(),
                       j.at("trial").get<std::vector<Point>>(), *matern};
    setup.validate();
    return setup;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad Poisson setup JSON: ") + e.what());
  }
}

UnsymmetricRecovery::UnsymmetricRecovery(Kernel kernel, FunctionalSet lambdas, std::vector<Point> trial,
                                         Matrix coefficient_map, double rtol)
    : kernel_(std::move(kernel)),
      lambdas_(std::move(lambdas)),
      trial_(std::move(trial)),
      c_(std::move(coefficient_map)),
      rtol_(rtol) {
  if (lambdas_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "unsymmetric recovery needs data functionals");
  }
  if (static_cast<std::size_t>(c_.rows()) != trial_.size() ||
      static_cast<std::size_t>(c_.cols()) != lambdas_.size()) {
    std::ostringstream os;
    os << "coefficient map must be " << trial_.size() << "x" << lambdas_.size() << ", got " << c_.rows() << "x"
       << c_.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  gram_ = dual_gram(kernel_, lambdas_).matrix;
}

Vector UnsymmetricRecovery::trial_values(const Functional& mu) const {
  Vector v(static_cast<Eigen::Index>(trial_.size()));
  for (std::size_t j = 0; j < trial_.size(); ++j) {
    v(static_cast<Eigen::Index>(j)) = kernel_apply(kernel_, mu, Functional::point(trial_[j]));
  }
  return v;
}

Vector UnsymmetricRecovery::pseudo_lagrange_values(const Functional& mu) const {
  if (trial_.empty()) return Vector::Zero(static_cast<Eigen::Index>(lambdas_.size()));
  return c_.transpose() * trial_values(mu);
}

Matrix generalized_vandermonde(const Kernel& kernel, const FunctionalSet& lambdas,
                               const std::vector<Point>& trial) {
  Matrix a(static_cast<Eigen::Index>(lambdas.size()), static_cast<Eigen::Index>(trial.size()));
  for (std::size_t k = 0; k < trial.size(); ++k) {
    const Functional center = Functional::point(trial[k]);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = kernel_apply(kernel, lambdas[j], center);
    }
  }
  return a;
}

KansaBuild build_kansa(const PoissonSetup& setup, std::optional<double> rtol) {
  setup.validate();
  if (setup.trial.empty()) throw Error(ErrorCode::InvalidArgument, "Kansa collocation needs trial points");
  const Kernel kernel = setup.kernel;
  FunctionalSet lambdas = setup.data_functionals();
  Matrix a = generalized_vandermonde(kernel, lambdas, setup.trial);
  const double tol = rtol.value_or(linalg::default_rtol(a));
  const linalg::SvdResult s = linalg::svd(a);
  Matrix c = linalg::pseudoinverse(s, tol);
  const Eigen::Index rank = linalg::numerical_rank(s.sigma, tol);
  return {UnsymmetricRecovery(kernel, std::move(lambdas), setup.trial, std::move(c), tol), std::move(a), s.sigma,
          rank};
}

double kansa_power_squared(const UnsymmetricRecovery& recovery, const Functional& mu) {
  const double kmm = kernel_apply(recovery.kernel(), mu, mu);
  const Vector b = recovery.pseudo_lagrange_values(mu);
  const Vector k = cross_column(recovery.kernel(), recovery.functionals(), mu);
  const double value = kmm - 2.0 * b.dot(k) + b.dot(recovery.data_gram() * b);
  return std::max(value, 0.0);
}

Vector pseudo_lagrangian_norms(const UnsymmetricRecovery& recovery) {
  const auto& c = recovery.coefficient_map();
  if (c.rows() == 0) return Vector::Zero(c.cols());
  const FunctionalSet centers = point_set(recovery.trial_points());
  const Matrix ktt = dual_gram(recovery.kernel(), centers).matrix;
  const Matrix kc = ktt * c;
  Vector norms(c.cols());
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    norms(k) = std::max(c.col(k).dot(kc.col(k)), 0.0);
  }
  return norms;
}

SvdRecovery SvdRecovery::from_singular_values(const Vector& sigma, std::size_t m, double tau) {
  if (static_cast<std::size_t>(sigma.size()) > m) {
    throw Error(ErrorCode::DimensionMismatch, "more singular values than data functionals");
  }
  if (!(tau >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Tikhonov parameter must be >= 0");
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (!(sigma(k) >= 0.0) || (k > 0 && sigma(k) > sigma(k - 1))) {
      throw Error(ErrorCode::InvalidArgument, "singular values must be nonnegative and nonincreasing");
    }
  }
  SvdRecovery s;
  s.sigma = Vector::Zero(static_cast<Eigen::Index>(m));
  s.sigma.head(sigma.size()) = sigma;
  s.tau = tau;
  return s;
}

bool SvdRecovery::is_zero(Eigen::Index k) const {
  const double sigma_max = sigma.size() ? sigma(0) : 0.0;
  return sigma(k) <= 1e-12 * sigma_max;
}

double svd_power_squared(const SvdRecovery& s, const Vector& mu) {
  if (mu.size() != s.sigma.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mu length must equal the number of data functionals");
  }
  double sum = 0.0;
  if (s.tau == 0.0) {
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      if (s.is_zero(k)) sum += mu(k) * mu(k);
    }
    return sum;
  }
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double ratio = s.tau / (s.sigma(k) + s.tau);
    sum += mu(k) * mu(k) * ratio * ratio;
  }
  return sum;
}

SvdBump svd_bump_min(const SvdRecovery& s, const Vector& mu) {
  if (mu.size() != s.sigma.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mu length must equal the number of data functionals");
  }
  double null_sum = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (s.is_zero(k)) null_sum += mu(k) * mu(k);
  }
  if (!(null_sum > 0.0)) {
    throw Error(ErrorCode::NoBumpExists, "mu has no component on zero singular values (1 <= 0*inf)");
  }
  SvdBump bump{Vector::Zero(mu.size())};
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (s.is_zero(k)) bump.f(k) = mu(k) / null_sum;
  }
  bump.norm = bump.f.norm();
  return bump;
}

}  // namespace tradeoff
