#pragma once

// Non-interpolatory recoveries: Kansa collocation with a pseudoinverse
// coefficient map, pseudo-Lagrangians and the SVD / Tikhonov model.

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "tradeoff/functionals.hpp"
#include "tradeoff/kernels.hpp"
#include "tradeoff/linalg.hpp"

namespace tradeoff {

// Poisson problem on the unit square: Laplacian data inside, Dirichlet
// data on the boundary, kernel translates K(z_k, .) as trial functions.
struct PoissonSetup {
  std::vector<Point> interior;
  std::vector<Point> boundary;
  std::vector<Point> trial;
  MaternSobolevKernel kernel{5, 2, 1.0};

  // interior functionals first, then boundary
  FunctionalSet data_functionals() const;
  void validate() const;
};

struct PoissonLayout {
  std::size_t interior_per_side = 11;  // tensor grid (i/(n+1), j/(n+1)), i,j = 1..n
  std::size_t boundary_count = 16;     // equal arc-length spacing from (0,0)
  bool boundary_offset = false;        // shift by half a spacing, skipping corners
  std::optional<std::size_t> trial_per_side;  // default: same grid as interior
};

PoissonSetup make_poisson_setup(const PoissonLayout& layout, const MaternSobolevKernel& kernel);

// Point at arc length t along the boundary of [0,1]^2, counter-clockwise from (0,0).
Point perimeter_point(double t);
std::vector<Point> perimeter_points(std::size_t count, bool offset = false);
std::vector<Point> interior_grid(std::size_t per_side);

void to_json(nlohmann::json& j, const PoissonSetup& setup);
PoissonSetup poisson_setup_from_json(const nlohmann::json& j);

class UnsymmetricRecovery {
 public:
  // General recovery from any data functionals, trial centers z_k and an
  // N x M coefficient map.
  UnsymmetricRecovery(Kernel kernel, FunctionalSet lambdas, std::vector<Point> trial, Matrix coefficient_map,
                      double rtol = 0.0);

  const Kernel& kernel() const noexcept { return kernel_; }
  const FunctionalSet& functionals() const noexcept { return lambdas_; }
  const std::vector<Point>& trial_points() const noexcept { return trial_; }
  const Matrix& coefficient_map() const noexcept { return c_; }
  const Matrix& data_gram() const noexcept { return gram_; }
  double rtol() const noexcept { return rtol_; }

  // mu(v_j) for the trial functions v_j = K(z_j, .).
  Vector trial_values(const Functional& mu) const;

  // b = mu(a), a_k the pseudo-Lagrangians.
  Vector pseudo_lagrange_values(const Functional& mu) const;

 private:
  Kernel kernel_;
  FunctionalSet lambdas_;
  std::vector<Point> trial_;
  Matrix c_;
  Matrix gram_;  // (lambda_i, lambda_j)
  double rtol_;
};

// M x N matrix with entries lambda_j(v_k) = lambda_j^x K(z_k, x).
Matrix generalized_vandermonde(const Kernel& kernel, const FunctionalSet& lambdas,
                               const std::vector<Point>& trial);

struct KansaBuild {
  UnsymmetricRecovery recovery;
  Matrix vandermonde;
  Vector singular_values;
  Eigen::Index rank = 0;
};

// C = pseudoinverse(A_{Lambda,V}); rtol defaults to 1e-12 * max(M, N).
KansaBuild build_kansa(const PoissonSetup& setup, std::optional<double> rtol = std::nullopt);

// K_mm - 2 b^T K_{Lambda,mu} + b^T K_{Lambda,Lambda} b, clamped at 0.
double kansa_power_squared(const UnsymmetricRecovery& recovery, const Functional& mu);

// diag(C^T K_{T,T} C)
Vector pseudo_lagrangian_norms(const UnsymmetricRecovery& recovery);

struct SvdRecovery {
  Vector sigma;        // length M, nonincreasing, padded with zeros
  double tau = 0.0;    // Tikhonov parameter

  static SvdRecovery from_singular_values(const Vector& sigma, std::size_t m, double tau = 0.0);
  bool is_zero(Eigen::Index k) const;  // sigma_k <= 1e-12 sigma_max
};

double svd_power_squared(const SvdRecovery& s, const Vector& mu);

struct SvdBump {
  Vector f;
  double norm = 0.0;
};

SvdBump svd_bump_min(const SvdRecovery& s, const Vector& mu);

}  // namespace tradeoff
