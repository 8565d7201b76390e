#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/kernel_recovery.hpp"
#include "tradeoff/unsymmetric.hpp"

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

const MaternSobolevKernel kMatern{5, 2, 1.0};

// Small Poisson layout that keeps the Vandermonde matrix well conditioned.
PoissonSetup small_setup() {
  PoissonLayout layout;
  layout.interior_per_side = 3;
  layout.boundary_count = 8;
  PoissonSetup s = make_poisson_setup(layout, MaternSobolevKernel(4, 2, 0.3));
  return s;
}

}  // namespace

TEST(Layout, PerimeterAndGrid) {
  const auto pts = perimeter_points(16);
  ASSERT_EQ(pts.size(), 16u);
  for (const Point& corner : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}) {
    EXPECT_NE(std::find(pts.begin(), pts.end(), corner), pts.end());
  }
  EXPECT_EQ(pts[1], (Point{0.25, 0.0}));
  EXPECT_EQ(perimeter_point(5.5), (Point{1.0, 0.5}));
  const auto shifted = perimeter_points(4, true);
  EXPECT_EQ(shifted[0], (Point{0.5, 0.0}));
  const auto grid = interior_grid(11);
  ASSERT_EQ(grid.size(), 121u);
  EXPECT_NEAR(grid[0][0], 1.0 / 12, 1e-15);
  EXPECT_NEAR(grid.back()[1], 11.0 / 12, 1e-15);
}

TEST(Layout, DefaultSetupBuilds) {
  const PoissonSetup s = make_poisson_setup(PoissonLayout{}, kMatern);
  EXPECT_EQ(s.interior.size(), 121u);
  EXPECT_EQ(s.boundary.size(), 16u);
  EXPECT_EQ(s.trial.size(), 121u);
  const FunctionalSet data = s.data_functionals();
  ASSERT_EQ(data.size(), 137u);
  EXPECT_EQ(data[0].kind_name(), "laplacian");
  EXPECT_EQ(data.label(0), "interior");
  EXPECT_EQ(data[121].kind_name(), "point");
  EXPECT_EQ(data.label(136), "boundary");
  const KansaBuild b = build_kansa(s);
  EXPECT_EQ(b.vandermonde.rows(), 137);
  EXPECT_EQ(b.vandermonde.cols(), 121);
  EXPECT_GT(b.rank, 0);
  EXPECT_LE(b.rank, 121);
  EXPECT_DOUBLE_EQ(b.recovery.rtol(), 137e-12);
}

TEST(Layout, Validation) {
  PoissonSetup s = small_setup();
  s.interior.push_back({0.0, 0.5});
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidArgument);
  s = small_setup();
  s.boundary.push_back({0.5, 0.5});
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidArgument);
  s = small_setup();
  s.kernel = MaternSobolevKernel(5, 1, 1.0);
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidArgument);
}

TEST(Layout, JsonRoundTrip) {
  const PoissonSetup s = small_setup();
  nlohmann::json j;
  to_json(j, s);
  const PoissonSetup back = poisson_setup_from_json(j);
  EXPECT_EQ(back.interior, s.interior);
  EXPECT_EQ(back.boundary, s.boundary);
  EXPECT_EQ(back.trial, s.trial);
  EXPECT_EQ(back.kernel, s.kernel);
  EXPECT_EQ(code_of([] { poisson_setup_from_json({{"interior", 3}}); }), ErrorCode::ConfigError);
}

TEST(Kansa, PseudoinverseIsReflexive) {
  const KansaBuild b = build_kansa(small_setup());
  const Matrix& c = b.recovery.coefficient_map();
  EXPECT_LE((c * b.vandermonde * c - c).norm(), 1e-7 * c.norm());
}

TEST(Kansa, SquareCaseIsInterpolatory) {
  std::mt19937_64 rng(61);
  const Kernel k = kMatern;
  FunctionalSet lambdas;
  std::vector<Point> trial;
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int i = 0; i < 8; ++i) {
    const Point p{u(rng), u(rng)};
    lambdas.push_back(i % 2 ? Functional::laplacian(p) : Functional::point(p));
    trial.push_back({u(rng), u(rng)});
  }
  const Matrix a = generalized_vandermonde(k, lambdas, trial);
  const UnsymmetricRecovery r(k, lambdas, trial, a.inverse());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const Vector b = r.pseudo_lagrange_values(lambdas[j]);
    EXPECT_LE((b - Vector::Unit(8, static_cast<Eigen::Index>(j))).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(kansa_power_squared(r, lambdas[j]), 1e-7 * kernel_apply(k, lambdas[j], lambdas[j]));
  }
}

TEST(Kansa, TrialEqualsDataReducesToSymmetric) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Kernel k = MaternSobolevKernel(4, 2, 0.5);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({u(rng), u(rng)});
  const FunctionalSet lambdas = point_set(pts);
  const Matrix a = generalized_vandermonde(k, lambdas, pts);
  const UnsymmetricRecovery r(k, lambdas, pts, linalg::pseudoinverse(a, 1e-14));
  const PowerEvaluator sym(k, lambdas);
  for (int j = 0; j < 20; ++j) {
    const Functional mu = Functional::point({u(rng), u(rng)});
    EXPECT_NEAR(kansa_power_squared(r, mu), sym.evaluate(mu).power_squared, 1e-6);
  }
  const Vector norms = pseudo_lagrangian_norms(r);
  const auto loo = leave_one_out_report(k, lambdas);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double lagr = loo[i].stability_norm * loo[i].stability_norm;
    EXPECT_NEAR(norms(static_cast<Eigen::Index>(i)) / lagr, 1.0, 1e-6);
  }
}

TEST(Kansa, EmptyAndZeroMaps) {
  const FunctionalSet lambdas = point_set(std::vector<Point>{{0.2, 0.2}, {0.7, 0.4}});
  const UnsymmetricRecovery none(kMatern, lambdas, {}, Matrix(0, 2));
  const Functional mu = Functional::laplacian({0.5, 0.5});
  EXPECT_DOUBLE_EQ(kansa_power_squared(none, mu), kernel_apply(kMatern, mu, mu));
  EXPECT_EQ(pseudo_lagrangian_norms(none), Vector::Zero(2));

  const UnsymmetricRecovery zero(kMatern, lambdas, {{0.1, 0.1}, {0.5, 0.9}, {0.3, 0.3}}, Matrix::Zero(3, 2));
  EXPECT_EQ(pseudo_lagrangian_norms(zero), Vector::Zero(2));
  EXPECT_DOUBLE_EQ(kansa_power_squared(zero, mu), kernel_apply(kMatern, mu, mu));

  EXPECT_EQ(code_of([&] { UnsymmetricRecovery(kMatern, lambdas, {{0.1, 0.1}}, Matrix::Zero(2, 2)); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { UnsymmetricRecovery(kMatern, FunctionalSet{}, {}, Matrix(0, 0)); }),
            ErrorCode::InvalidArgument);
}

TEST(Kansa, NeverBeatsSymmetricRecovery) {
  std::mt19937_64 rng(63);
  const PoissonSetup s = small_setup();
  const FunctionalSet lambdas = s.data_functionals();
  const PowerEvaluator sym(s.kernel, lambdas);
  const auto m = static_cast<Eigen::Index>(lambdas.size());
  const auto n = static_cast<Eigen::Index>(s.trial.size());
  std::vector<Matrix> maps{build_kansa(s).recovery.coefficient_map()};
  for (int i = 0; i < 5; ++i) maps.push_back(0.1 * random_matrix(rng, n, m));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Matrix& c : maps) {
    const UnsymmetricRecovery r(s.kernel, lambdas, s.trial, c);
    for (int j = 0; j < 20; ++j) {
      const Point x{u(rng), u(rng)};
      for (const Functional& mu : {Functional::point(x), Functional::laplacian(x)}) {
        const double kmm = kernel_apply(s.kernel, mu, mu);
        EXPECT_GE(kansa_power_squared(r, mu), sym.evaluate(mu).power_squared - 1e-8 * kmm);
      }
    }
  }
}

TEST(Kansa, PseudoLagrangianNormsMatchDirectFormula) {
  const KansaBuild b = build_kansa(small_setup());
  const UnsymmetricRecovery& r = b.recovery;
  const Matrix ktt = dual_gram(r.kernel(), point_set(r.trial_points())).matrix;
  const Matrix full = r.coefficient_map().transpose() * ktt * r.coefficient_map();
  const Vector norms = pseudo_lagrangian_norms(r);
  for (Eigen::Index k = 0; k < norms.size(); ++k) {
    EXPECT_NEAR(norms(k), std::max(full(k, k), 0.0), 1e-10 * full.diagonal().cwiseAbs().maxCoeff());
    EXPECT_GE(norms(k), 0.0);
  }
}

TEST(Svd, Examples) {
  const Vector mu{{3.0, 4.0}};
  const SvdRecovery a = SvdRecovery::from_singular_values(Vector{{1.0}}, 2);
  EXPECT_DOUBLE_EQ(svd_power_squared(a, mu), 16.0);
  const SvdBump fa = svd_bump_min(a, mu);
  EXPECT_EQ(fa.f, (Vector{{0.0, 0.25}}));
  EXPECT_DOUBLE_EQ(fa.norm, 0.25);
  EXPECT_DOUBLE_EQ(svd_power_squared(a, mu) * fa.norm * fa.norm, 1.0);

  const SvdRecovery t = SvdRecovery::from_singular_values(Vector{{1.0, 0.0}}, 2, 1.0);
  EXPECT_DOUBLE_EQ(svd_power_squared(t, mu), 18.25);

  const SvdRecovery z = SvdRecovery::from_singular_values(Vector{{0.0, 0.0}}, 2);
  const SvdBump fz = svd_bump_min(z, mu);
  EXPECT_NEAR(fz.f(0), 0.12, 1e-15);
  EXPECT_NEAR(fz.f(1), 0.16, 1e-15);
  EXPECT_NEAR(fz.norm, 0.2, 1e-15);
  EXPECT_NEAR(svd_power_squared(z, mu) * fz.norm * fz.norm, 1.0, 1e-15);

  const SvdRecovery full = SvdRecovery::from_singular_values(Vector{{1.0, 1.0}}, 2);
  EXPECT_EQ(svd_power_squared(full, mu), 0.0);
  EXPECT_EQ(code_of([&] { svd_bump_min(full, mu); }), ErrorCode::NoBumpExists);
}

TEST(Svd, Validation) {
  EXPECT_EQ(code_of([] { SvdRecovery::from_singular_values(Vector{{1.0, 2.0}}, 2); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { SvdRecovery::from_singular_values(Vector{{1.0}}, 2, -1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { SvdRecovery::from_singular_values(Vector{{1.0, 0.5, 0.1}}, 2); }),
            ErrorCode::DimensionMismatch);
  const SvdRecovery s = SvdRecovery::from_singular_values(Vector{{1.0, 1e-13}}, 2);
  EXPECT_TRUE(s.is_zero(1));
  EXPECT_EQ(code_of([&] { svd_power_squared(s, Vector{{1.0}}); }), ErrorCode::DimensionMismatch);
}

TEST(Svd, TikhonovMonotoneAndTradeoff) {
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = dim(rng);
    const int n = std::uniform_int_distribution<int>(0, m)(rng);
    Vector sigma(n);
    for (auto& v : sigma) v = u(rng) < 0.2 ? 0.0 : u(rng) * 10.0;
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    const Vector mu = random_matrix(rng, m, 1);
    double previous = -1.0;
    for (double tau : {0.0, 1e-6, 1e-4, 1e-2, 0.1, 1.0, 10.0, 100.0}) {
      const double p2 = svd_power_squared(SvdRecovery::from_singular_values(sigma, static_cast<std::size_t>(m), tau), mu);
      EXPECT_GE(p2, previous);
      previous = p2;
    }
    const SvdRecovery s = SvdRecovery::from_singular_values(sigma, static_cast<std::size_t>(m));
    bool has_null = false;
    for (Eigen::Index k = 0; k < m; ++k) has_null = has_null || s.is_zero(k);
    if (!has_null) continue;
    const SvdBump f = svd_bump_min(s, mu);
    EXPECT_NEAR(svd_power_squared(s, mu) * f.norm * f.norm, 1.0, 1e-12);
    // any other bump: same null-space projection plus extra mass elsewhere
    Vector g = f.f;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (s.is_zero(k)) g(k) += 0.1 * u(rng) * (k % 2 ? 1.0 : -1.0);
    }
    double on_null = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (s.is_zero(k)) on_null += mu(k) * g(k);
    }
    if (std::abs(on_null) < 1e-3) continue;
    g /= on_null;
    EXPECT_GE(svd_power_squared(s, mu) * g.squaredNorm(), 1.0 - 1e-12);
  }
}
