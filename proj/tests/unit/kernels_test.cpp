#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tradeoff/bessel.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/kernels.hpp"

using namespace tradeoff;
using testing_support::rel_err;

namespace {

struct BesselRef {
  double nu, x, value;
};

// 20-digit references from an arbitrary-precision evaluation.
constexpr BesselRef kBessel[] = {
    {0, 1e-08, 18.536612259610778388},   {0, 0.001, 7.0236888005623813228},
    {0, 0.1, 2.4270690247020165578},     {0, 1.0, 0.42102443824070833334},
    {0, 5.0, 0.0036910983340425942747},  {0, 30.0, 2.1324774964630563712e-14},
    {1, 1e-08, 99999999.999999902725},   {1, 0.001, 999.99623815608555346},
    {1, 0.1, 9.8538447808706055744},     {1, 1.0, 0.60190723019723457474},
    {1, 5.0, 0.0040446134454521642084},  {1, 30.0, 2.1677320018915494249e-14},
    {0.5, 1e-08, 12533.141247823589276}, {0.5, 0.001, 39.593659513116643201},
    {0.5, 0.1, 3.5861668387972600251},   {0.5, 1.0, 0.46106850444789455844},
    {0.5, 5.0, 0.0037766133746428825595}, {0.5, 30.0, 2.1412375659560113993e-14},
    {1.5, 1e-08, 1253314137315.5001492}, {1.5, 0.001, 39633.25317262975902},
    {1.5, 0.1, 39.447835226769858285},   {1.5, 1.0, 0.92213700889578911688},
    {1.5, 5.0, 0.0045319360495714590714}, {1.5, 30.0, 2.2126121514878784459e-14},
    {2, 1e-08, 19999999999999998.663},   {2, 0.001, 1999999.5000009716277},
    {2, 0.1, 199.50396464211411711},     {2, 1.0, 1.6248388986351774828},
    {2, 5.0, 0.0053089437122234599581},  {2, 30.0, 2.2769929632558263328e-14},
    {4, 1e-08, 4.7999999999999995583e+33}, {4, 0.001, 47999996000000.246003},
    {4, 0.1, 479600.24979256817831},     {4, 1.0, 44.232415847062844519},
    {4, 5.0, 0.015259065810500578568},   {4, 30.0, 2.77125917598762492e-14},
    {4.5, 1e-08, 1.3159798441812751305e+38}, {4.5, 0.001, 4161493365236778.7162},
    {4.5, 0.1, 4158522.6524361406217},   {4.5, 1.0, 122.64422218313995254},
    {4.5, 5.0, 0.021934570479925861906}, {4.5, 30.0, 2.9706499023838241852e-14},
};

Point shifted(Point p, std::size_t axis, double h) {
  p[axis] += h;
  return p;
}

// 5-point Laplacian in the second argument, Richardson-extrapolated.
double fd_laplacian(const MaternSobolevKernel& k, const Functional& lambda, const Point& y) {
  auto lap = [&](double h) {
    double sum = -4.0 * k.apply(lambda, Functional::point(y));
    for (std::size_t axis : {0u, 1u}) {
      sum += k.apply(lambda, Functional::point(shifted(y, axis, h)));
      sum += k.apply(lambda, Functional::point(shifted(y, axis, -h)));
    }
    return sum / (h * h);
  };
  const double h = 1e-2;
  return (4.0 * lap(h / 2) - lap(h)) / 3.0;
}

}  // namespace

TEST(Bessel, MatchesReferenceValues) {
  for (const auto& r : kBessel) {
    EXPECT_LE(rel_err(bessel::k(r.nu, r.x), r.value), 1e-10) << "nu=" << r.nu << " x=" << r.x;
  }
}

TEST(Bessel, NegativeOrderAndLimits) {
  EXPECT_DOUBLE_EQ(bessel::h(-1.5, 0.7), std::pow(0.7, -1.5) * bessel::k(1.5, 0.7));
  for (double nu : {0.5, 1.0, 2.5, 4.0}) {
    EXPECT_LE(rel_err(bessel::h(nu, 1e-7), bessel::h_at_zero(nu)), 1e-6);
    EXPECT_DOUBLE_EQ(bessel::h_at_zero(nu), std::pow(2.0, nu - 1) * std::tgamma(nu));
  }
  EXPECT_EQ(bessel::k(2.0, 800.0), 0.0);
  EXPECT_THROW(bessel::k(0.3, 1.0), Error);
  EXPECT_THROW(bessel::scaled_h(-1.0, 0.0, 0), Error);
}

TEST(Bessel, RadialDerivativeIdentity) {
  // g_nu(r) = h_nu(r) / (2^(nu-1) Gamma(nu)),  g_nu'(r) = -r h_{nu-1}(r) / (2^(nu-1) Gamma(nu))
  for (double nu : {1.5, 2.0, 3.5, 4.0, 4.5}) {
    const double norm = bessel::h_at_zero(nu);
    for (double r = 0.1; r <= 5.0; r += 0.35) {
      const double step = 1e-4 * r;
      const double fd = (bessel::h(nu, r + step) - bessel::h(nu, r - step)) / (2 * step) / norm;
      const double exact = -r * bessel::h(nu - 1, r) / norm;
      EXPECT_LE(rel_err(exact, fd), 1e-7) << nu << " " << r;
    }
  }
}

TEST(Matern, NormalizedDiagonal) {
  for (auto [m, d] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{4, 2}}) {
    const MaternSobolevKernel k(m, d, 1.0);
    const Point p(static_cast<std::size_t>(d), 0.3);
    EXPECT_DOUBLE_EQ(k.apply(Functional::point(p), Functional::point(p)), 1.0);
    EXPECT_DOUBLE_EQ(k.radial(0.0), 1.0);
  }
}

TEST(Matern, ConstructionChecks) {
  EXPECT_THROW(MaternSobolevKernel(5, 3, 1.0), Error);
  EXPECT_THROW(MaternSobolevKernel(5, 2, 0.0), Error);
  EXPECT_THROW(MaternSobolevKernel(1, 2, 1.0), Error);
  EXPECT_DOUBLE_EQ(MaternSobolevKernel(5, 2, 1.0).nu(), 4.0);
}

TEST(Matern, PointLaplacianMatchesFiniteDifferences) {
  const MaternSobolevKernel k(5, 2, 1.0);
  const Point p{0.2, 0.3};
  const Point q{0.2 + 0.3, 0.3 + 0.4};  // |p - q| = 0.5
  const double exact = k.apply(Functional::point(p), Functional::laplacian(q));
  EXPECT_LE(rel_err(exact, fd_laplacian(k, Functional::point(p), q)), 1e-6);
}

TEST(Matern, LaplacianLaplacianMatchesFiniteDifferences) {
  const MaternSobolevKernel k(5, 2, 1.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Point p{u(rng), u(rng)};
    const Point q{u(rng) + 0.1, u(rng)};
    const double exact = k.apply(Functional::laplacian(p), Functional::laplacian(q));
    EXPECT_LE(rel_err(exact, fd_laplacian(k, Functional::laplacian(p), q)), 1e-5);
  }
}

TEST(Matern, CoincidentLaplacians) {
  // Delta Delta phi at r = 0 from the limit branch against a point just off it.
  const MaternSobolevKernel k(5, 2, 1.0);
  const double at0 = k.apply(Functional::laplacian({0.5, 0.5}), Functional::laplacian({0.5, 0.5}));
  const double near = k.apply(Functional::laplacian({0.5, 0.5}), Functional::laplacian({0.5, 0.5 + 1e-5}));
  EXPECT_GT(at0, 0.0);
  EXPECT_LE(rel_err(near, at0), 1e-4);
  const double pl = k.apply(Functional::point({0.5, 0.5}), Functional::laplacian({0.5, 0.5}));
  EXPECT_LT(pl, 0.0);
}

TEST(Matern, UnivariateDerivativesMatchDifferences) {
  const MaternSobolevKernel k(5, 1, 0.7);
  const double x = 0.1;
  const double y = 0.55;
  const double h = 1e-4;
  for (int a : {0, 1}) {
    for (int b : {0, 1, 2}) {
      const double exact = k.apply(Functional::deriv(x, a + 1), Functional::deriv(y, b));
      const double fd = (k.apply(Functional::deriv(x + h, a), Functional::deriv(y, b)) -
                         k.apply(Functional::deriv(x - h, a), Functional::deriv(y, b))) /
                        (2 * h);
      EXPECT_LE(std::abs(exact - fd), 1e-6 * std::max(1.0, std::abs(exact))) << a << b;
    }
  }
  // laplacian is the second derivative in 1-D
  EXPECT_DOUBLE_EQ(k.apply(Functional::laplacian({x}), Functional::point(y)),
                   k.apply(Functional::deriv(x, 2), Functional::point(y)));
}

TEST(Matern, SymmetricEvaluation) {
  const MaternSobolevKernel k(5, 2, 1.3);
  const Functional a = Functional::laplacian({0.1, 0.9});
  const Functional b = Functional::point({0.4, 0.2});
  EXPECT_EQ(k.apply(a, b), k.apply(b, a));
}

TEST(Matern, UnsupportedPairs) {
  const MaternSobolevKernel low(3, 2, 1.0);  // nu = 2
  EXPECT_NO_THROW(low.apply(Functional::point({0.0, 0.0}), Functional::laplacian({0.5, 0.0})));
  EXPECT_THROW(low.apply(Functional::laplacian({0.0, 0.0}), Functional::laplacian({0.5, 0.0})), Error);
  const MaternSobolevKernel k(5, 2, 1.0);
  EXPECT_THROW(k.apply(Functional::deriv(0.0, 1), Functional::point({0.0, 0.0})), Error);
  EXPECT_THROW(k.apply(Functional::coeff(0), Functional::point({0.0, 0.0})), Error);
  EXPECT_THROW(k.apply(Functional::point(0.3), Functional::point({0.0, 0.0})), Error);
}

TEST(ChebWeight, TwoTermSum) {
  const ChebWeightKernel k(WeightRule::constant(1.0), 1);
  EXPECT_DOUBLE_EQ(k.apply(Functional::point(0.0), Functional::point(1.0)), 1.0);
  const ChebWeightKernel w(WeightRule::parse("(j+1)^2"), 3);
  EXPECT_DOUBLE_EQ(w.apply(Functional::coeff(2), Functional::coeff(2)), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(w.apply(Functional::coeff(5), Functional::point(0.2)), 0.0);
}

TEST(DualGram, Basics) {
  const Kernel k = MaternSobolevKernel(5, 2, 1.0);
  const auto single = dual_gram(k, point_set(std::vector<Point>{{0.1, 0.1}}));
  EXPECT_EQ(single.matrix.rows(), 1);
  EXPECT_DOUBLE_EQ(single.matrix(0, 0), 1.0);

  const auto g = dual_gram(k, point_set(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_DOUBLE_EQ(g.matrix(0, 1), g.matrix(0, 2));
  EXPECT_TRUE(linalg::is_symmetric(g.matrix, 0.0));
}

TEST(DualGram, RandomPointsArePositiveDefinite) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Kernel k = MaternSobolevKernel(5, 2, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dual_gram(k, point_set(std::vector<Point>{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}}));
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(g.matrix).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(DualGram, SeparatedPointsNeedNoJitter) {
  const Kernel k = MaternSobolevKernel(5, 2, 1.0);
  const auto g = dual_gram(k, point_set(std::vector<Point>{{0.0, 0.0}, {0.01, 0.0}, {0.0, 0.01}}));
  EXPECT_EQ(linalg::SpdFactorization(g.matrix).jitter(), 0.0);
}

TEST(DualGram, MixedGramIsSemidefinite) {
  const Kernel k = MaternSobolevKernel(5, 2, 1.0);
  FunctionalSet set;
  for (double x : {0.25, 0.5, 0.75}) {
    set.push_back(Functional::laplacian({x, 0.5}));
    set.push_back(Functional::point({x, 0.0}));
  }
  const auto g = dual_gram(k, set);
  const double smallest = Eigen::SelfAdjointEigenSolver<Matrix>(g.matrix).eigenvalues().minCoeff();
  EXPECT_GE(smallest, -1e-10 * g.matrix.trace());
}

TEST(Kernel, JsonRoundTrip) {
  for (const Kernel& k : {Kernel(MaternSobolevKernel(5, 2, 1.5)),
                          Kernel(ChebWeightKernel(WeightRule::parse("(j+1)^2"), 121))}) {
    nlohmann::json j;
    to_json(j, k);
    const Kernel back = kernel_from_json(j);
    EXPECT_EQ(back.index(), k.index());
    nlohmann::json again;
    to_json(again, back);
    EXPECT_EQ(j, again);
  }
  EXPECT_THROW(kernel_from_json({{"family", "gauss"}}), Error);
}
