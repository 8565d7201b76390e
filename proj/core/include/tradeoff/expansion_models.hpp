#pragma once

// Recoveries in spaces defined by weighted coefficient norms or classical
// seminorms: polynomial interpolation, connect-the-dots, Taylor data,
// orthogonal series and weighted Chebyshev expansions.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tradeoff/basis.hpp"
#include "tradeoff/functionals.hpp"
#include "tradeoff/linalg.hpp"

namespace tradeoff {

enum class StabilitySource { Lagrangian, Bump, PseudoLagrangian };

std::string to_string(StabilitySource s);

// Error measure and stability measure for one evaluation functional.
struct TradeoffReport {
  Functional mu;
  double power = 0.0;
  double stability_norm = 0.0;
  StabilitySource source = StabilitySource::Lagrangian;
  double product = 0.0;
  bool excluded = false;  // mu reproduced by the data, no bump exists
  bool clamped = false;   // negative squared power from roundoff set to 0
};

// --- node families on [-1, 1], ascending ---
std::vector<double> equidistant_nodes(std::size_t count);
std::vector<double> chebyshev_extrema(std::size_t count);  // cos(k pi / (count-1))
std::vector<double> chebyshev_zeros(std::size_t count);    // cos((2k+1) pi / (2 count))

// --- polynomial interpolation, seminorm |u^(n+1)|_inf ---
double poly_power(std::span<const double> nodes, double x);
double poly_lagrangian_seminorm(std::span<const double> nodes, double x);

// --- connect-the-dots on one cell, sup-norm of the first derivative ---
double ctd_power(double xk, double xk1, double x);
double ctd_lagrangian_norm(double xk, double xk1, double x);

// --- Taylor data lambda_j(f) = f^(j)(0)/j!, |f|^2 = sum lambda_j(f)^2 (j!)^2 / rho_j ---
double taylor_power(const WeightRule& rho, std::size_t k);
double taylor_monomial_norm(const WeightRule& rho, std::size_t k);

struct SeriesProbe {
  double partial_sum = 0.0;  // sum_{j<=horizon} rho_j / (j!)^2
  double tail_ratio = 0.0;   // last term ratio
  bool converges = false;
};

// Finite check of sum_j rho_j/(j!)^2 < infinity; can only warn.
SeriesProbe taylor_convergence_probe(const WeightRule& rho, std::size_t horizon = 200);

// --- orthonormal series, data = first n+1 coefficients ---
struct OrthoResult {
  double power = 0.0;
  Vector bump_coefficients;  // indexed like the tail, j = n+1..J
  double bump_norm = 0.0;
};

// mu_tail[i] = mu(u_{n+1+i}).
OrthoResult ortho_power_and_bump(std::span<const double> mu_tail);

// --- weighted Chebyshev expansions ---

// Lagrangians u_i of the n+1 functionals in span{T_0..T_n}.
std::vector<ExpansionFunction> cheb_lagrangians(const FunctionalSet& lambdas, const WeightRule& weights,
                                                std::size_t n);

// Add-one-in power sqrt(sum_{k=n+1}^{K} mu(eps_k)^2 / w_k) of degree-n
// interpolation on |lambdas| = n+1 functionals.
double cheb_power_addone(const FunctionalSet& lambdas, const WeightRule& weights, std::size_t n,
                         std::size_t tail_order, const Functional& mu);

// Add-one-in Lagrangian u_{mu,Lambda} = eps_{n+1} / mu(eps_{n+1}) in
// span{T_0..T_{n+1}}.
ExpansionFunction cheb_addone_lagrangian(const FunctionalSet& lambdas, const WeightRule& weights,
                                         std::size_t n, const Functional& mu);

// Norm-minimal f in span{T_0..T_K} with lambda(f) = 0 and mu(f) = 1.
ExpansionFunction cheb_bump_min(const FunctionalSet& lambdas, const WeightRule& weights,
                                std::size_t tail_order, const Functional& mu);

// Power of degree-n interpolation at mu paired with the minimal bump norm.
TradeoffReport cheb_tradeoff(const FunctionalSet& lambdas, const WeightRule& weights, std::size_t n,
                             std::size_t tail_order, const Functional& mu);

// Pointwise values of a Chebyshev expansion.
double evaluate(const ExpansionFunction& f, double x);

}  // namespace tradeoff
