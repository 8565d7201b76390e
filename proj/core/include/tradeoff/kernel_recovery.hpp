#pragma once

// Symmetric (optimal) kernel recovery: generalized interpolation, Power
// Functions and Lagrangian norms.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tradeoff/expansion_models.hpp"
#include "tradeoff/functionals.hpp"
#include "tradeoff/kernels.hpp"
#include "tradeoff/linalg.hpp"

namespace tradeoff {

class KernelInterpolant {
 public:
  KernelInterpolant(Kernel kernel, FunctionalSet lambdas, const Vector& data);

  // mu applied to the interpolant.
  double apply(const Functional& mu) const;

  const Vector& coefficients() const noexcept { return coefficients_; }
  const FunctionalSet& functionals() const noexcept { return lambdas_; }
  double jitter() const noexcept { return jitter_; }

 private:
  Kernel kernel_;
  FunctionalSet lambdas_;
  Vector coefficients_;
  double jitter_ = 0.0;
};

KernelInterpolant fit(const Kernel& kernel, const FunctionalSet& lambdas, const Vector& data);

struct PowerEvaluation {
  Functional mu;
  double power_squared = 0.0;   // Schur form, clamped at 0
  double bordered = 0.0;        // quadratic form with (1, -mu(u))
  double kernel_diagonal = 0.0; // (mu, mu)
  Vector lagrange_values;       // mu(u_j)
  bool clamped = false;
};

// Factorizes the Gram matrix once and evaluates Power Functions for many mu.
class PowerEvaluator {
 public:
  PowerEvaluator(Kernel kernel, FunctionalSet lambdas);

  // Uses a caller-supplied Gram matrix in place of the assembled one.
  PowerEvaluator(Kernel kernel, DualGram gram);

  PowerEvaluation evaluate(const Functional& mu) const;

  // ||u_{mu,Lambda}||^2 from the Gram matrix of Lambda + {mu}; throws
  // ExcludedCase when P^2 <= excluded_tolerance * (mu, mu).
  double lagrangian_norm_squared(const Functional& mu) const;

  // Coefficients c of u_{mu,Lambda} = sum_i c_i lambda_i^x K(x,.) + c_mu mu^x K(x,.)
  // in the extended set, mu last. Same exclusion rule.
  Vector lagrangian_coefficients(const Functional& mu) const;

  // Gram matrix of Lambda + {mu} built from the stored (possibly altered)
  // Gram matrix, without jitter.
  Matrix extended_gram(const Functional& mu) const;

  TradeoffReport report(const Functional& mu) const;

  const FunctionalSet& functionals() const noexcept { return gram_.functionals; }
  const Matrix& gram() const noexcept { return gram_.matrix; }
  const Kernel& kernel() const noexcept { return kernel_; }
  double jitter() const noexcept { return factor_.jitter(); }

  // Tolerance for the Schur vs. bordered cross-check, relative to (mu, mu).
  static constexpr double kAgreementTolerance = 1e-7;
  static constexpr double kExcludedTolerance = 1e-12;

 private:
  Kernel kernel_;
  DualGram gram_;
  linalg::SpdFactorization factor_;
};

PowerEvaluation power_squared(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu);

double lagrangian_norm_squared(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu);

// One report per evaluation functional; excluded cases are flagged.
std::vector<TradeoffReport> tradeoff_report(const Kernel& kernel, const FunctionalSet& lambdas,
                                            const FunctionalSet& eval_set, unsigned parallel = 1);

// Leave-one-out: for each lambda_i, the report of Lambda \ {lambda_i} at lambda_i.
std::vector<TradeoffReport> leave_one_out_report(const Kernel& kernel, const FunctionalSet& lambdas);

// CSV columns: mu_kind, mu_x, mu_y, power, stability_norm, product, flag
void write_report_csv(std::ostream& os, const std::vector<TradeoffReport>& reports);

}  // namespace tradeoff
