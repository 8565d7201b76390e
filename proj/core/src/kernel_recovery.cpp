#include "tradeoff/kernel_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tradeoff/csv.hpp"
#include "tradeoff/detail/parallel.hpp"
#include "tradeoff/error.hpp"

namespace tradeoff {

KernelInterpolant::KernelInterpolant(Kernel kernel, FunctionalSet lambdas, const Vector& data)
    : kernel_(std::move(kernel)), lambdas_(std::move(lambdas)) {
  if (static_cast<std::size_t>(data.size()) != lambdas_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "data length differs from functional count");
  }
  if (lambdas_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "interpolation needs at least one functional");
  }
  const DualGram gram = dual_gram(kernel_, lambdas_);
  const linalg::SpdFactorization factor(gram.matrix);
  jitter_ = factor.jitter();
  coefficients_ = factor.solve(data);
}

double KernelInterpolant::apply(const Functional& mu) const {
  return cross_column(kernel_, lambdas_, mu).dot(coefficients_);
}

KernelInterpolant fit(const Kernel& kernel, const FunctionalSet& lambdas, const Vector& data) {
  return KernelInterpolant(kernel, lambdas, data);
}

PowerEvaluator::PowerEvaluator(Kernel kernel, FunctionalSet lambdas)
    : PowerEvaluator(kernel, dual_gram(kernel, lambdas)) {}

PowerEvaluator::PowerEvaluator(Kernel kernel, DualGram gram)
    : kernel_(std::move(kernel)), gram_(std::move(gram)), factor_(gram_.matrix) {
  if (static_cast<std::size_t>(gram_.matrix.rows()) != gram_.functionals.size()) {
    throw Error(ErrorCode::DimensionMismatch, "Gram matrix size differs from functional count");
  }
}

PowerEvaluation PowerEvaluator::evaluate(const Functional& mu) const {
  PowerEvaluation ev{mu, 0.0, 0.0, 0.0, Vector(), false};
  ev.kernel_diagonal = kernel_apply(kernel_, mu, mu);
  if (gram_.functionals.empty()) {
    ev.power_squared = ev.kernel_diagonal;
    ev.bordered = ev.kernel_diagonal;
    ev.lagrange_values = Vector(0);
    return ev;
  }
  const Vector k = cross_column(kernel_, gram_.functionals, mu);
  const Vector half = factor_.half_solve(k);
  const double schur = ev.kernel_diagonal - half.squaredNorm();
  ev.lagrange_values = factor_.solve(k);
  const Vector& b = ev.lagrange_values;
  ev.bordered = ev.kernel_diagonal - 2.0 * b.dot(k) + b.dot(gram_.matrix * b);
  if (schur < 0.0) {
    ev.clamped = true;
    ev.power_squared = 0.0;
  } else {
    ev.power_squared = schur;
  }
  return ev;
}

Matrix PowerEvaluator::extended_gram(const Functional& mu) const {
  const auto n = gram_.matrix.rows();
  Matrix extended(n + 1, n + 1);
  extended.topLeftCorner(n, n) = gram_.matrix;
  const Vector k = cross_column(kernel_, gram_.functionals, mu);
  extended.topRightCorner(n, 1) = k;
  extended.bottomLeftCorner(1, n) = k.transpose();
  extended(n, n) = kernel_apply(kernel_, mu, mu);
  return extended;
}

Vector PowerEvaluator::lagrangian_coefficients(const Functional& mu) const {
  const PowerEvaluation ev = evaluate(mu);
  if (gram_.functionals.contains(mu) || ev.power_squared <= kExcludedTolerance * ev.kernel_diagonal) {
    throw Error(ErrorCode::ExcludedCase, "mu is reproduced by the data functionals (1 <= 0*inf)");
  }
  // G_ext c = e_mu
  Matrix extended = extended_gram(mu);
  extended.diagonal().array() += factor_.jitter();
  Vector e = Vector::Zero(extended.rows());
  e(e.size() - 1) = 1.0;
  return extended.partialPivLu().solve(e);
}

double PowerEvaluator::lagrangian_norm_squared(const Functional& mu) const {
  const Vector c = lagrangian_coefficients(mu);
  Matrix extended = extended_gram(mu);
  extended.diagonal().array() += factor_.jitter();
  return c.dot(extended * c);
}

TradeoffReport PowerEvaluator::report(const Functional& mu) const {
  TradeoffReport r{mu};
  r.source = StabilitySource::Lagrangian;
  const PowerEvaluation ev = evaluate(mu);
  r.power = std::sqrt(ev.power_squared);
  r.clamped = ev.clamped;
  if (gram_.functionals.contains(mu) || ev.power_squared <= kExcludedTolerance * ev.kernel_diagonal) {
    r.excluded = true;
    return r;
  }
  r.stability_norm = std::sqrt(lagrangian_norm_squared(mu));
  r.product = r.power * r.stability_norm;
  return r;
}

PowerEvaluation power_squared(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu) {
  return PowerEvaluator(kernel, lambdas).evaluate(mu);
}

double lagrangian_norm_squared(const Kernel& kernel, const FunctionalSet& lambdas, const Functional& mu) {
  return PowerEvaluator(kernel, lambdas).lagrangian_norm_squared(mu);
}

std::vector<TradeoffReport> tradeoff_report(const Kernel& kernel, const FunctionalSet& lambdas,
                                            const FunctionalSet& eval_set, unsigned parallel) {
  const PowerEvaluator evaluator(kernel, lambdas);
  std::vector<TradeoffReport> reports(eval_set.size(), TradeoffReport{eval_set.empty() ? Functional::coeff(0) : eval_set[0]});
  detail::parallel_for(eval_set.size(), parallel, [&](std::size_t i) { reports[i] = evaluator.report(eval_set[i]); });
  return reports;
}

std::vector<TradeoffReport> leave_one_out_report(const Kernel& kernel, const FunctionalSet& lambdas) {
  std::vector<TradeoffReport> reports;
  reports.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    reports.push_back(PowerEvaluator(kernel, lambdas.without(i)).report(lambdas[i]));
  }
  return reports;
}

void write_report_csv(std::ostream& os, const std::vector<TradeoffReport>& reports) {
  csv::write_row(os, {"mu_kind", "mu_x", "mu_y", "power", "stability_norm", "product", "flag"});
  for (const auto& r : reports) {
    const Point x = r.mu.location();
    std::string flag = r.excluded ? "excluded" : (r.clamped ? "clamped" : "ok");
    csv::write_row(os, {r.mu.kind_name(), x.size() > 0 ? csv::format(x[0]) : "",
                        x.size() > 1 ? csv::format(x[1]) : "", csv::format(r.power),
                        csv::format(r.stability_norm), csv::format(r.product), flag});
  }
}

}  // namespace tradeoff
