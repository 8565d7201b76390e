#include "tradeoff/greedy.hpp"

#include <cmath>
#include <ostream>

#include "tradeoff/csv.hpp"
#include "tradeoff/detail/parallel.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/kernel_recovery.hpp"

namespace tradeoff {

std::string to_string(GreedyStop stop) {
  switch (stop) {
    case GreedyStop::MaxSteps: return "max_steps";
    case GreedyStop::Tolerance: return "tolerance";
    case GreedyStop::Exhausted: return "exhausted";
  }
  return "unknown";
}

namespace {

void check_args(const FunctionalSet& candidates, std::size_t max_steps) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "greedy needs candidates");
  if (max_steps == 0) throw Error(ErrorCode::InvalidArgument, "greedy needs max_steps >= 1");
}

// Shared bookkeeping: returns false when the trace is finished.
bool record(GreedyTrace& trace, const FunctionalSet& candidates, std::size_t best, double best_p2,
            std::size_t max_steps, double tolerance) {
  if (!(best_p2 > 0.0)) {
    trace.stop = GreedyStop::Exhausted;
    return false;
  }
  const double p = std::sqrt(best_p2);
  trace.candidate_ids.push_back(best);
  trace.selected.push_back(candidates[best]);
  trace.max_power.push_back(p);
  if (p <= tolerance) {
    trace.stop = GreedyStop::Tolerance;
    return false;
  }
  if (trace.steps() >= max_steps) {
    trace.stop = GreedyStop::MaxSteps;
    return false;
  }
  if (trace.steps() == candidates.size()) {
    trace.stop = GreedyStop::Exhausted;
    return false;
  }
  return true;
}

}  // namespace

GreedyTrace p_greedy(const Kernel& kernel, const FunctionalSet& candidates, std::size_t max_steps,
                     double tolerance, unsigned parallel) {
  check_args(candidates, max_steps);
  GreedyTrace trace;
  std::vector<bool> taken(candidates.size(), false);
  std::vector<double> p2(candidates.size(), 0.0);
  for (;;) {
    const PowerEvaluator evaluator(kernel, trace.selected);
    detail::parallel_for(candidates.size(), parallel, [&](std::size_t i) {
      p2[i] = taken[i] ? 0.0 : evaluator.evaluate(candidates[i]).power_squared;
    });
    std::size_t best = 0;
    double best_p2 = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!taken[i] && p2[i] > best_p2) {
        best = i;
        best_p2 = p2[i];
      }
    }
    if (!record(trace, candidates, best, best_p2, max_steps, tolerance)) break;
    taken[best] = true;
  }
  return trace;
}

GreedyTrace p_greedy_newton(const Kernel& kernel, const FunctionalSet& candidates, std::size_t max_steps,
                            double tolerance) {
  check_args(candidates, max_steps);
  const std::size_t n = candidates.size();
  GreedyTrace trace;
  std::vector<bool> taken(n, false);
  Vector p2(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) p2(static_cast<Eigen::Index>(i)) = kernel_apply(kernel, candidates[i], candidates[i]);
  // Column s holds the s-th Newton basis function applied to every candidate.
  Matrix newton(static_cast<Eigen::Index>(n), 0);
  for (;;) {
    std::size_t best = 0;
    double best_p2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::max(p2(static_cast<Eigen::Index>(i)), 0.0);
      if (!taken[i] && v > best_p2) {
        best = i;
        best_p2 = v;
      }
    }
    if (!record(trace, candidates, best, best_p2, max_steps, tolerance)) break;
    taken[best] = true;

    const auto s = newton.cols();
    const auto b = static_cast<Eigen::Index>(best);
    Vector column = cross_column(kernel, candidates, candidates[best]);
    if (s > 0) column -= newton * newton.row(b).transpose();
    column /= std::sqrt(best_p2);
    newton.conservativeResize(Eigen::NoChange, s + 1);
    newton.col(s) = column;
    p2 -= column.cwiseAbs2();
  }
  return trace;
}

void write_trace_csv(std::ostream& os, const GreedyTrace& trace) {
  csv::write_row(os, {"step", "candidate_id", "x", "y", "max_power"});
  for (std::size_t s = 0; s < trace.steps(); ++s) {
    const Point x = trace.selected[s].location();
    csv::write_row(os, {std::to_string(s + 1), std::to_string(trace.candidate_ids[s]),
                        x.size() > 0 ? csv::format(x[0]) : "", x.size() > 1 ? csv::format(x[1]) : "",
                        csv::format(trace.max_power[s])});
  }
}

}  // namespace tradeoff
