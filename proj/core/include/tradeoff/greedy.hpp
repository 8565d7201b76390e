#pragma once

// P-greedy selection of data functionals.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tradeoff/functionals.hpp"
#include "tradeoff/kernels.hpp"

namespace tradeoff {

enum class GreedyStop { MaxSteps, Tolerance, Exhausted };

std::string to_string(GreedyStop stop);

struct GreedyTrace {
  std::vector<std::size_t> candidate_ids;  // index into the candidate set, in selection order
  FunctionalSet selected;
  std::vector<double> max_power;  // P at the selected candidate, before it joined the set
  GreedyStop stop = GreedyStop::MaxSteps;

  std::size_t steps() const noexcept { return candidate_ids.size(); }
};

// Each step adds the remaining candidate with the largest Power Function
// under the current selection. Ties go to the lowest index. Stops after a
// step whose max power is <= tolerance, after max_steps, or when nothing
// with positive power is left. Power Functions are recomputed from scratch.
GreedyTrace p_greedy(const Kernel& kernel, const FunctionalSet& candidates, std::size_t max_steps,
                     double tolerance, unsigned parallel = 1);

// Same selection rule with Newton-basis updates of P^2.
GreedyTrace p_greedy_newton(const Kernel& kernel, const FunctionalSet& candidates, std::size_t max_steps,
                            double tolerance);

// step, candidate_id, x, y, max_power
void write_trace_csv(std::ostream& os, const GreedyTrace& trace);

}  // namespace tradeoff
