#pragma once

#include <cstddef>
#include <vector>

#include "circot/costs.hpp"
#include "circot/measures.hpp"
#include "circot/profile.hpp"

namespace circot {

struct Assignment {
  std::size_t source_atom = 0;  // index into h0
  std::size_t target_atom = 0;  // index into h1
  double source_position = 0.0;         // in (0, 1]
  double target_position_lifted = 0.0;  // on the real line
  double target_position = 0.0;         // projected to (0, 1]
  double mass = 0.0;
};

/// The plan paired by the shift theta: mass at level v leaves F0^{-1}(v) for
/// (F1^theta)^{-1}(v). Assignments are ordered by source position, and the
/// lifted targets are then nondecreasing.
struct TransportPlan {
  Shift theta;
  std::vector<Assignment> assignments;
  /// Average cost of the plan, summed exactly as avg_cost() does.
  double total_cost = 0.0;
};

TransportPlan extract_plan(const CircularHistogram& h0, const CircularHistogram& h1,
                           const CostFunction& cost, const Shift& theta);

}  // namespace circot
