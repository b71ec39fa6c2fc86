#include "circot/plan.hpp"

namespace circot {

TransportPlan extract_plan(const CircularHistogram& h0, const CircularHistogram& h1,
                           const CostFunction& cost, const Shift& theta) {
  const PeriodicCdf f0(h0);
  const PeriodicCdf f1(h1);
  const auto profile = build_profile(f0, f1, theta);
  const auto n0 = static_cast<std::int64_t>(h0.size());
  const auto n1 = static_cast<std::int64_t>(h1.size());

  TransportPlan plan;
  plan.theta = theta;
  plan.total_cost = avg_cost(profile, cost);
  for (const auto& s : profile.segments) {
    if (s.width <= 0.0) continue;
    auto& out = plan.assignments;
    if (!out.empty() && out.back().source_position == s.source_position &&
        out.back().target_position_lifted == s.target_position) {
      out.back().mass += s.width;
      continue;
    }
    const auto src = split_atom_index(s.source, n0);
    const auto tgt = split_atom_index(s.target, n1);
    out.push_back({static_cast<std::size_t>(src.local - 1), static_cast<std::size_t>(tgt.local - 1),
                   h0.positions()[src.local - 1], s.target_position,
                   h1.positions()[tgt.local - 1], s.width});
  }
  return plan;
}

}  // namespace circot
