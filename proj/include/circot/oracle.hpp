#pragma once

#include <cstddef>
#include <vector>

#include "circot/bracket.hpp"
#include "circot/costs.hpp"
#include "circot/measures.hpp"

// Brute-force reference solvers. Nothing here goes through the merged
// profile, so they can be used to check it.
namespace circot::oracle {

inline constexpr std::size_t kMaxBreakpointPairs = 10000;
inline constexpr std::int64_t kMaxRotationDenominator = 2000;

struct OracleResult {
  double theta_star = 0.0;
  double cost = 0.0;
  std::size_t candidates_evaluated = 0;
};

/// Every shift in [lo, hi] at which a level of h1 minus theta meets a level of
/// h0, i.e. F1(y_j) - F0(x_i) + k. Sorted and deduplicated (exactly when both
/// marginals declare denominators).
std::vector<double> candidate_shifts(const CircularHistogram& h0, const CircularHistogram& h1,
                                     double lo, double hi);

/// Average cost at theta by sorting all levels of one period and integrating
/// the piecewise-constant integrand with the distribution inverses.
double direct_average_cost(const CircularHistogram& h0, const CircularHistogram& h1,
                           const CostFunction& cost, double theta);

/// Minimum of the average cost over all candidate shifts in the bracket and
/// its two end points.
OracleResult oracle_breakpoints(const CircularHistogram& h0, const CircularHistogram& h1,
                                const CostFunction& cost, const SearchBracket& bracket);

/// Splits both marginals into M unit atoms and takes the cheapest
/// order-preserving matching over all cyclic (and lifted) offsets.
OracleResult oracle_rotations(const CircularHistogram& h0, const CircularHistogram& h1,
                              const CostFunction& cost);

}  // namespace circot::oracle
