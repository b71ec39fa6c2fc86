#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

#include "circot/bracket.hpp"
#include "circot/costs.hpp"
#include "circot/measures.hpp"
#include "circot/profile.hpp"

namespace circot {

inline constexpr double kDefaultEpsilon = 1e-10;
inline constexpr int kMaxIterations = 200;

/// State of the bisection right after the one-sided derivatives at the
/// midpoint have been computed.
struct IterationRecord {
  int iteration = 0;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double theta = 0.0;
  double left_derivative = 0.0;
  double right_derivative = 0.0;
};

using IterationHook = std::function<void(const IterationRecord&)>;

struct SolveOptions {
  /// Cost accuracy. Ignored when both marginals declare denominators: the
  /// solver then uses 1/(2M) and terminates exactly.
  std::optional<double> epsilon;
  bool tight_bracket = false;
  IterationHook hook;
  int max_iterations = kMaxIterations;
};

enum class Termination { SignTest, WidthTest };

struct SolveResult {
  double theta_star = 0.0;
  /// theta_star as it was evaluated (rational when snapped to the 1/M grid).
  Shift theta;
  double cost = 0.0;
  /// An optimality certificate holds: C'(theta - 0) <= 0 <= C'(theta + 0).
  bool exact = false;
  int iterations = 0;
  /// Bound on the cost gap.
  double epsilon_used = 0.0;
  /// Bound on the final bracket width, epsilon_used / L.
  double theta_tolerance = 0.0;
  std::size_t cost_evaluations = 0;
  double left_derivative = 0.0;
  double right_derivative = 0.0;
  Termination termination = Termination::SignTest;
  SearchBracket bracket;
  std::optional<std::int64_t> denominator;
  /// Set when the minimum is a flat segment: its end points.
  std::optional<std::pair<double, double>> flat_interval;
};

/// Globally minimizes the average cost over the rotation number by bisection
/// on the sign of its one-sided derivatives.
SolveResult minimize(const CircularHistogram& h0, const CircularHistogram& h1,
                     const CostFunction& cost, const SolveOptions& options = {});

/// Monge-Kantorovich distance of order lambda: (min cost)^(1/lambda) for
/// c = |x - y|^lambda.
double mk_distance(const CircularHistogram& h0, const CircularHistogram& h1, double lambda,
                   std::optional<double> epsilon = {});

/// Upper bound on the number of bisection steps minimize() may take.
int iteration_budget(const SearchBracket& bracket, double epsilon);

}  // namespace circot
