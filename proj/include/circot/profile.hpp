#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "circot/costs.hpp"
#include "circot/measures.hpp"

namespace circot {

/// The rotation number theta. Either a double or an exact rational N / D;
/// the rational form lets breakpoints of the average cost be hit exactly.
class Shift {
 public:
  Shift() = default;
  Shift(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static Shift rational(std::int64_t numerator, std::int64_t denominator);

  double value() const noexcept { return value_; }
  bool is_rational() const noexcept { return denominator_ != 0; }
  std::int64_t numerator() const noexcept { return numerator_; }
  std::int64_t denominator() const noexcept { return denominator_; }

  std::int64_t floor() const noexcept;
  /// Exact sign of theta * scale - n.
  int compare_scaled(std::int64_t scale, std::int64_t n) const noexcept;
  /// theta * scale - n with a single rounding.
  double scaled_minus(std::int64_t scale, std::int64_t n) const noexcept;

 private:
  double value_ = 0.0;
  std::int64_t numerator_ = 0;
  std::int64_t denominator_ = 0;
};

/// Least common denominator of the two measures when both declare one and it
/// stays small enough for exact 64-bit level arithmetic.
std::optional<std::int64_t> common_denominator(const CircularHistogram& h0,
                                               const CircularHistogram& h1);

/// One piece (v(k-1), v(k)) of the merged level sequence. Atoms are global
/// lifted indices into F0 and F1 (see PeriodicCdf).
struct ProfileSegment {
  std::int64_t source = 0;
  std::int64_t target = 0;
  double source_position = 0.0;
  double target_position = 0.0;
  double width = 0.0;
};

/// Where one lifted target level F1(y_g) - theta sits among the source levels.
/// As theta moves, mass just around this level switches from y_g to y_{g+1};
/// the source paying for that switch is source_above from the left and
/// source_below from the right.
struct TargetLevel {
  std::int64_t target = 0;
  std::int64_t source_above = 0;  // F0^{-1}(level)
  std::int64_t source_below = 0;  // F0^{-1}(level - 0)
  bool tied = false;
};

/// Both level families of one period merged into a single increasing
/// sequence 0 = v(0) <= ... <= v(n0 + n1) = 1.
struct MergedProfile {
  Shift theta;
  std::vector<double> levels;
  std::vector<ProfileSegment> segments;
  std::vector<TargetLevel> target_levels;
  /// A source level coincides with a target level.
  bool exceptional = false;
  /// Levels were compared exactly against a common denominator.
  bool exact_levels = false;
  /// Level comparisons performed by the merge; always n0 + n1 - 1.
  std::size_t comparisons = 0;
  /// Nearest exceptional shifts strictly above and below theta.
  Shift breakpoint_above;
  Shift breakpoint_below;
};

/// Float-mode tolerance for calling two levels equal at shift theta.
double level_tolerance(double theta) noexcept;

MergedProfile build_profile(const PeriodicCdf& f0, const PeriodicCdf& f1, const Shift& theta);

/// Average cost per period of the plan paired by `profile`. Zero-width
/// segments are skipped.
double avg_cost(const MergedProfile& profile, const CostFunction& cost,
                std::size_t* evaluations = nullptr);

/// Value and one-sided derivatives of the average cost at one shift.
struct AvgCostEval {
  Shift theta;
  double value = 0.0;
  double left_derivative = 0.0;
  double right_derivative = 0.0;
  bool exceptional = false;
  std::size_t cost_evaluations = 0;
  Shift breakpoint_above;
  Shift breakpoint_below;
};

AvgCostEval avg_cost_derivatives(const PeriodicCdf& f0, const PeriodicCdf& f1,
                                 const CostFunction& cost, const Shift& theta);

/// Same as above on a profile that is already built.
AvgCostEval evaluate_profile(const MergedProfile& profile, const PeriodicCdf& f0,
                             const PeriodicCdf& f1, const CostFunction& cost);

}  // namespace circot
