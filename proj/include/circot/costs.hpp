#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <variant>

namespace circot {

/// |x - y|^exponent, exponent >= 1.
struct PowerCost {
  double exponent = 2.0;
};

/// h(x - y) + f(x) + g(y) with h convex and f, g 1-periodic.
struct ConvexPlusPeriodicCost {
  std::function<double(double)> convex;
  std::function<double(double)> source_periodic;
  std::function<double(double)> target_periodic;
};

/// Search interval declared by the caller for costs the library cannot
/// analyse.
struct DeclaredBracket {
  double lo = -6.0;
  double hi = 6.0;
};

/// Black-box cost. The solver needs a bracket and a Lipschitz bound for it;
/// growth_radius() additionally needs `growth`.
struct CustomCost {
  std::function<double(double, double)> evaluator;
  std::optional<DeclaredBracket> bracket;
  std::optional<double> lipschitz;
  std::function<double(double)> growth;
};

/// A cost c(x, y) on the real line, invariant under (x, y) -> (x + 1, y + 1)
/// and satisfying the (possibly non-strict) Monge condition.
class CostFunction {
 public:
  using Kind = std::variant<PowerCost, ConvexPlusPeriodicCost, CustomCost>;

  static CostFunction power(double exponent);
  static CostFunction convex_plus_periodic(std::function<double(double)> convex,
                                           std::function<double(double)> source_periodic,
                                           std::function<double(double)> target_periodic,
                                           bool symmetric = false);
  static CostFunction custom(CustomCost cost, bool symmetric = false);

  double operator()(double x, double y) const;

  const Kind& kind() const noexcept { return kind_; }
  /// True when c(x, y) depends on |x - y| only.
  bool symmetric() const noexcept { return symmetric_; }
  /// Exponent when this is a power cost.
  std::optional<double> power_exponent() const noexcept;

 private:
  CostFunction(Kind kind, bool symmetric) : kind_(std::move(kind)), symmetric_(symmetric) {}

  Kind kind_;
  bool symmetric_ = false;
  double exponent_ = 0.0;  // cached for the hot path; 0 when not a power cost
};

inline double CostFunction::operator()(double x, double y) const {
  if (exponent_ != 0.0) {
    const double d = x > y ? x - y : y - x;
    if (exponent_ == 1.0) return d;
    if (exponent_ == 2.0) return d * d;
    return std::pow(d, exponent_);
  }
  if (const auto* c = std::get_if<ConvexPlusPeriodicCost>(&kind_)) {
    return c->convex(x - y) + c->source_periodic(x) + c->target_periodic(y);
  }
  return std::get<CustomCost>(kind_).evaluator(x, y);
}

/// Result of a finite check of the Monge inequality.
struct MongeReport {
  bool passed = true;
  bool strict = true;
  /// Largest c(x1, y1) + c(x2, y2) - c(x1, y2) - c(x2, y1) seen.
  double max_value = 0.0;
  /// Quadruple (x1, x2, y1, y2) attaining max_value.
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  std::size_t quadruples = 0;
};

/// Evaluates the Monge quantity on every quadruple x1 < x2, y1 < y2 drawn from
/// `grid`. Strict mode fails on any value >= 0; non-strict mode fails only on
/// values above `tolerance`.
MongeReport check_monge(const CostFunction& cost, std::span<const double> grid,
                        bool strict = true, double tolerance = 1e-12);

/// Lower and upper bounds of a function sampled on [lo, hi] with the given
/// step, each widened by the largest jump between neighbouring samples.
struct SampledRange {
  double min = 0.0;
  double max = 0.0;
};
SampledRange sampled_range(const std::function<double(double)>& fn, double lo, double hi,
                           double step);

/// A radius R with c(x, y) >= level whenever |x - y| >= R.
double growth_radius(const CostFunction& cost, double level);

}  // namespace circot
