#include "circot/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circot/error.hpp"

namespace circot {

std::string_view to_string(BracketProvenance p) {
  switch (p) {
    case BracketProvenance::Analytic: return "analytic";
    case BracketProvenance::Numeric: return "eq16-numeric";
    case BracketProvenance::Declared: return "user-declared";
  }
  return "unknown";
}

namespace {

// The envelope boxes: source in [-1, 2], target in [theta - 1, theta + 2], so
// the displacement x - y ranges over [-theta - 3, 3 - theta].
constexpr double kReach = 3.0;

class ConvexEnvelopes {
 public:
  ConvexEnvelopes(const ConvexPlusPeriodicCost& c, double step)
      : h_(c.convex),
        f_(sampled_range(c.source_periodic, 0.0, 1.0, step)),
        g_(sampled_range(c.target_periodic, 0.0, 1.0, step)),
        step_(step) {}

  double lower(double theta) const {
    return sampled_range(h_, -theta - kReach, kReach - theta, step_).min + f_.min + g_.min;
  }
  // A convex function peaks at an endpoint of the interval.
  double upper(double theta) const {
    return std::max(h_(-theta - kReach), h_(kReach - theta)) + f_.max + g_.max;
  }

 private:
  const std::function<double(double)>& h_;
  SampledRange f_, g_;
  double step_;
};

double box_extreme(const CostFunction& cost, double theta, double step, bool want_max) {
  const auto k = static_cast<std::size_t>(std::ceil(3.0 / step));
  double best = want_max ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  double jump = 0.0;
  for (std::size_t a = 0; a <= k; ++a) {
    const double u1 = std::min(2.0, -1.0 + static_cast<double>(a) * step);
    double prev = cost(u1, theta - 1.0);
    for (std::size_t b = 0; b <= k; ++b) {
      const double u2 = std::min(theta + 2.0, theta - 1.0 + static_cast<double>(b) * step);
      const double v = cost(u1, u2);
      best = want_max ? std::max(best, v) : std::min(best, v);
      jump = std::max(jump, std::abs(v - prev));
      prev = v;
    }
  }
  return want_max ? best + jump : best - jump;
}

// Minimizer of a convex function by golden-section search.
template <class F>
double golden_min(F&& fn, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

// Outermost point in direction `dir` from `start` where lower() still does not
// exceed `level`, rounded outward.
template <class Env>
double sublevel_edge(const Env& env, double start, double dir, double level) {
  double inside = start;
  double step = 1.0;
  double outside = start + dir * step;
  while (env.lower(outside) <= level) {
    inside = outside;
    step *= 2.0;
    outside = start + dir * step;
    if (step > 1e12) throw Error(ErrorCode::UnknownBracket, "cost does not grow; no bracket");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (env.lower(mid) <= level) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return outside;
}

// Smallest sampled divided difference of the envelopes beyond an edge of the
// bracket. Any sample bounds the one-sided derivative there.
template <class Env>
double edge_slope(const Env& env, double edge, double dir, double step, double span) {
  const double base = env.lower(edge);
  double best = std::numeric_limits<double>::infinity();
  const auto count = static_cast<std::size_t>(span / step);
  for (std::size_t k = 1; k <= count; ++k) {
    const double s = static_cast<double>(k) * step;
    best = std::min(best, (env.upper(edge + dir * s) - base) / s);
  }
  return best;
}

SearchBracket numeric_bracket(const ConvexPlusPeriodicCost& c, const BracketOptions& options) {
  const ConvexEnvelopes env(c, options.grid_step);
  const double center = golden_min([&](double t) { return env.upper(t); }, -1024.0, 1024.0);
  const double level = env.upper(center);

  SearchBracket b;
  b.provenance = BracketProvenance::Numeric;
  b.theta_lo = sublevel_edge(env, center, -1.0, level);
  b.theta_hi = sublevel_edge(env, center, 1.0, level);
  const double span = std::max(16.0, 2.0 * b.width());
  const double slope_hi = edge_slope(env, b.theta_hi, 1.0, options.grid_step, span);
  const double slope_lo = edge_slope(env, b.theta_lo, -1.0, options.grid_step, span);
  b.lipschitz = std::max({slope_hi, slope_lo, std::numeric_limits<double>::min()});
  return b;
}

}  // namespace

SearchBracket bracket_for(const CostFunction& cost, const BracketOptions& options) {
  const bool tight = options.tight_symmetric && cost.symmetric();
  return std::visit(
      [&](const auto& k) -> SearchBracket {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerCost>) {
          // |d/dy |x - y|^p| <= p r^(p - 1) when |x - y| <= r, and every pair the
          // profile can form has |x - y| <= |theta| + 3.
          const double reach = tight ? 4.0 : 9.0;
          const double lip = k.exponent * std::pow(reach, k.exponent - 1.0);
          if (tight) return {-1.0, 1.0, lip, BracketProvenance::Analytic};
          return {-6.0, 6.0, lip, BracketProvenance::Analytic};
        } else if constexpr (std::is_same_v<K, ConvexPlusPeriodicCost>) {
          auto b = numeric_bracket(k, options);
          // Both intervals contain every minimizer, so their intersection does.
          if (tight) {
            b.theta_lo = std::max(b.theta_lo, -1.0);
            b.theta_hi = std::min(b.theta_hi, 1.0);
          }
          return b;
        } else {
          if (!k.bracket || !k.lipschitz) {
            throw Error(ErrorCode::UnknownBracket,
                        "custom cost must declare a bracket and a Lipschitz bound");
          }
          return {k.bracket->lo, k.bracket->hi, *k.lipschitz, BracketProvenance::Declared};
        }
      },
      cost.kind());
}

double envelope_lower(const CostFunction& cost, double theta, double grid_step) {
  if (const auto p = cost.power_exponent()) {
    return std::pow(std::max(0.0, std::abs(theta) - kReach), *p);
  }
  if (const auto* c = std::get_if<ConvexPlusPeriodicCost>(&cost.kind())) {
    return ConvexEnvelopes(*c, grid_step).lower(theta);
  }
  return box_extreme(cost, theta, grid_step, false);
}

double envelope_upper(const CostFunction& cost, double theta, double grid_step) {
  if (const auto p = cost.power_exponent()) {
    return std::pow(std::abs(theta) + kReach, *p);
  }
  if (const auto* c = std::get_if<ConvexPlusPeriodicCost>(&cost.kind())) {
    return ConvexEnvelopes(*c, grid_step).upper(theta);
  }
  return box_extreme(cost, theta, grid_step, true);
}

}  // namespace circot
