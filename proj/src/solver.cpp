#include "circot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circot/error.hpp"

namespace circot {

namespace {

// Integer N with N / m nearest to `target` among those inside [lo, hi], if any.
std::optional<std::int64_t> grid_point_in(double lo, double hi, double target, std::int64_t m) {
  const Shift lo_shift(lo), hi_shift(hi);
  auto first = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(m)));
  while (lo_shift.compare_scaled(m, first - 1) <= 0) --first;
  while (lo_shift.compare_scaled(m, first) > 0) ++first;
  auto last = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(m)));
  while (hi_shift.compare_scaled(m, last + 1) >= 0) ++last;
  while (hi_shift.compare_scaled(m, last) < 0) --last;
  if (first > last) return std::nullopt;
  const auto nearest = static_cast<std::int64_t>(std::llround(target * static_cast<double>(m)));
  return std::clamp(nearest, first, last);
}

}  // namespace

int iteration_budget(const SearchBracket& bracket, double epsilon) {
  return static_cast<int>(std::ceil(std::log2(bracket.width() * bracket.lipschitz / epsilon))) + 1;
}

SolveResult minimize(const CircularHistogram& h0, const CircularHistogram& h1,
                     const CostFunction& cost, const SolveOptions& options) {
  if (options.epsilon && !(std::isfinite(*options.epsilon) && *options.epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidEpsilon,
                "epsilon must be a positive finite number, got " + std::to_string(*options.epsilon));
  }
  const PeriodicCdf f0(h0);
  const PeriodicCdf f1(h1);

  SolveResult result;
  result.bracket = bracket_for(cost, {.tight_symmetric = options.tight_bracket});
  result.denominator = common_denominator(h0, h1);
  result.epsilon_used = result.denominator
                            ? 1.0 / (2.0 * static_cast<double>(*result.denominator))
                            : options.epsilon.value_or(kDefaultEpsilon);
  result.theta_tolerance = result.epsilon_used / result.bracket.lipschitz;

  auto evaluate = [&](const Shift& theta) {
    auto e = avg_cost_derivatives(f0, f1, cost, theta);
    result.cost_evaluations += e.cost_evaluations;
    return e;
  };

  double lo = result.bracket.theta_lo;
  double hi = result.bracket.theta_hi;
  std::optional<AvgCostEval> at_lo, at_hi;
  AvgCostEval final_eval;

  for (;;) {
    if (result.iterations >= options.max_iterations) {
      throw Error(ErrorCode::IterationLimit,
                  "no convergence after " + std::to_string(result.iterations) +
                      " iterations; check the declared bracket and Lipschitz bound");
    }
    ++result.iterations;
    const double theta = 0.5 * (lo + hi);
    auto e = evaluate(theta);
    if (options.hook) {
      options.hook({result.iterations, lo, hi, theta, e.left_derivative, e.right_derivative});
    }

    if (e.left_derivative <= 0.0 && 0.0 <= e.right_derivative) {
      final_eval = std::move(e);
      result.termination = Termination::SignTest;
      break;
    }

    if (hi - lo < result.theta_tolerance) {
      // C is affine on each side of the (at most one, in rational mode)
      // breakpoint left in [lo, hi]; intersect the two supporting lines.
      if (!at_lo) at_lo = evaluate(lo);
      if (!at_hi) at_hi = evaluate(hi);
      const double slope_lo = at_lo->right_derivative;
      const double slope_hi = at_hi->left_derivative;
      double target = 0.5 * (lo + hi);
      if (slope_lo != slope_hi) {
        const double t = (at_hi->value - at_lo->value + slope_lo * lo - slope_hi * hi) /
                         (slope_lo - slope_hi);
        if (std::isfinite(t)) target = std::clamp(t, lo, hi);
      }
      Shift chosen(target);
      if (result.denominator) {
        if (const auto n = grid_point_in(lo, hi, target, *result.denominator)) {
          chosen = Shift::rational(*n, *result.denominator);
        }
      }
      final_eval = evaluate(chosen);
      result.termination = Termination::WidthTest;
      break;
    }

    if (e.right_derivative < 0.0) {
      lo = theta;
      at_lo = std::move(e);
    } else {
      hi = theta;
      at_hi = std::move(e);
    }
  }

  result.theta = final_eval.theta;
  result.theta_star = final_eval.theta.value();
  result.cost = final_eval.value;
  result.left_derivative = final_eval.left_derivative;
  result.right_derivative = final_eval.right_derivative;
  result.exact = final_eval.left_derivative <= 0.0 && 0.0 <= final_eval.right_derivative;

  // Flat minimum: walk breakpoint to breakpoint while the slope stays zero.
  const double zero = 1e-12 * std::max(1.0, result.bracket.lipschitz);
  if (std::abs(result.left_derivative) <= zero && std::abs(result.right_derivative) <= zero) {
    auto walk = [&](bool up) {
      Shift cur = up ? final_eval.breakpoint_above : final_eval.breakpoint_below;
      for (int step = 0; step < 10000; ++step) {
        if (cur.value() < result.bracket.theta_lo || cur.value() > result.bracket.theta_hi) break;
        const auto e = avg_cost_derivatives(f0, f1, cost, cur);
        if (std::abs(up ? e.right_derivative : e.left_derivative) > zero) break;
        cur = up ? e.breakpoint_above : e.breakpoint_below;
      }
      return cur.value();
    };
    result.flat_interval = std::make_pair(walk(false), walk(true));
  }
  return result;
}

double mk_distance(const CircularHistogram& h0, const CircularHistogram& h1, double lambda,
                   std::optional<double> epsilon) {
  SolveOptions options;
  options.epsilon = epsilon;
  const auto r = minimize(h0, h1, CostFunction::power(lambda), options);
  return std::pow(std::max(r.cost, 0.0), 1.0 / lambda);
}

}  // namespace circot
