#include "circot/costs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "circot/error.hpp"

namespace circot {

CostFunction CostFunction::power(double exponent) {
  if (!std::isfinite(exponent) || exponent < 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "power cost needs an exponent >= 1, got " + std::to_string(exponent));
  }
  CostFunction c(PowerCost{exponent}, true);
  c.exponent_ = exponent;
  return c;
}

CostFunction CostFunction::convex_plus_periodic(std::function<double(double)> convex,
                                                std::function<double(double)> source_periodic,
                                                std::function<double(double)> target_periodic,
                                                bool symmetric) {
  if (!convex) throw Error(ErrorCode::InvalidArgument, "convex part is required");
  if (!source_periodic) source_periodic = [](double) { return 0.0; };
  if (!target_periodic) target_periodic = [](double) { return 0.0; };
  return CostFunction(ConvexPlusPeriodicCost{std::move(convex), std::move(source_periodic),
                                             std::move(target_periodic)},
                      symmetric);
}

CostFunction CostFunction::custom(CustomCost cost, bool symmetric) {
  if (!cost.evaluator) throw Error(ErrorCode::InvalidArgument, "custom cost needs an evaluator");
  if (cost.bracket && !(cost.bracket->lo < cost.bracket->hi)) {
    throw Error(ErrorCode::InvalidArgument, "declared bracket must satisfy lo < hi");
  }
  if (cost.lipschitz && !(*cost.lipschitz > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "declared Lipschitz bound must be positive");
  }
  return CostFunction(std::move(cost), symmetric);
}

std::optional<double> CostFunction::power_exponent() const noexcept {
  if (const auto* p = std::get_if<PowerCost>(&kind_)) return p->exponent;
  return std::nullopt;
}

MongeReport check_monge(const CostFunction& cost, std::span<const double> grid, bool strict,
                        double tolerance) {
  std::vector<double> values(grid.begin(), grid.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "Monge check needs at least two distinct grid values");
  }

  MongeReport report;
  report.strict = strict;
  report.max_value = -std::numeric_limits<double>::infinity();
  const std::size_t n = values.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double x1 = values[a], x2 = values[b], y1 = values[i], y2 = values[j];
          const double q = cost(x1, y1) + cost(x2, y2) - cost(x1, y2) - cost(x2, y1);
          ++report.quadruples;
          if (q > report.max_value) {
            report.max_value = q;
            report.x1 = x1;
            report.x2 = x2;
            report.y1 = y1;
            report.y2 = y2;
          }
        }
      }
    }
  }
  report.passed = strict ? report.max_value < 0.0 : report.max_value <= tolerance;
  return report;
}

SampledRange sampled_range(const std::function<double(double)>& fn, double lo, double hi,
                           double step) {
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  double prev = fn(lo);
  SampledRange r{prev, prev};
  double jump = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double x = std::min(hi, lo + static_cast<double>(k) * step);
    const double v = fn(x);
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
    jump = std::max(jump, std::abs(v - prev));
    prev = v;
  }
  r.min -= jump;
  r.max += jump;
  return r;
}

namespace {

// Smallest power-of-two radius at which a convex h has climbed past `target`
// on both sides and is still increasing away from the origin.
double convex_radius(const std::function<double(double)>& h, double target) {
  for (double r = 1.0; r < 1e18; r *= 2.0) {
    const bool right = h(r) >= target && h(r) >= h(r / 2.0);
    const bool left = h(-r) >= target && h(-r) >= h(-r / 2.0);
    if (right && left) return r;
  }
  throw Error(ErrorCode::UnknownGrowth, "convex part of the cost does not grow");
}

}  // namespace

double growth_radius(const CostFunction& cost, double level) {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerCost>) {
          return std::pow(std::max(level, 0.0), 1.0 / k.exponent);
        } else if constexpr (std::is_same_v<K, ConvexPlusPeriodicCost>) {
          const auto f = sampled_range(k.source_periodic, 0.0, 1.0, 1e-3);
          const auto g = sampled_range(k.target_periodic, 0.0, 1.0, 1e-3);
          return convex_radius(k.convex, level - f.min - g.min);
        } else {
          if (!k.growth) {
            throw Error(ErrorCode::UnknownGrowth, "custom cost declares no growth radius");
          }
          return k.growth(level);
        }
      },
      cost.kind());
}

}  // namespace circot
