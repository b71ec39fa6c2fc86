#include "circot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "circot/error.hpp"

namespace circot::oracle {

namespace {

std::vector<std::int64_t> cumulative_counts(const CircularHistogram& h, std::int64_t scale) {
  std::vector<std::int64_t> out(h.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = (acc += h.counts()[i] * scale);
  return out;
}

std::vector<double> cumulative_masses(const CircularHistogram& h) {
  std::vector<double> out(h.size());
  std::partial_sum(h.masses().begin(), h.masses().end(), out.begin());
  out.back() = 1.0;
  return out;
}

}  // namespace

std::vector<double> candidate_shifts(const CircularHistogram& h0, const CircularHistogram& h1,
                                     double lo, double hi) {
  std::vector<double> out;
  if (h0.denominator() && h1.denominator()) {
    const std::int64_t m = std::lcm(*h0.denominator(), *h1.denominator());
    const auto a = cumulative_counts(h0, m / *h0.denominator());
    const auto b = cumulative_counts(h1, m / *h1.denominator());
    const auto md = static_cast<double>(m);
    std::vector<std::int64_t> nums;
    for (const auto ai : a) {
      for (const auto bj : b) {
        const std::int64_t base = bj - ai;
        auto k = static_cast<std::int64_t>(std::floor((lo * md - static_cast<double>(base)) / md)) - 1;
        for (;; ++k) {
          const std::int64_t n = base + k * m;
          const double v = static_cast<double>(n) / md;
          if (v > hi) break;
          if (v >= lo) nums.push_back(n);
        }
      }
    }
    std::sort(nums.begin(), nums.end());
    nums.erase(std::unique(nums.begin(), nums.end()), nums.end());
    out.reserve(nums.size());
    for (const auto n : nums) out.push_back(static_cast<double>(n) / md);
    return out;
  }

  const auto a = cumulative_masses(h0);
  const auto b = cumulative_masses(h1);
  for (const double ai : a) {
    for (const double bj : b) {
      const double base = bj - ai;
      for (double k = std::floor(lo - base) - 1.0;; k += 1.0) {
        const double v = base + k;
        if (v > hi) break;
        if (v >= lo) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (const double v : out) {
    if (unique.empty() || v - unique.back() > 1e-12) unique.push_back(v);
  }
  return unique;
}

double direct_average_cost(const CircularHistogram& h0, const CircularHistogram& h1,
                           const CostFunction& cost, double theta) {
  const PeriodicCdf f0(h0);
  const PeriodicCdf f1(h1);
  std::vector<double> levels{0.0};
  for (const double a : f0.cumulative()) levels.push_back(a);
  for (const double b : f1.cumulative()) {
    double v = b - theta;
    v -= std::floor(v);
    levels.push_back(v == 0.0 ? 1.0 : v);
  }
  std::sort(levels.begin(), levels.end());

  double sum = 0.0;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double width = levels[k] - levels[k - 1];
    if (width <= 0.0) continue;
    const double mid = 0.5 * (levels[k] + levels[k - 1]);
    sum += cost(f0.inverse(mid), f1.inverse(mid + theta)) * width;
  }
  return sum;
}

OracleResult oracle_breakpoints(const CircularHistogram& h0, const CircularHistogram& h1,
                                const CostFunction& cost, const SearchBracket& bracket) {
  if (h0.size() * h1.size() > kMaxBreakpointPairs) {
    throw Error(ErrorCode::TooLarge, "breakpoint oracle limited to n0 * n1 <= " +
                                         std::to_string(kMaxBreakpointPairs));
  }
  auto candidates = candidate_shifts(h0, h1, bracket.theta_lo, bracket.theta_hi);
  candidates.push_back(bracket.theta_lo);
  candidates.push_back(bracket.theta_hi);

  OracleResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (const double theta : candidates) {
    const double c = direct_average_cost(h0, h1, cost, theta);
    ++best.candidates_evaluated;
    if (c < best.cost) {
      best.cost = c;
      best.theta_star = theta;
    }
  }
  return best;
}

OracleResult oracle_rotations(const CircularHistogram& h0, const CircularHistogram& h1,
                              const CostFunction& cost) {
  if (!h0.denominator() || !h1.denominator()) {
    throw Error(ErrorCode::NoDenominator, "rotation oracle needs integer masses");
  }
  const std::int64_t m = std::lcm(*h0.denominator(), *h1.denominator());
  if (m > kMaxRotationDenominator) {
    throw Error(ErrorCode::TooLarge, "rotation oracle limited to M <= " +
                                         std::to_string(kMaxRotationDenominator));
  }

  auto expand = [m](const CircularHistogram& h) {
    std::vector<double> unit;
    unit.reserve(static_cast<std::size_t>(m));
    const std::int64_t scale = m / *h.denominator();
    for (std::size_t i = 0; i < h.size(); ++i) {
      unit.insert(unit.end(), static_cast<std::size_t>(h.counts()[i] * scale), h.positions()[i]);
    }
    return unit;
  };
  const auto src = expand(h0);
  const auto dst = expand(h1);

  SearchBracket range{-6.0, 6.0, 1.0, BracketProvenance::Declared};
  try {
    range = bracket_for(cost);
  } catch (const Error&) {
  }
  const auto first = static_cast<std::int64_t>(std::floor(range.theta_lo)) * m - m;
  const auto last = static_cast<std::int64_t>(std::ceil(range.theta_hi)) * m + m;

  OracleResult best;
  best.cost = std::numeric_limits<double>::infinity();
  const auto md = static_cast<double>(m);
  for (std::int64_t s = first; s <= last; ++s) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
      std::int64_t g = i + s;
      std::int64_t period = g >= 0 ? g / m : -((-g + m - 1) / m);
      g -= period * m;
      sum += cost(src[static_cast<std::size_t>(i)],
                  dst[static_cast<std::size_t>(g)] + static_cast<double>(period));
    }
    ++best.candidates_evaluated;
    const double c = sum / md;
    if (c < best.cost) {
      best.cost = c;
      best.theta_star = static_cast<double>(s) / md;
    }
  }
  return best;
}

}  // namespace circot::oracle
