#pragma once

// Test-only reference computations. Nothing here calls into the profile or
// solver code, so the values can serve as ground truth for them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "circot/costs.hpp"
#include "circot/measures.hpp"

namespace circot::testing {

using Rng = std::mt19937_64;

/// inf{x : v < F(x)} computed straight from the atom list.
inline double brute_inverse(const CircularHistogram& h, double v) {
  const double k = std::floor(v);
  const double r = v - k;
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    acc += h.masses()[i];
    if (i + 1 == h.size()) acc = 1.0;
    if (r < acc) return h.positions()[i] + k;
  }
  return h.positions()[0] + k + 1.0;
}

/// mu((0, x]) lifted periodically, by direct mass counting. Whole periods
/// below x contribute one each; an atom at 1 lies on the period boundary.
inline double brute_cdf(const CircularHistogram& h, double x) {
  const double k = std::floor(x);
  const double r = x - k;
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.positions()[i] <= r) acc += h.masses()[i];
  }
  return k + acc;
}

/// Midpoint-rule integration of c(F0^-1(v), F1^-1(v + theta)) over one
/// period with `points` nodes.
inline double grid_average_cost(const CircularHistogram& h0, const CircularHistogram& h1,
                                const CostFunction& c, double theta, int points = 1000000) {
  double sum = 0.0;
  const double w = 1.0 / points;
  for (int k = 0; k < points; ++k) {
    const double v = (k + 0.5) * w;
    sum += c(brute_inverse(h0, v), brute_inverse(h1, v + theta));
  }
  return sum * w;
}

/// Exact integral of c(F0^-1(v), F1^-1(v + theta)) over (start, start + 1):
/// the integrand is constant between consecutive level crossings.
inline double window_average_cost(const CircularHistogram& h0, const CircularHistogram& h1,
                                  const CostFunction& c, double theta, double start) {
  std::vector<double> cuts{start, start + 1.0};
  const auto add_levels = [&](const CircularHistogram& h, double offset) {
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      acc += h.masses()[i];
      const double level = (i + 1 == h.size() ? 1.0 : acc) - offset;
      for (double k = std::floor(start - level) - 1.0; k <= std::ceil(start - level) + 2.0; k += 1.0) {
        const double v = level + k;
        if (v > start && v < start + 1.0) cuts.push_back(v);
      }
    }
  };
  add_levels(h0, 0.0);
  add_levels(h1, theta);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const double width = cuts[k] - cuts[k - 1];
    if (width <= 0.0) continue;
    const double mid = 0.5 * (cuts[k] + cuts[k - 1]);
    sum += c(brute_inverse(h0, mid), brute_inverse(h1, mid + theta)) * width;
  }
  return sum;
}

template <class F>
double forward_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x)) / h;
}

template <class F>
double backward_difference(F&& f, double x, double h) {
  return (f(x) - f(x - h)) / h;
}

inline CircularHistogram single_atom(double x) {
  const double p[] = {x};
  const double m[] = {1.0};
  return CircularHistogram::create(p, m);
}

inline CircularHistogram make(std::vector<double> xs, std::vector<double> ms,
                              std::optional<std::int64_t> denominator = {}) {
  return CircularHistogram::create(xs, ms, denominator);
}

/// n distinct uniform positions with uniform masses normalized to one.
inline CircularHistogram random_float_histogram(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> xs(n);
  std::vector<double> ms(n);
  for (auto& x : xs) x = 1.0 - unit(rng);
  for (auto& m : ms) m = 1.0 - unit(rng);
  const double total = std::accumulate(ms.begin(), ms.end(), 0.0);
  for (auto& m : ms) m /= total;
  return CircularHistogram::create(xs, ms);
}

/// n atoms whose masses are positive integer multiples of 1/M (n <= M).
/// With `on_grid` the positions are multiples of 1/16, which makes atoms of
/// different histograms collide more often.
inline CircularHistogram random_rational_histogram(Rng& rng, std::size_t n, std::int64_t m,
                                                   bool on_grid = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> xs;
  while (xs.size() < n) {
    const double x = on_grid ? static_cast<double>(1 + rng() % 16) / 16.0 : 1.0 - unit(rng);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::vector<std::int64_t> cuts(static_cast<std::size_t>(m - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(n - 1);
  cuts.push_back(0);
  cuts.push_back(m);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = cuts[i + 1] - cuts[i];
  return CircularHistogram::from_counts(xs, counts, m);
}

}  // namespace circot::testing
