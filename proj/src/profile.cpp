#include "circot/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "circot/error.hpp"

namespace circot {

using i128 = __int128;

Shift Shift::rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  Shift s;
  s.numerator_ = numerator / g;
  s.denominator_ = denominator / g;
  s.value_ = static_cast<double>(s.numerator_) / static_cast<double>(s.denominator_);
  return s;
}

std::int64_t Shift::floor() const noexcept {
  if (!is_rational()) return static_cast<std::int64_t>(std::floor(value_));
  std::int64_t q = numerator_ / denominator_;
  if (numerator_ % denominator_ != 0 && numerator_ < 0) --q;
  return q;
}

int Shift::compare_scaled(std::int64_t scale, std::int64_t n) const noexcept {
  if (is_rational()) {
    const i128 lhs = static_cast<i128>(numerator_) * scale;
    const i128 rhs = static_cast<i128>(n) * denominator_;
    return (lhs > rhs) - (lhs < rhs);
  }
  const double d = std::fma(value_, static_cast<double>(scale), -static_cast<double>(n));
  return (d > 0.0) - (d < 0.0);
}

double Shift::scaled_minus(std::int64_t scale, std::int64_t n) const noexcept {
  if (is_rational()) {
    const i128 num = static_cast<i128>(numerator_) * scale - static_cast<i128>(n) * denominator_;
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(denominator_));
  }
  return std::fma(value_, static_cast<double>(scale), -static_cast<double>(n));
}

std::optional<std::int64_t> common_denominator(const CircularHistogram& h0,
                                               const CircularHistogram& h1) {
  const auto m0 = h0.denominator();
  const auto m1 = h1.denominator();
  if (!m0 || !m1) return std::nullopt;
  const std::int64_t m = std::lcm(*m0, *m1);
  if (m <= 0 || m > (std::int64_t{1} << 40)) return std::nullopt;
  return m;
}

double level_tolerance(double theta) noexcept { return 1e-12 * std::max(1.0, std::abs(theta)); }

namespace {

// Levels as integers over a common denominator M; theta enters only through
// exact sign tests of theta * M - n.
class ExactLevels {
 public:
  ExactLevels(const PeriodicCdf& f0, const PeriodicCdf& f1, const Shift& theta, std::int64_t m)
      : f0_(f0),
        f1_(f1),
        theta_(theta),
        m_(m),
        s0_(m / *f0.histogram().denominator()),
        s1_(m / *f1.histogram().denominator()) {}

  bool target_in_window(std::int64_t g) const {
    return theta_.compare_scaled(m_, target_count(g)) < 0;
  }
  int compare(std::int64_t i, std::int64_t g) const {
    return theta_.compare_scaled(m_, target_count(g) - source_count(i));
  }
  double source_level(std::int64_t i) const {
    return static_cast<double>(source_count(i)) / static_cast<double>(m_);
  }
  double target_level(std::int64_t g) const {
    return -theta_.scaled_minus(m_, target_count(g)) / static_cast<double>(m_);
  }
  Shift breakpoint(std::int64_t g, std::int64_t i) const {
    return Shift::rational(target_count(g) - source_count(i), m_);
  }

 private:
  std::int64_t source_count(std::int64_t i) const { return f0_.atom_level_count(i) * s0_; }
  std::int64_t target_count(std::int64_t g) const { return f1_.atom_level_count(g) * s1_; }

  const PeriodicCdf& f0_;
  const PeriodicCdf& f1_;
  const Shift& theta_;
  std::int64_t m_, s0_, s1_;
};

// Levels as doubles; coincidence is decided with level_tolerance().
class FloatLevels {
 public:
  FloatLevels(const PeriodicCdf& f0, const PeriodicCdf& f1, const Shift& theta)
      : f0_(f0),
        f1_(f1),
        period_(std::floor(theta.value())),
        offset_(theta.value() - period_),
        tol_(level_tolerance(theta.value())) {}

  bool target_in_window(std::int64_t g) const { return target_level(g) > tol_; }
  int compare(std::int64_t i, std::int64_t g) const {
    const double d = source_level(i) - target_level(g);
    if (std::abs(d) <= tol_) return 0;
    return d < 0.0 ? -1 : 1;
  }
  double source_level(std::int64_t i) const { return f0_.atom_level(i); }
  double target_level(std::int64_t g) const {
    const auto [local, period] = split_atom_index(g, static_cast<std::int64_t>(f1_.size()));
    return (f1_.cumulative()[local - 1] - offset_) + (static_cast<double>(period) - period_);
  }
  Shift breakpoint(std::int64_t g, std::int64_t i) const {
    return Shift(f1_.atom_level(g) - f0_.atom_level(i));
  }

 private:
  const PeriodicCdf& f0_;
  const PeriodicCdf& f1_;
  double period_;
  double offset_;
  double tol_;
};

template <class Levels>
void merge_levels(const PeriodicCdf& f0, const PeriodicCdf& f1, const Levels& lv,
                  MergedProfile& out) {
  const auto n0 = static_cast<std::int64_t>(f0.size());
  const auto n1 = static_cast<std::int64_t>(f1.size());
  const std::int64_t total = n0 + n1;

  // First lifted target atom whose shifted level is inside the window (0, 1].
  const std::int64_t p = out.theta.floor();
  std::int64_t lo = 1 + p * n1;
  std::int64_t hi = (p + 2) * n1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (lv.target_in_window(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::int64_t first_target = lo;

  out.levels.assign(1, 0.0);
  out.levels.reserve(static_cast<std::size_t>(total) + 1);
  out.segments.reserve(static_cast<std::size_t>(total));
  out.target_levels.reserve(static_cast<std::size_t>(n1));

  std::int64_t source = 1;
  std::int64_t target = first_target;
  bool pending_tie = false;
  for (std::int64_t k = 1; k <= total; ++k) {
    ProfileSegment seg;
    seg.source = source;
    seg.target = target;
    seg.source_position = f0.atom_position(source);
    seg.target_position = f1.atom_position(target);

    int order;
    if (k < total) {
      order = lv.compare(source, target);
      ++out.comparisons;
    } else {
      // One value is left over; its family is known without comparing.
      order = source <= n0 ? -1 : 1;
    }

    const double prev = out.levels.back();
    double level;
    if (order <= 0) {
      level = lv.source_level(source);
      if (order == 0) {
        pending_tie = true;
        out.exceptional = true;
      }
      ++source;
    } else {
      level = pending_tie ? prev : lv.target_level(target);
      out.target_levels.push_back({target, source, pending_tie ? source - 1 : source, pending_tie});
      pending_tie = false;
      ++target;
    }
    level = std::max(level, prev);
    seg.width = level - prev;
    out.levels.push_back(level);
    out.segments.push_back(seg);
  }
  out.levels.back() = 1.0;

  // Next coincidences: as theta grows every target level slides down onto the
  // source level strictly below it, and as theta shrinks up onto the one above.
  bool first = true;
  for (const auto& t : out.target_levels) {
    const Shift up = lv.breakpoint(t.target, t.source_below - 1);
    const Shift down = lv.breakpoint(t.target, t.source_above);
    if (first || up.value() < out.breakpoint_above.value()) out.breakpoint_above = up;
    if (first || down.value() > out.breakpoint_below.value()) out.breakpoint_below = down;
    first = false;
  }
}

}  // namespace

MergedProfile build_profile(const PeriodicCdf& f0, const PeriodicCdf& f1, const Shift& theta) {
  MergedProfile out;
  out.theta = theta;
  if (const auto m = common_denominator(f0.histogram(), f1.histogram())) {
    out.exact_levels = true;
    merge_levels(f0, f1, ExactLevels(f0, f1, out.theta, *m), out);
  } else {
    merge_levels(f0, f1, FloatLevels(f0, f1, out.theta), out);
  }
  return out;
}

double avg_cost(const MergedProfile& profile, const CostFunction& cost,
                std::size_t* evaluations) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& s : profile.segments) {
    if (s.width <= 0.0) continue;
    sum += cost(s.source_position, s.target_position) * s.width;
    ++count;
  }
  if (evaluations) *evaluations += count;
  return sum;
}

AvgCostEval evaluate_profile(const MergedProfile& profile, const PeriodicCdf& f0,
                             const PeriodicCdf& f1, const CostFunction& cost) {
  AvgCostEval e;
  e.theta = profile.theta;
  e.exceptional = profile.exceptional;
  e.breakpoint_above = profile.breakpoint_above;
  e.breakpoint_below = profile.breakpoint_below;
  e.value = avg_cost(profile, cost, &e.cost_evaluations);

  for (const auto& t : profile.target_levels) {
    const double y = f1.atom_position(t.target);
    const double y_next = f1.atom_position(t.target + 1);
    const double x_above = f0.atom_position(t.source_above);
    const double left = cost(x_above, y_next) - cost(x_above, y);
    e.left_derivative += left;
    if (t.source_below == t.source_above) {
      e.right_derivative += left;
      e.cost_evaluations += 2;
    } else {
      const double x_below = f0.atom_position(t.source_below);
      e.right_derivative += cost(x_below, y_next) - cost(x_below, y);
      e.cost_evaluations += 4;
    }
  }
  return e;
}

AvgCostEval avg_cost_derivatives(const PeriodicCdf& f0, const PeriodicCdf& f1,
                                 const CostFunction& cost, const Shift& theta) {
  return evaluate_profile(build_profile(f0, f1, theta), f0, f1, cost);
}

}  // namespace circot
