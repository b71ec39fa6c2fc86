#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace circot {

/// Mass-sum tolerance for histograms without a declared denominator.
inline constexpr double kMassSumTolerance = 1e-12;

/// A discrete positive measure of unit mass on the circle, stored as one
/// period (0, 1] of its periodic lift. Atoms are sorted and unique.
///
/// When a denominator M is declared every mass is an integer multiple of 1/M
/// and the integer counts are kept alongside the floating masses; downstream
/// code uses them for exact level comparisons.
class CircularHistogram {
 public:
  /// Validating constructor. Positions are reduced modulo 1 into (0, 1],
  /// co-sorted with their masses, and atoms landing on the same reduced
  /// position are merged.
  static CircularHistogram create(std::span<const double> positions,
                                  std::span<const double> masses,
                                  std::optional<std::int64_t> denominator = {});

  /// Same as create() but with masses given as integer counts out of
  /// `denominator`.
  static CircularHistogram from_counts(std::span<const double> positions,
                                       std::span<const std::int64_t> counts,
                                       std::int64_t denominator);

  std::size_t size() const noexcept { return positions_.size(); }
  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> masses() const noexcept { return masses_; }
  std::optional<std::int64_t> denominator() const noexcept { return denominator_; }
  /// Integer masses (count / denominator); empty without a denominator.
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

 private:
  CircularHistogram() = default;

  std::vector<double> positions_;
  std::vector<double> masses_;
  std::vector<std::int64_t> counts_;
  std::optional<std::int64_t> denominator_;
};

/// A real number split into an integer period and a part inside one period.
/// Keeping the period as an integer makes F(x + 1) = F(x) + 1 an exact
/// identity instead of a floating-point one.
struct LiftedValue {
  std::int64_t period = 0;
  double fraction = 0.0;

  double value() const noexcept { return static_cast<double>(period) + fraction; }
};

/// Distribution function of the periodic lift of a CircularHistogram,
/// normalized by F(0) = 0, together with its right-continuous inverse.
///
/// Lifted atoms are addressed by a 1-based global index g: g = j + q * n is
/// atom j (1..n) shifted by q periods, so index n + 1 is the first atom of the
/// next period and index 0 the last atom of the previous one.
class PeriodicCdf {
 public:
  explicit PeriodicCdf(CircularHistogram histogram);

  const CircularHistogram& histogram() const noexcept { return histogram_; }
  std::size_t size() const noexcept { return histogram_.size(); }

  /// cumulative()[i] = sum of masses[0..i]; the last entry is exactly 1.
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  /// Integer cumulative counts; empty without a denominator.
  std::span<const std::int64_t> cumulative_counts() const noexcept {
    return cumulative_counts_;
  }

  /// F(x) = mu((0, x]) extended by F(x + 1) = F(x) + 1.
  double eval(double x) const { return eval_lifted(x).value(); }
  LiftedValue eval_lifted(double x) const;

  /// inf{x : v < F(x)}; `fraction` of the result is an atom position.
  double inverse(double v) const { return inverse_lifted(v).value(); }
  LiftedValue inverse_lifted(double v) const;

  /// Left limit F^{-1}(v - 0) = inf{x : v <= F(x)}.
  double inverse_left(double v) const;

  /// Position of the lifted atom with global index g.
  double atom_position(std::int64_t g) const;
  /// F at the lifted atom with global index g (g = 0 gives 0).
  double atom_level(std::int64_t g) const;
  /// Integer counterpart of atom_level, in units of 1/denominator.
  std::int64_t atom_level_count(std::int64_t g) const;

 private:
  CircularHistogram histogram_;
  std::vector<double> cumulative_;
  std::vector<std::int64_t> cumulative_counts_;
};

/// Splits a global atom index into (1-based local index, period).
struct AtomIndex {
  std::int64_t local = 1;
  std::int64_t period = 0;
};
AtomIndex split_atom_index(std::int64_t g, std::int64_t n) noexcept;

/// Reduces x into (0, 1].
double reduce_to_unit_interval(double x) noexcept;

}  // namespace circot
