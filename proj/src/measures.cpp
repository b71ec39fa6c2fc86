#include "circot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "circot/error.hpp"

namespace circot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyHistogram: return "EmptyHistogram";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::MassSumMismatch: return "MassSumMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownGrowth: return "UnknownGrowth";
    case ErrorCode::UnknownBracket: return "UnknownBracket";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoDenominator: return "NoDenominator";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double reduce_to_unit_interval(double x) noexcept {
  const double r = x - std::floor(x);
  return r == 0.0 ? 1.0 : r;
}

AtomIndex split_atom_index(std::int64_t g, std::int64_t n) noexcept {
  std::int64_t shifted = (g - 1) % n;
  if (shifted < 0) shifted += n;
  const std::int64_t local = shifted + 1;
  return {local, (g - local) / n};
}

namespace {

struct Atom {
  double position;
  double mass;
  std::int64_t count;
};

void check_shape(std::size_t positions, std::size_t masses) {
  if (positions == 0 || masses == 0) {
    throw Error(ErrorCode::EmptyHistogram, "histogram needs at least one atom");
  }
  if (positions != masses) {
    throw Error(ErrorCode::LengthMismatch,
                "got " + std::to_string(positions) + " positions and " +
                    std::to_string(masses) + " masses");
  }
}

// Sorts by reduced position and merges atoms that share one.
std::vector<Atom> canonicalize(std::vector<Atom> atoms) {
  for (auto& a : atoms) a.position = reduce_to_unit_interval(a.position);
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().position == a.position) {
      merged.back().mass += a.mass;
      merged.back().count += a.count;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

}  // namespace

CircularHistogram CircularHistogram::create(std::span<const double> positions,
                                            std::span<const double> masses,
                                            std::optional<std::int64_t> denominator) {
  check_shape(positions.size(), masses.size());
  if (denominator && *denominator <= 0) {
    throw Error(ErrorCode::InvalidArgument, "denominator must be a positive integer");
  }

  std::vector<Atom> atoms(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i]) || !std::isfinite(masses[i])) {
      throw Error(ErrorCode::NonFinite, "atom " + std::to_string(i) + " is not finite");
    }
    if (!(masses[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveMass,
                  "atom " + std::to_string(i) + " has mass " + std::to_string(masses[i]));
    }
    atoms[i] = {positions[i], masses[i], 0};
  }

  if (denominator) {
    const auto m = static_cast<double>(*denominator);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double scaled = atoms[i].mass * m;
      const double rounded = std::round(scaled);
      if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, scaled) || rounded < 1.0) {
        throw Error(ErrorCode::MassSumMismatch,
                    "mass of atom " + std::to_string(i) + " is not a multiple of 1/" +
                        std::to_string(*denominator));
      }
      atoms[i].count = static_cast<std::int64_t>(rounded);
    }
  }

  auto merged = canonicalize(std::move(atoms));

  CircularHistogram h;
  h.denominator_ = denominator;
  h.positions_.reserve(merged.size());
  h.masses_.reserve(merged.size());
  if (denominator) {
    std::int64_t total = 0;
    for (const auto& a : merged) total += a.count;
    if (total != *denominator) {
      throw Error(ErrorCode::MassSumMismatch,
                  "integer masses sum to " + std::to_string(total) + ", expected " +
                      std::to_string(*denominator));
    }
    h.counts_.reserve(merged.size());
    for (const auto& a : merged) {
      h.positions_.push_back(a.position);
      h.counts_.push_back(a.count);
      h.masses_.push_back(static_cast<double>(a.count) / static_cast<double>(*denominator));
    }
  } else {
    double total = 0.0;
    for (const auto& a : merged) total += a.mass;
    if (std::abs(total - 1.0) > kMassSumTolerance) {
      throw Error(ErrorCode::MassSumMismatch,
                  "masses sum to " + std::to_string(total) + ", expected 1");
    }
    for (const auto& a : merged) {
      h.positions_.push_back(a.position);
      h.masses_.push_back(a.mass);
    }
  }
  return h;
}

CircularHistogram CircularHistogram::from_counts(std::span<const double> positions,
                                                 std::span<const std::int64_t> counts,
                                                 std::int64_t denominator) {
  check_shape(positions.size(), counts.size());
  if (denominator <= 0) {
    throw Error(ErrorCode::InvalidArgument, "denominator must be a positive integer");
  }
  std::vector<double> masses(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] <= 0) {
      throw Error(ErrorCode::NonPositiveMass,
                  "atom " + std::to_string(i) + " has count " + std::to_string(counts[i]));
    }
    masses[i] = static_cast<double>(counts[i]) / static_cast<double>(denominator);
  }
  return create(positions, masses, denominator);
}

PeriodicCdf::PeriodicCdf(CircularHistogram histogram) : histogram_(std::move(histogram)) {
  const auto masses = histogram_.masses();
  cumulative_.resize(masses.size());
  std::partial_sum(masses.begin(), masses.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
  if (histogram_.denominator()) {
    const auto counts = histogram_.counts();
    cumulative_counts_.resize(counts.size());
    std::partial_sum(counts.begin(), counts.end(), cumulative_counts_.begin());
  }
}

LiftedValue PeriodicCdf::eval_lifted(double x) const {
  const double q = std::floor(x);
  const double r = x - q;
  const auto positions = histogram_.positions();
  const auto k = std::upper_bound(positions.begin(), positions.end(), r) - positions.begin();
  return {static_cast<std::int64_t>(q), k == 0 ? 0.0 : cumulative_[k - 1]};
}

LiftedValue PeriodicCdf::inverse_lifted(double v) const {
  const double q = std::floor(v);
  const double s = v - q;
  const auto k = std::upper_bound(cumulative_.begin(), cumulative_.end(), s) - cumulative_.begin();
  return {static_cast<std::int64_t>(q), histogram_.positions()[k]};
}

double PeriodicCdf::inverse_left(double v) const {
  const double q = std::floor(v);
  const double s = v - q;
  const auto positions = histogram_.positions();
  if (s == 0.0) return (q - 1.0) + positions.back();
  const auto k = std::lower_bound(cumulative_.begin(), cumulative_.end(), s) - cumulative_.begin();
  return q + positions[k];
}

double PeriodicCdf::atom_position(std::int64_t g) const {
  const auto [local, period] = split_atom_index(g, static_cast<std::int64_t>(size()));
  return histogram_.positions()[local - 1] + static_cast<double>(period);
}

double PeriodicCdf::atom_level(std::int64_t g) const {
  const auto [local, period] = split_atom_index(g, static_cast<std::int64_t>(size()));
  return cumulative_[local - 1] + static_cast<double>(period);
}

std::int64_t PeriodicCdf::atom_level_count(std::int64_t g) const {
  const auto [local, period] = split_atom_index(g, static_cast<std::int64_t>(size()));
  return cumulative_counts_[local - 1] + period * *histogram_.denominator();
}

}  // namespace circot
