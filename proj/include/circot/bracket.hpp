#pragma once

#include <string_view>

#include "circot/costs.hpp"

namespace circot {

enum class BracketProvenance { Analytic, Numeric, Declared };

std::string_view to_string(BracketProvenance p);

/// An interval known to contain every minimizer of the average cost, for any
/// pair of unit-mass marginals, and a bound on |C'| over it.
struct SearchBracket {
  double theta_lo = -6.0;
  double theta_hi = 6.0;
  double lipschitz = 1.0;
  BracketProvenance provenance = BracketProvenance::Analytic;

  double width() const noexcept { return theta_hi - theta_lo; }
};

struct BracketOptions {
  /// Use [-1, 1] for symmetric costs instead of the general interval.
  bool tight_symmetric = false;
  /// Grid step for the numeric envelopes of convex-plus-periodic costs.
  double grid_step = 1e-3;
};

SearchBracket bracket_for(const CostFunction& cost, const BracketOptions& options = {});

/// Lower and upper envelopes of the average cost at shift theta: the infimum
/// and supremum of c over u1 in [-1, 2], u2 in [theta - 1, theta + 2]. Both are
/// independent of the marginals. Numeric envelopes are conservative (the
/// lower one errs low, the upper one errs high).
double envelope_lower(const CostFunction& cost, double theta, double grid_step = 1e-3);
double envelope_upper(const CostFunction& cost, double theta, double grid_step = 1e-3);

}  // namespace circot
