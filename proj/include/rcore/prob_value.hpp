#pragma once

#include <cmath>
#include <string_view>

namespace rcore {

/// Why a probability result is (or is not) trustworthy.
enum class Diagnostic {
  none,
  out_of_range,  // value left [-tol, 1 + tol]
  non_finite,    // inf or nan
  propagated,    // an input to this value was already invalid
  saturated,     // exactly-one probability reached 1, geometric bound undefined
  vacuous,       // valid upper bound that exceeds 1
};

constexpr std::string_view to_string(Diagnostic d) {
  switch (d) {
    case Diagnostic::none: return "none";
    case Diagnostic::out_of_range: return "out_of_range";
    case Diagnostic::non_finite: return "non_finite";
    case Diagnostic::propagated: return "propagated";
    case Diagnostic::saturated: return "saturated";
    case Diagnostic::vacuous: return "vacuous";
  }
  return "unknown";
}

/// Tolerance used to decide whether a computed probability is physical.
inline constexpr double kProbTolerance = 1e-9;

/// A computed probability. Values are never clamped: a broken recursion
/// reports its raw output together with `valid == false`.
struct ProbValue {
  double value = 0.0;
  bool valid = true;
  Diagnostic diagnostic = Diagnostic::none;

  /// Wraps `v`, flagging it when non-finite or outside [-tol, 1 + tol].
  static ProbValue checked(double v, double tol = kProbTolerance) {
    if (!std::isfinite(v)) return {v, false, Diagnostic::non_finite};
    if (v < -tol || v > 1.0 + tol) return {v, false, Diagnostic::out_of_range};
    return {v, true, Diagnostic::none};
  }

  static ProbValue exact(double v) { return {v, true, Diagnostic::none}; }

  /// Same value, but invalid because something upstream was.
  static ProbValue propagated(double v) {
    return {v, false, Diagnostic::propagated};
  }
};

}  // namespace rcore
