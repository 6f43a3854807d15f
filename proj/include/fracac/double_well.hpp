#pragma once

#include <cmath>

#include "fracac/common.hpp"

namespace fracac {

// Double-well potential W(t) = (1 - t^2)^2 / 4: even, nonnegative, vanishing
// exactly at t = +-1 with W'(+-1) = 0 and W''(+-1) = 2, hump W(0) = 1/4.
//
// The extended kind replaces the tails outside [-1, 1] with
// outer_growth * (|t| - 1)^2. The glue at +-1 is C^1 on both sides and C^2
// exactly when outer_growth = 1; the extension satisfies t * W'(t) > 0 for
// |t| > 1, which is what pulls descent iterates back into [-1, 1].
struct DoubleWell {
  enum class Kind { standard_quartic, extended };

  Kind kind = Kind::standard_quartic;
  double outer_growth = 1.0;  // tail coefficient, extended kind only

  static DoubleWell quartic() { return {Kind::standard_quartic, 1.0}; }

  static DoubleWell extended(double growth = 1.0) {
    ensure(growth >= 1.0 && std::isfinite(growth),
           "DoubleWell: outer_growth must be >= 1");
    return {Kind::extended, growth};
  }

  bool is_extended() const { return kind == Kind::extended; }

  double value(double t) const {
    if (kind == Kind::extended && t * t > 1.0) {
      const double r = std::abs(t) - 1.0;
      return outer_growth * r * r;
    }
    const double q = 1.0 - t * t;
    return 0.25 * q * q;
  }

  double deriv(double t) const {
    if (kind == Kind::extended && t * t > 1.0) {
      const double r = std::abs(t) - 1.0;
      return 2.0 * outer_growth * (t > 0.0 ? r : -r);
    }
    return t * t * t - t;  // d/dt of (1 - t^2)^2 / 4
  }

  double second_deriv(double t) const {
    if (kind == Kind::extended && t * t > 1.0) return 2.0 * outer_growth;
    return 3.0 * t * t - 1.0;
  }

  // max of W over [-1, 1]; the well is even with its hump at 0.
  double max_on_well() const { return value(0.0); }
};

}  // namespace fracac
