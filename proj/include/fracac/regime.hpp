#pragma once

#include <cmath>

#include "fracac/common.hpp"

namespace fracac {

enum class Regime { sub_half, half, super_half };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::sub_half: return "sub_half";
    case Regime::half: return "half";
    case Regime::super_half: return "super_half";
  }
  return "?";
}

// Scaling regime of the fractional Allen-Cahn energy. The regime follows
// from s alone and fixes the weight pair multiplying the Gagliardo double
// sum and the potential integral:
//
//     s < 1/2 :  (1,                eps^(-2s))
//     s = 1/2 :  (1 / |log eps|,    1 / |eps log eps|)
//     s > 1/2 :  (eps^(2s-1) / 2,   1 / eps)
//
// kernel_constant is a free normalizer used only by the pointwise fractional
// Laplacian diagnostic; the energies themselves carry no such constant.
struct RegimeParams {
  double s;
  double eps;
  Regime regime;
  double kernel_constant;

  static constexpr double half_tol = 1e-12;

  static RegimeParams make(double s, double eps, double kernel_constant = 1.0) {
    ensure(std::isfinite(s) && s > 0.0 && s < 1.0, "RegimeParams: s must lie in (0,1)");
    ensure(std::isfinite(eps) && eps > 0.0, "RegimeParams: eps must be positive");
    ensure(std::isfinite(kernel_constant) && kernel_constant > 0.0,
           "RegimeParams: kernel_constant must be positive");
    Regime r = Regime::half;
    if (std::abs(s - 0.5) > half_tol) r = (s < 0.5) ? Regime::sub_half : Regime::super_half;
    if (r == Regime::half)
      ensure(eps != 1.0, "RegimeParams: eps = 1 makes |log eps| vanish in the s = 1/2 regime");
    return {s, eps, r, kernel_constant};
  }

  double seminorm_weight() const {
    switch (regime) {
      case Regime::sub_half: return 1.0;
      case Regime::half: return 1.0 / std::abs(std::log(eps));
      case Regime::super_half: return 0.5 * std::pow(eps, 2.0 * s - 1.0);
    }
    return 0.0;
  }

  double potential_weight() const {
    switch (regime) {
      case Regime::sub_half: return std::pow(eps, -2.0 * s);
      case Regime::half: return 1.0 / std::abs(eps * std::log(eps));
      case Regime::super_half: return 1.0 / eps;
    }
    return 0.0;
  }
};

}  // namespace fracac
