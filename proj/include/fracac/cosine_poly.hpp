#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "fracac/common.hpp"

namespace fracac {

// Cosine polynomial phi(t) = sum_{m=0}^{k} lambda[m] * cos(m t). Members of
// the profile family carry coefficients on the unit sphere of R^(k+1).
struct CosinePoly {
  Eigen::VectorXd lambda;

  explicit CosinePoly(Eigen::VectorXd coeffs) : lambda(std::move(coeffs)) {
    ensure(lambda.size() >= 1, "CosinePoly: need at least the constant coefficient");
  }

  int order() const { return int(lambda.size()) - 1; }

  double eval(double t) const {
    double acc = 0.0;
    for (Eigen::Index m = 0; m < lambda.size(); ++m)
      acc += lambda[m] * std::cos(double(m) * t);
    return acc;
  }
  double operator()(double t) const { return eval(t); }

  bool unit_norm(double tol = 1e-12) const { return std::abs(lambda.norm() - 1.0) <= tol; }

  // sum_m m |lambda_m|, a global bound on |phi'|; used to decide which scan
  // cells could hide a zero.
  double deriv_bound() const {
    double b = 0.0;
    for (Eigen::Index m = 1; m < lambda.size(); ++m) b += double(m) * std::abs(lambda[m]);
    return b;
  }
};

// Zeros of phi on an interval, sorted increasing. tangential_suspect is set
// when |phi| dipped below 1e-8 at some scan point without a sign change:
// even-multiplicity touches are undetected by design (they do not affect the
// sign of phi, hence not the mollified profiles) and are flagged instead.
struct ZeroSet {
  std::vector<double> zeros;
  bool tangential_suspect = false;

  int count() const { return int(zeros.size()); }
};

// Sign-change scan at resolution (b-a)/(512*k) followed by bisection to
// width 1e-12. Cells whose endpoint values are small enough that a zero
// could hide between samples (|phi| < step * deriv_bound) are rescanned at
// 64x resolution, recursively, so near-tangential zero pairs are resolved
// well below the base resolution.
ZeroSet find_zeros(const CosinePoly& p, double a, double b);

}  // namespace fracac
