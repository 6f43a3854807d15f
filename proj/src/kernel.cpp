#include "fracac/kernel.hpp"

#include <cmath>

namespace fracac {

namespace {

// Second antiderivative of t^(-1-2s): H''(t) = t^(-1-2s).
// The cell-pair integral over two width-h cells whose centers are d*h apart
// is the second difference H((d+1)h) - 2 H(dh) + H((d-1)h).
struct SecondAntideriv {
  double s;
  bool log_case;  // s == 1/2 up to the regime tolerance

  double operator()(double t) const {
    if (t == 0.0) return 0.0;  // valid limit only when 1 - 2s > 0
    if (log_case) return -std::log(t);
    const double p = 1.0 - 2.0 * s;
    return std::pow(t, p) / (p * (-2.0 * s));
  }
};

}  // namespace

KernelMatrix build_kernel(const Grid1D& grid, const RegimeParams& params) {
  const double s = params.s;
  const double h = grid.h;
  const Eigen::Index n = grid.num_cells;

  const SecondAntideriv H{s, params.regime == Regime::half};

  // Local integrals of |x-y|^(1-2s) for the piecewise-linear model.
  const double q = 1.0 - 2.0 * s;  // local exponent, in (-1, 1)
  const double denom = (q + 1.0) * (q + 2.0);
  const double j_adj = (std::pow(2.0 * h, q + 2.0) - 2.0 * std::pow(h, q + 2.0)) / denom;
  const double j_self = 2.0 * std::pow(h, q + 2.0) / denom;

  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index d = 2; d < n; ++d) {
    const double t = double(d) * h;
    w[d] = H(t + h) - 2.0 * H(t) + H(t - h);
  }

  // Touching cells: exact integral where finite, otherwise the linear model.
  // The ordered pair sum visits each edge twice, so folding self_coeff / 2
  // into the adjacent weight applies each cell's self term exactly once.
  const double adjacent = (params.regime == Regime::sub_half)
                              ? H(2.0 * h) - 2.0 * H(h)  // H(0) = 0 for s < 1/2
                              : j_adj / (h * h);
  const double self_coeff = j_self / (h * h);
  if (n > 1) w[1] = adjacent + 0.5 * self_coeff;

  return KernelMatrix{grid, s, std::move(w), self_coeff};
}

}  // namespace fracac
