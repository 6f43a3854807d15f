#pragma once

#include <Eigen/Core>

#include "fracac/grid.hpp"
#include "fracac/regime.hpp"

namespace fracac {

// Precomputed pair weights for the discrete Gagliardo double sum on a
// uniform grid,
//
//     seminorm(u) = sum_{i != j} K[|i-j|] * (u_i - u_j)^2 ,
//
// ordered pairs, so each unordered pair is counted twice.
//
// For |i-j| >= 2 the weight is the exact closed-form cell-pair integral of
// |x-y|^(-1-2s). Touching cells use that closed form where it is finite
// (s < 1/2); otherwise the integrand is modelled with u piecewise linear,
// which turns the local kernel into |x-y|^(1-2s) and keeps it integrable for
// every s in (0,1). The self-cell integral under the same piecewise-linear
// model gives the per-cell coefficient self_coeff; each cell attributes half
// of it to each neighbouring edge, so the whole sum keeps the
// translation-invariant pair form above (pair_weights[1] already contains
// the attributed self term).
struct KernelMatrix {
  Grid1D grid;
  double s;
  Eigen::ArrayXd pair_weights;  // indexed by d = |i-j|; entry 0 unused
  double self_coeff;            // per-cell self-interaction coefficient

  double coeff(Eigen::Index i, Eigen::Index j) const {
    ensure(i != j, "KernelMatrix::coeff: diagonal entries are handled by self_coeff");
    ensure(i >= 0 && j >= 0 && i < grid.num_cells && j < grid.num_cells,
           "KernelMatrix::coeff: index out of range");
    return pair_weights[i > j ? i - j : j - i];
  }
};

KernelMatrix build_kernel(const Grid1D& grid, const RegimeParams& params);

}  // namespace fracac
