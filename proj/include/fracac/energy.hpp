#pragma once

#include <Eigen/Core>

#include "fracac/double_well.hpp"
#include "fracac/grid.hpp"
#include "fracac/kernel.hpp"
#include "fracac/regime.hpp"

namespace fracac {

// Discrete Gagliardo double sum sum_{i != j} K[|i-j|] (u_i - u_j)^2.
// Nonnegative; zero exactly for constant fields. Summation order is fixed,
// so repeated calls on the same inputs are bit-identical.
double seminorm(const Field& u, const KernelMatrix& km);

// Regime-weighted energy
//     seminorm_weight * seminorm(u) + potential_weight * h * sum_i W(u_i).
double energy(const Field& u, const KernelMatrix& km, const RegimeParams& params,
              const DoubleWell& well);

// Exact derivative of energy() with respect to the samples:
//     g_i = seminorm_weight * 4 * sum_j K[|i-j|] (u_i - u_j)
//         + potential_weight * h * W'(u_i).
// The factor 4 is 2 from the square rule times 2 from the ordered pair sum.
Field gradient(const Field& u, const KernelMatrix& km, const RegimeParams& params,
               const DoubleWell& well);

// Pointwise fractional Laplacian diagnostic at an interior node, using the
// second-difference form with u extended by even reflection across both
// endpoints (valid for one domain width). Offsets run over m = 1..num_cells:
//
//     -kernel_constant * sum_m (u(x+mh) + u(x-mh) - 2 u(x)) (mh)^(-1-2s) h ;
//
// the signed two-sided offset sum is twice the one-sided sum and the
// operator carries a -1/2 prefactor, hence the single -1 here.
double frac_laplacian_diag(const Field& u, Eigen::Index x_index, const RegimeParams& params);

}  // namespace fracac
