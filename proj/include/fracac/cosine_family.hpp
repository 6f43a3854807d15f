#pragma once

#include <cstdint>
#include <vector>

#include "fracac/cosine_poly.hpp"
#include "fracac/double_well.hpp"
#include "fracac/energy.hpp"
#include "fracac/grid.hpp"
#include "fracac/kernel.hpp"
#include "fracac/regime.hpp"

namespace fracac {

// Width-2*eps moving average of sign(phi) at t:
//
//     (1 / 2 eps) * integral_{t-eps}^{t+eps} phi(tau) / |phi(tau)| dtau ,
//
// computed exactly from the located zeros of phi instead of by quadrature of
// the discontinuous integrand: the zeros partition the window into intervals
// of constant sign whose signed lengths are summed. Values lie in [-1, 1],
// and are exactly +-1 when phi has no zero in the window. A zero landing
// exactly on a window endpoint is assigned by the half-open convention
// [t - eps, t + eps).
double smoothed_sign(const CosinePoly& p, double t, double eps);

// Same, reusing zeros already located on an interval containing the window.
double smoothed_sign(const CosinePoly& p, double t, double eps, const ZeroSet& zeros);

// Profile u with u_i = smoothed_sign(p, node_i, eps): the mollified sign of
// phi sampled on the grid. Plateau nodes (farther than eps from every zero
// of phi) carry exactly +-1; the profile is 1/eps-Lipschitz; negating the
// coefficient vector negates the profile bit-for-bit.
Field build_member(const CosinePoly& p, double eps, const Grid1D& grid);

// Deterministic unit vectors on the sphere of R^(k+1): the 2(k+1) signed
// coordinate axes first (truncated if count is smaller), then normalized
// Gaussian draws from the seeded stream. A longer list with the same seed
// extends a shorter one, so maxima over samples are monotone in count.
std::vector<CosinePoly> sample_sphere(int k, int count, std::uint64_t seed);

// Empirical stand-in for the family's energy bound: the max of
// energy(build_member(lambda, eps, grid)) over sample_sphere(k, count, seed).
// eps is both the mollification width and, by convention, params.eps.
// A prebuilt kernel for (grid, params.s) may be supplied to amortize reuse.
double empirical_bound(int k, double eps, const Grid1D& grid, const RegimeParams& params,
                       const DoubleWell& well, int count, std::uint64_t seed,
                       const KernelMatrix* km = nullptr);

}  // namespace fracac
