#pragma once

#include <vector>

#include "fracac/double_well.hpp"
#include "fracac/energy.hpp"
#include "fracac/grid.hpp"
#include "fracac/kernel.hpp"
#include "fracac/regime.hpp"

namespace fracac {

enum class StepRule { fixed, backtracking };

struct DescentOptions {
  int max_iters = 10000;
  double grad_tol = 1e-4;  // stationarity threshold on the gradient sup-norm
  StepRule step_rule = StepRule::backtracking;
  double initial_step = 1.0;
  double shrink = 0.5;     // backtracking contraction, in (0,1)
  bool mean_zero = false;  // project iterates and gradients onto zero mean
};

struct CriticalPointRecord {
  Field field;
  double energy_value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool is_constant = false;
  double mean_value = 0.0;
  int source_index = -1;             // seed identifier, used for deterministic dedup
  std::vector<double> energy_trace;  // energy per accepted iterate, non-increasing
                                     // under the backtracking rule
};

// Steepest descent u <- u - step * gradient(u) under the extended potential
// (iterates may transiently leave [-1, 1], and the extension pulls them
// back). Backtracking shrinks the trial step until the energy strictly
// decreases, then lets it grow again; the fixed rule applies initial_step
// unconditionally. With opts.mean_zero each iterate is re-projected onto
// zero mean and the gradient is replaced by its zero-mean component.
//
// Throws numerical_error on stagnation (no decrease with trial steps below
// 1e-14) or on a non-finite gradient.
CriticalPointRecord descend(const Field& u0, const KernelMatrix& km, const RegimeParams& params,
                            const DoubleWell& well, const DescentOptions& opts);

// Whether a converged record satisfies max_i |u_i| <= 1 + tol. Every critical
// point of the extended-potential energy must pass: taking the variation
// against u minus its clamp to [-1, 1] forces the overshoot to vanish.
bool truncation_check(const CriticalPointRecord& rec, const DoubleWell& well, double tol = 1e-8);

// Multi-start projected descent for the constrained minimum
//     min { energy(u) : -1 <= u <= 1, mean(u) = 0 } :
// every seed is projected to zero mean, values are clamped to [-1, 1] after
// each step, and the best converged record is returned (its energy_value is
// the empirical threshold m_eps). Throws numerical_error with an aggregated
// per-start report when no start converges.
CriticalPointRecord constrained_min(const KernelMatrix& km, const RegimeParams& params,
                                    const DoubleWell& well, const DescentOptions& opts,
                                    const std::vector<Field>& seeds);

// A nonconstant stationary profile identified with its negation. The
// representative is oriented so its mean (or, for zero-mean profiles, its
// first significant sample) is nonnegative.
struct CriticalPair {
  CriticalPointRecord rep;
  int multiplicity = 1;  // how many records merged into this pair
};

// Clusters converged records by discrete L2 distance (u and -u fold into one
// pair), drops constant records, and returns distinct pairs sorted by
// energy. dedup_tol < 0 selects the default 1e-3 * sqrt(|Omega|).
std::vector<CriticalPair> dedup_pairs(const std::vector<CriticalPointRecord>& records,
                                      const KernelMatrix& km, double dedup_tol = -1.0);

}  // namespace fracac
