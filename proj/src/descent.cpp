#include "fracac/descent.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace fracac {

namespace {

constexpr double kStagnationStep = 1e-14;
constexpr double kConstantSpread = 1e-8;

// Records whose values all sit beyond the inflection |t| = 1/sqrt(3) on one
// side belong to the trivial pair (-1, 1): the energy is strictly convex
// there (W'' > 0 and the pair form is positive semidefinite), so the well
// constant is the only critical point in that region.
constexpr double kWellBasin = 0.6;

void check_options(const DescentOptions& opts) {
  ensure(opts.max_iters >= 0, "descend: max_iters must be nonnegative");
  ensure(opts.grad_tol > 0.0, "descend: grad_tol must be positive");
  ensure(opts.initial_step > 0.0, "descend: initial_step must be positive");
  if (opts.step_rule == StepRule::backtracking)
    ensure(opts.shrink > 0.0 && opts.shrink < 1.0, "descend: shrink must lie in (0,1)");
}

void reproject(Eigen::ArrayXd& v, bool clamp_box, bool mean_zero) {
  if (clamp_box) v = v.min(1.0).max(-1.0);
  if (mean_zero) v -= v.mean();
}

CriticalPointRecord finish(Field u, double energy_value, double grad_norm, int iterations,
                           bool converged, std::vector<double> trace) {
  const double spread = u.values.maxCoeff() - u.values.minCoeff();
  CriticalPointRecord rec{std::move(u), energy_value, grad_norm, iterations, converged,
                          spread < kConstantSpread, 0.0, -1, std::move(trace)};
  rec.mean_value = mean(rec.field);
  return rec;
}

CriticalPointRecord descend_impl(const Field& u0, const KernelMatrix& km,
                                 const RegimeParams& params, const DoubleWell& well,
                                 const DescentOptions& opts, bool clamp_box) {
  check_options(opts);
  ensure(well.is_extended(), "descend: the extended potential is required");

  Eigen::ArrayXd u = u0.values;
  reproject(u, clamp_box, opts.mean_zero);

  Field cur(u0.grid, std::move(u));
  double e_cur = energy(cur, km, params, well);
  std::vector<double> trace{e_cur};

  double step = opts.initial_step;
  double grad_norm = 0.0;

  for (int iter = 0; iter <= opts.max_iters; ++iter) {
    Field g = gradient(cur, km, params, well);
    if (opts.mean_zero) g.values -= g.values.mean();

    if (!g.values.isFinite().all()) {
      Eigen::Index bad = 0;
      for (; bad < g.values.size(); ++bad)
        if (!std::isfinite(g.values[bad])) break;
      std::ostringstream msg;
      msg << "descend: non-finite gradient at iteration " << iter << ", component " << bad
          << " (iterate value " << cur.values[bad] << ", energy " << e_cur << ")";
      throw numerical_error(msg.str());
    }

    grad_norm = g.values.abs().maxCoeff();
    if (grad_norm <= opts.grad_tol)
      return finish(std::move(cur), e_cur, grad_norm, iter, true, std::move(trace));
    if (iter == opts.max_iters) break;

    if (opts.step_rule == StepRule::fixed) {
      Eigen::ArrayXd next = cur.values - opts.initial_step * g.values;
      reproject(next, clamp_box, opts.mean_zero);
      cur = Field(cur.grid, std::move(next));
      e_cur = energy(cur, km, params, well);
    } else {
      double trial = step;
      for (;;) {
        Eigen::ArrayXd next = cur.values - trial * g.values;
        reproject(next, clamp_box, opts.mean_zero);
        Field candidate(cur.grid, std::move(next));
        const double e_next = energy(candidate, km, params, well);
        if (e_next < e_cur) {
          cur = std::move(candidate);
          e_cur = e_next;
          step = 2.0 * trial;  // recover after cautious stretches
          break;
        }
        trial *= opts.shrink;
        if (trial < kStagnationStep) {
          std::ostringstream msg;
          msg << "descend: stagnation at iteration " << iter << " (energy " << e_cur
              << ", gradient sup-norm " << grad_norm << ", step below " << kStagnationStep
              << ")";
          throw numerical_error(msg.str());
        }
      }
    }
    trace.push_back(e_cur);
  }

  return finish(std::move(cur), e_cur, grad_norm, opts.max_iters, false, std::move(trace));
}

double l2_distance(const Field& a, const Eigen::ArrayXd& b) {
  return std::sqrt(a.grid.h * (a.values - b).square().sum());
}

}  // namespace

CriticalPointRecord descend(const Field& u0, const KernelMatrix& km, const RegimeParams& params,
                            const DoubleWell& well, const DescentOptions& opts) {
  return descend_impl(u0, km, params, well, opts, /*clamp_box=*/false);
}

bool truncation_check(const CriticalPointRecord& rec, const DoubleWell& well, double tol) {
  ensure(rec.converged, "truncation_check: record must be converged");
  ensure(well.is_extended(), "truncation_check: the extended potential is required");
  return rec.field.values.abs().maxCoeff() <= 1.0 + tol;
}

CriticalPointRecord constrained_min(const KernelMatrix& km, const RegimeParams& params,
                                    const DoubleWell& well, const DescentOptions& opts,
                                    const std::vector<Field>& seeds) {
  ensure(!seeds.empty(), "constrained_min: need at least one seed");

  DescentOptions copts = opts;
  copts.mean_zero = true;

  std::vector<std::string> failures;
  std::optional<CriticalPointRecord> best;

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    try {
      CriticalPointRecord rec =
          descend_impl(seeds[i], km, params, well, copts, /*clamp_box=*/true);
      rec.source_index = int(i);
      if (!rec.converged) {
        std::ostringstream msg;
        msg << "seed " << i << ": not converged after " << rec.iterations
            << " iterations (gradient sup-norm " << rec.grad_norm << ")";
        failures.push_back(msg.str());
        continue;
      }
      if (!best || rec.energy_value < best->energy_value) best = std::move(rec);
    } catch (const numerical_error& err) {
      std::ostringstream msg;
      msg << "seed " << i << ": " << err.what();
      failures.push_back(msg.str());
    }
  }

  if (!best) {
    std::ostringstream msg;
    msg << "constrained_min: all " << seeds.size() << " starts failed:";
    for (const std::string& f : failures) msg << "\n  " << f;
    throw numerical_error(msg.str());
  }
  return *best;
}

std::vector<CriticalPair> dedup_pairs(const std::vector<CriticalPointRecord>& records,
                                      const KernelMatrix& km, double dedup_tol) {
  for (const CriticalPointRecord& r : records)
    ensure(r.converged, "dedup_pairs: records must be converged");
  const double tol =
      dedup_tol >= 0.0 ? dedup_tol : 1e-3 * std::sqrt(km.grid.length());

  std::vector<const CriticalPointRecord*> sorted;
  for (const CriticalPointRecord& r : records) {
    if (r.is_constant) continue;
    if (r.field.values.minCoeff() > kWellBasin || r.field.values.maxCoeff() < -kWellBasin)
      continue;  // the pair (-1, 1)
    sorted.push_back(&r);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CriticalPointRecord* a, const CriticalPointRecord* b) {
                     return a->source_index < b->source_index;
                   });

  std::vector<CriticalPair> pairs;
  for (const CriticalPointRecord* r : sorted) {
    bool merged = false;
    for (CriticalPair& p : pairs) {
      const double d_plus = l2_distance(r->field, p.rep.field.values);
      const double d_minus = l2_distance(r->field, (-p.rep.field.values).eval());
      if (std::min(d_plus, d_minus) <= tol) {
        ++p.multiplicity;
        merged = true;
        break;
      }
    }
    if (merged) continue;

    CriticalPair pair{*r, 1};
    // Orient the representative: nonnegative mean, or for zero-mean profiles
    // a nonnegative first significant sample.
    bool flip = false;
    if (std::abs(pair.rep.mean_value) > 1e-12) {
      flip = pair.rep.mean_value < 0.0;
    } else {
      for (Eigen::Index i = 0; i < pair.rep.field.values.size(); ++i) {
        if (std::abs(pair.rep.field.values[i]) > 1e-12) {
          flip = pair.rep.field.values[i] < 0.0;
          break;
        }
      }
    }
    if (flip) {
      pair.rep.field.values = -pair.rep.field.values;
      pair.rep.mean_value = -pair.rep.mean_value;
    }
    pairs.push_back(std::move(pair));
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const CriticalPair& a, const CriticalPair& b) {
    return a.rep.energy_value < b.rep.energy_value;
  });
  return pairs;
}

}  // namespace fracac
