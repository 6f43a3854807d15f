#include "fracac/cosine_family.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "fracac/rng.hpp"

namespace fracac {

namespace {

double sign_at(const CosinePoly& p, double t) { return p.eval(t) >= 0.0 ? 1.0 : -1.0; }

// Window average of sign(phi) over [t - eps, t + eps) given the zeros of phi
// inside the window, sorted increasing.
double window_average(const CosinePoly& p, double t, double eps,
                      const double* first, const double* last) {
  if (first == last) return sign_at(p, t);  // constant sign: exactly +-1

  const double lo = t - eps;
  const double hi = t + eps;
  double sum = 0.0;
  double prev = lo;
  for (const double* z = first; z != last; ++z) {
    if (*z > prev) {
      sum += sign_at(p, 0.5 * (prev + *z)) * (*z - prev);
      prev = *z;
    }
  }
  if (hi > prev) sum += sign_at(p, 0.5 * (prev + hi)) * (hi - prev);
  return std::clamp(sum / (2.0 * eps), -1.0, 1.0);
}

}  // namespace

double smoothed_sign(const CosinePoly& p, double t, double eps, const ZeroSet& zeros) {
  ensure(eps > 0.0, "smoothed_sign: eps must be positive");
  const auto first = std::lower_bound(zeros.zeros.begin(), zeros.zeros.end(), t - eps);
  const auto last = std::lower_bound(zeros.zeros.begin(), zeros.zeros.end(), t + eps);
  const double* base = zeros.zeros.data();
  return window_average(p, t, eps, base + (first - zeros.zeros.begin()),
                        base + (last - zeros.zeros.begin()));
}

double smoothed_sign(const CosinePoly& p, double t, double eps) {
  ensure(eps > 0.0, "smoothed_sign: eps must be positive");
  const ZeroSet zs = find_zeros(p, t - eps, t + eps);
  return window_average(p, t, eps, zs.zeros.data(), zs.zeros.data() + zs.zeros.size());
}

Field build_member(const CosinePoly& p, double eps, const Grid1D& grid) {
  ensure(eps > 0.0, "build_member: eps must be positive");
  ensure(p.unit_norm(1e-10), "build_member: coefficients must lie on the unit sphere");

  // One zero scan covers every node window.
  const ZeroSet zeros = find_zeros(p, grid.a - eps, grid.b + eps);
  Eigen::ArrayXd v(grid.num_cells);
  for (Eigen::Index i = 0; i < grid.num_cells; ++i)
    v[i] = smoothed_sign(p, grid.node(i), eps, zeros);
  return Field(grid, std::move(v));
}

std::vector<CosinePoly> sample_sphere(int k, int count, std::uint64_t seed) {
  ensure(k >= 0, "sample_sphere: k must be nonnegative");
  ensure(count >= 1, "sample_sphere: count must be positive");

  std::vector<CosinePoly> out;
  out.reserve(count);

  // Signed coordinate axes first: the pure modes are always represented.
  for (int m = 0; m <= k && int(out.size()) < count; ++m) {
    for (double sgn : {1.0, -1.0}) {
      if (int(out.size()) >= count) break;
      Eigen::VectorXd axis = Eigen::VectorXd::Zero(k + 1);
      axis[m] = sgn;
      out.emplace_back(std::move(axis));
    }
  }

  std::mt19937_64 gen(mix64(seed));
  NormalDraw normal;
  while (int(out.size()) < count) {
    Eigen::VectorXd v(k + 1);
    for (int m = 0; m <= k; ++m) v[m] = normal(gen);
    const double norm = v.norm();
    if (norm < 1e-12) continue;
    out.emplace_back(Eigen::VectorXd(v / norm));
  }
  return out;
}

double empirical_bound(int k, double eps, const Grid1D& grid, const RegimeParams& params,
                       const DoubleWell& well, int count, std::uint64_t seed,
                       const KernelMatrix* km) {
  std::optional<KernelMatrix> local;
  if (!km) local.emplace(build_kernel(grid, params));
  const KernelMatrix& kernel = km ? *km : *local;
  ensure(kernel.grid == grid, "empirical_bound: kernel grid mismatch");

  double bound = 0.0;
  for (const CosinePoly& p : sample_sphere(k, count, seed)) {
    const Field u = build_member(p, eps, grid);
    bound = std::max(bound, energy(u, kernel, params, well));
  }
  return bound;
}

}  // namespace fracac
