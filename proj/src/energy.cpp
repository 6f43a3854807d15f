#include "fracac/energy.hpp"

#include <cmath>

namespace fracac {

namespace {

void check_consistent(const Field& u, const KernelMatrix& km) {
  ensure(u.grid == km.grid, "energy: field grid does not match kernel grid");
}

void check_consistent(const KernelMatrix& km, const RegimeParams& params) {
  ensure(km.s == params.s, "energy: kernel was built for a different s");
}

}  // namespace

double seminorm(const Field& u, const KernelMatrix& km) {
  check_consistent(u, km);
  const Eigen::Index n = u.values.size();
  double total = 0.0;
  for (Eigen::Index d = 1; d < n; ++d) {
    const auto diff = u.values.head(n - d) - u.values.tail(n - d);
    total += 2.0 * km.pair_weights[d] * diff.square().sum();
  }
  return total;
}

double energy(const Field& u, const KernelMatrix& km, const RegimeParams& params,
              const DoubleWell& well) {
  check_consistent(u, km);
  check_consistent(km, params);
  const double pot =
      u.values.unaryExpr([&](double t) { return well.value(t); }).sum();
  return params.seminorm_weight() * seminorm(u, km) +
         params.potential_weight() * u.grid.h * pot;
}

Field gradient(const Field& u, const KernelMatrix& km, const RegimeParams& params,
               const DoubleWell& well) {
  check_consistent(u, km);
  check_consistent(km, params);
  const Eigen::Index n = u.values.size();

  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index d = 1; d < n; ++d) {
    const Eigen::ArrayXd diff = u.values.head(n - d) - u.values.tail(n - d);
    acc.head(n - d) += km.pair_weights[d] * diff;
    acc.tail(n - d) -= km.pair_weights[d] * diff;
  }

  const double sw = params.seminorm_weight();
  const double pw = params.potential_weight() * u.grid.h;
  Eigen::ArrayXd g =
      4.0 * sw * acc + pw * u.values.unaryExpr([&](double t) { return well.deriv(t); });
  return Field(u.grid, std::move(g));
}

double frac_laplacian_diag(const Field& u, Eigen::Index x_index, const RegimeParams& params) {
  const Eigen::Index n = u.grid.num_cells;
  ensure(x_index > 0 && x_index < n - 1,
         "frac_laplacian_diag: boundary node; reflection is undefined beyond one domain width");

  // Even reflection across each endpoint, one domain width on each side.
  const auto uext = [&](Eigen::Index t) {
    if (t < 0) return u.values[-1 - t];
    if (t >= n) return u.values[2 * n - 1 - t];
    return u.values[t];
  };

  const double h = u.grid.h;
  const double p = -1.0 - 2.0 * params.s;
  const double center = u.values[x_index];
  double sum = 0.0;
  for (Eigen::Index m = 1; m <= n; ++m) {
    const double second_diff = uext(x_index + m) + uext(x_index - m) - 2.0 * center;
    sum += second_diff * std::pow(double(m) * h, p) * h;
  }
  return -params.kernel_constant * sum;
}

}  // namespace fracac
