#pragma once

#include <Eigen/Core>
#include <cmath>
#include <sstream>
#include <utility>

#include "fracac/common.hpp"

namespace fracac {

// Uniform cell-centered grid over (a, b): cell i covers [a + i*h, a + (i+1)*h]
// and its node sits at the center a + (i + 1/2)*h. Cell centering keeps
// |node_i - node_j| >= h for i != j, so the singular pair kernel is never
// evaluated at coincident points.
struct Grid1D {
  double a;
  double b;
  Eigen::Index num_cells;
  double h;

  Grid1D(double left, double right, Eigen::Index n)
      : a(left), b(right), num_cells(n), h((right - left) / double(n > 0 ? n : 1)) {
    ensure(std::isfinite(left) && std::isfinite(right) && right > left,
           "Grid1D: need finite endpoints with b > a");
    ensure(n >= 2, "Grid1D: need at least 2 cells");
  }

  double node(Eigen::Index i) const { return a + (double(i) + 0.5) * h; }
  double length() const { return b - a; }

  bool operator==(const Grid1D& o) const {
    return a == o.a && b == o.b && num_cells == o.num_cells;
  }
};

// Real field sampled at the cell centers of a grid. Grids and fields are
// value types, immutable by convention once built; every operation below is
// pure, so sharing across threads is safe.
struct Field {
  Grid1D grid;
  Eigen::ArrayXd values;

  Field(const Grid1D& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
    ensure(values.size() == grid.num_cells, "Field: value count != num_cells");
  }

  static Field constant(const Grid1D& g, double c) {
    return Field(g, Eigen::ArrayXd::Constant(g.num_cells, c));
  }
};

// Sample f at every cell center; rejects non-finite samples by node index.
template <class F>
Field field_from_fn(const Grid1D& g, F&& f) {
  Eigen::ArrayXd v(g.num_cells);
  for (Eigen::Index i = 0; i < g.num_cells; ++i) {
    v[i] = f(g.node(i));
    if (!std::isfinite(v[i])) {
      std::ostringstream msg;
      msg << "field_from_fn: non-finite sample at node " << i << " (x = " << g.node(i) << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  return Field(g, std::move(v));
}

// Mean value (h/|Omega|) * sum_i u_i. On a uniform grid this is the plain
// average of the samples, i.e. the midpoint quadrature of u over Omega
// divided by |Omega|; exact for affine u.
inline double mean(const Field& u) { return u.values.mean(); }

// Projection onto zero-mean fields: u - mean(u).
inline Field project_mean_zero(const Field& u) {
  return Field(u.grid, u.values - mean(u));
}

}  // namespace fracac
