#include "fracac/cosine_poly.hpp"

#include <algorithm>
#include <cmath>

namespace fracac {

namespace {

constexpr double kBisectWidth = 1e-12;
constexpr double kTangentialLevel = 1e-8;
constexpr int kRefineFactor = 64;
constexpr int kMaxRefineDepth = 2;

// Bisection on a bracket with phi(lo) * phi(hi) < 0.
double bisect(const CosinePoly& p, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && (hi - lo) > kBisectWidth; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = p.eval(mid);
    if (fmid == 0.0) return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Scanner {
  const CosinePoly& p;
  double slope_bound;  // global bound on |phi'|, slightly inflated
  std::vector<double> zeros;
  std::vector<double> dips;  // |phi| < kTangentialLevel without a sign change

  // Scan [a, b] with n_steps uniform intervals. Samples that are exactly
  // zero are resolved by the signs of their nonzero neighbours (left_sign /
  // right_sign supply the context at segment edges): opposite signs mean one
  // crossing, equal signs mean a touch. A cell without a sign change can
  // hide a zero only if |f1| + |f2| <= step * |phi'|_max; such cells are
  // rescanned at kRefineFactor x resolution up to kMaxRefineDepth, after
  // which a persistent dip below kTangentialLevel is recorded.
  void scan(double a, double b, int n_steps, int depth, double left_sign, double right_sign) {
    const double step = (b - a) / double(n_steps);
    std::vector<double> ts(n_steps + 1), fs(n_steps + 1);
    for (int j = 0; j <= n_steps; ++j) {
      ts[j] = (j == n_steps) ? b : a + double(j) * step;
      fs[j] = p.eval(ts[j]);
    }

    int j = 0;
    while (j <= n_steps) {
      if (fs[j] == 0.0) {
        int r = j;
        while (r <= n_steps && fs[r] == 0.0) ++r;
        const double left = (j > 0) ? fs[j - 1] : left_sign;
        const double right = (r <= n_steps) ? fs[r] : right_sign;
        const double at = 0.5 * (ts[j] + ts[r - 1]);
        if (left * right > 0.0) {
          dips.push_back(at);  // touch: the sign does not change
        } else {
          zeros.push_back(at);  // crossing, or a zero running into the edge
        }
        j = r;
        continue;
      }
      if (j == n_steps) break;
      const double f1 = fs[j], f2 = fs[j + 1];
      if (f2 == 0.0) {
        ++j;
        continue;  // resolved as a zero run at the next position
      }
      if (f1 * f2 < 0.0) {
        zeros.push_back(bisect(p, ts[j], ts[j + 1], f1));
      } else if (std::abs(f1) + std::abs(f2) < step * slope_bound) {
        if (depth < kMaxRefineDepth && step > kBisectWidth) {
          scan(ts[j], ts[j + 1], kRefineFactor, depth + 1, f1, f2);
        } else if (std::min(std::abs(f1), std::abs(f2)) < kTangentialLevel) {
          dips.push_back(0.5 * (ts[j] + ts[j + 1]));
        }
      }
      ++j;
    }
  }
};

}  // namespace

ZeroSet find_zeros(const CosinePoly& p, double a, double b) {
  ensure(b > a, "find_zeros: need b > a");
  ensure(p.lambda.norm() > 0.0, "find_zeros: zero coefficient vector");

  ZeroSet out;
  const double deriv_bound = p.deriv_bound();
  if (deriv_bound == 0.0) return out;  // phi is a nonzero constant

  const int k = std::max(p.order(), 1);
  Scanner scanner{p, 1.001 * deriv_bound, {}, {}};
  scanner.scan(a, b, 512 * k, 0, 0.0, 0.0);

  std::sort(scanner.zeros.begin(), scanner.zeros.end());
  // Merge duplicates produced by a zero sitting on a scan-cell boundary.
  const double merge_tol = 8.0 * kBisectWidth;
  for (double z : scanner.zeros) {
    if (out.zeros.empty() || z - out.zeros.back() > merge_tol) out.zeros.push_back(z);
  }

  // A dip right next to a located zero is scan noise, not a suspected touch.
  const double clear_tol = (b - a) / double(512 * k);
  for (double d : scanner.dips) {
    bool near_zero = false;
    for (double z : out.zeros) near_zero = near_zero || std::abs(d - z) <= clear_tol;
    if (!near_zero) {
      out.tangential_suspect = true;
      break;
    }
  }
  return out;
}

}  // namespace fracac
