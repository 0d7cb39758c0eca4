#include "srlab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

DividedDifferenceReport divided_differences(std::span<const double> nodes, std::span<const double> values, int m,
                                            double drift, bool cyclic) {
  const std::size_t s = nodes.size();
  if (values.size() != s) throw PreconditionError("divided differences: size mismatch");
  if (m < 1) throw PreconditionError("divided differences: order must be positive");
  for (std::size_t i = 1; i < s; ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw PreconditionError("divided differences: duplicate or unordered nodes");
  }
  if (cyclic && s > 0 && !(nodes.back() < nodes.front() + 1.0)) {
    throw PreconditionError("divided differences: nodes span more than one turn");
  }
  DividedDifferenceReport r;
  r.D.assign(static_cast<std::size_t>(m), 0.0);
  const std::size_t windows = cyclic ? s : (s > 0 ? s - 1 : 0);
  for (std::size_t i = 0; i < windows; ++i) {
    const std::size_t len = std::min<std::size_t>(static_cast<std::size_t>(m) + 1, cyclic ? s + 1 : s - i);
    std::vector<double> x(len), v(len);
    for (std::size_t l = 0; l < len; ++l) {
      const std::size_t idx = i + l;
      const double wraps = static_cast<double>(idx / s);
      x[l] = nodes[idx % s] + wraps;
      v[l] = values[idx % s] + wraps * drift;
    }
    // In-place Newton table: after pass j, v[l] = Delta^j[x_l..x_{l+j}].
    for (std::size_t j = 1; j < len; ++j) {
      for (std::size_t l = 0; l + j < len; ++l) {
        v[l] = (v[l + 1] - v[l]) / (x[l + j] - x[l]);
      }
      r.D[j - 1] = std::max(r.D[j - 1], std::abs(v[0]));
    }
  }
  return r;
}

WhitneyExtension extend_correspondence(std::span<const double> from, std::span<const double> to, int r,
                                       std::size_t grid) {
  const std::size_t M = from.size();
  if (to.size() != M || M == 0) throw PreconditionError("correspondence lists must be nonempty and equal length");
  if (r < 0 || 2 * r + 1 > Jet::kMaxOrder) throw PreconditionError("smoothness r out of range");
  for (std::size_t i = 0; i < M; ++i) {
    if (!(from[i] >= 0.0 && from[i] < 1.0) || !(to[i] >= 0.0 && to[i] < 1.0)) {
      throw PreconditionError("correspondence points must lie in [0, 1)");
    }
    if (i > 0 && (!(from[i] > from[i - 1]) || !(to[i] > to[i - 1]))) {
      throw PreconditionError("correspondence lists must be strictly increasing (order-isomorphic)");
    }
  }
  WhitneyExtension w;
  std::vector<double> disp(M);
  for (std::size_t i = 0; i < M; ++i) disp[i] = to[i] - from[i];

  w.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < M; ++i) {
    const double gf = (i + 1 < M ? from[i + 1] : from[0] + 1.0) - from[i];
    const double gt = (i + 1 < M ? to[i + 1] : to[0] + 1.0) - to[i];
    w.min_gap = std::min(w.min_gap, gf);
    w.gap_discrepancy = std::max(w.gap_discrepancy, std::abs(gt - gf));
  }
  w.dd = divided_differences(from, disp, r + 1, 0.0, true);

  int degree = 2 * r + 1;
  while (degree >= static_cast<int>(M)) degree -= 2;
  if (degree < 1) {
    // One node: a rigid shift, which must be zero to keep h(0) = 0.
    if (std::abs(disp[0]) > 1e-15) throw PreconditionError("single-node correspondence must fix the node");
    w.h = std::make_shared<IdentityDiffeo>();
    w.degree = 0;
  } else {
    w.h = std::make_shared<PiecewiseDiffeo>(periodic_spline(from, disp, degree));
    w.degree = degree;
  }

  auto min_derivative = [&](const CircleDiffeo& h) {
    std::vector<double> dv(grid);
    parallel_for(grid, [&](std::size_t i) { dv[i] = h.derivative(static_cast<double>(i) / static_cast<double>(grid)); });
    double m = *std::min_element(dv.begin(), dv.end());
    for (double x : from) m = std::min(m, h.derivative(x));
    return m;
  };
  w.min_derivative = min_derivative(*w.h);
  if (!(w.min_derivative > 0.0)) {
    const PeriodicPiecewisePolynomial lift = monotone_periodic_cubic(from, to);
    w.h = std::make_shared<PiecewiseDiffeo>(lift.minus_identity());
    w.degree = 3;
    w.monotone_fallback = true;
    w.min_derivative = min_derivative(*w.h);
    if (!(w.min_derivative > 0.0)) throw MonotonicityFailure("monotone extension is not a diffeomorphism");
  }
  for (std::size_t i = 0; i < M; ++i) {
    w.interpolation_residual = std::max(w.interpolation_residual, std::abs((*w.h)(from[i]) - to[i]));
  }
  const int order = std::min(r + 1, Jet::kMaxOrder);
  const CircleDiffeo& h = *w.h;
  w.norms = measure_norms([&h](double x, int o) { return h.jet(x, o) - Jet::variable(x, o); }, order, grid);
  return w;
}

}  // namespace srlab
