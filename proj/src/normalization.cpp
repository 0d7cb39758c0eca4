#include "srlab/normalization.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

namespace {

// Weights of the four uniform cubic B-splines touching y, times 1/F'.
struct Stencil {
  std::size_t first = 0;
  std::array<double, 4> w{};
};

Stencil make_stencil(double y, double weight, std::size_t G) {
  y -= std::floor(y);
  const double u = y * static_cast<double>(G);
  double fi = std::floor(u);
  double t = u - fi;
  if (fi >= static_cast<double>(G)) {
    fi -= static_cast<double>(G);
  }
  const auto i = static_cast<std::size_t>(fi);
  const double t2 = t * t, t3 = t2 * t;
  Stencil s;
  s.first = (i + G - 1) % G;
  s.w = {(1 - t) * (1 - t) * (1 - t) / 6.0, (3 * t3 - 6 * t2 + 4) / 6.0, (-3 * t3 + 3 * t2 + 3 * t + 1) / 6.0,
         t3 / 6.0};
  for (double& v : s.w) v *= weight;
  return s;
}

}  // namespace

InvariantDensity invariant_density(const CircleMap& map, std::size_t G, double tol, int max_iterations) {
  if (G < 8) throw PreconditionError("density grid too small");
  const int d = map.degree();
  std::vector<Stencil> stencils(G * static_cast<std::size_t>(d));
  parallel_for(G, [&](std::size_t i) {
    const double x = static_cast<double>(i) / static_cast<double>(G);
    for (int b = 0; b < d; ++b) {
      const double y = map.inverse_branch(x, b);
      stencils[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)] = make_stencil(y, 1.0 / map.derivative(y), G);
    }
  });

  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < G; ++i) {
    trip.emplace_back(static_cast<int>(i), static_cast<int>((i + G - 1) % G), 1.0 / 6.0);
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 4.0 / 6.0);
    trip.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % G), 1.0 / 6.0);
  }
  Eigen::SparseMatrix<double> A(static_cast<int>(G), static_cast<int>(G));
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw NumericalError("cubic collocation factorization failed");

  Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<int>(G));
  Eigen::VectorXd next(static_cast<int>(G));
  InvariantDensity out;
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd c = lu.solve(v);
    for (std::size_t i = 0; i < G; ++i) {
      double s = 0.0;
      for (int b = 0; b < d; ++b) {
        const Stencil& st = stencils[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)];
        for (std::size_t k = 0; k < 4; ++k) s += st.w[k] * c[static_cast<int>((st.first + k) % G)];
      }
      next[static_cast<int>(i)] = s;
    }
    next /= next.mean();
    const double res = (next - v).cwiseAbs().maxCoeff();
    v = next;
    out.iterations = it;
    out.residual = res;
    if (res < tol) break;
  }
  if (!(out.residual < tol)) throw NumericalError("invariant density power iteration did not converge");
  out.theta = SampledFunction(std::vector<double>(v.data(), v.data() + v.size()));
  return out;
}

DiffeoPtr normalizing_conjugacy(const InvariantDensity& density) {
  const auto& vals = density.theta.values();
  const std::size_t G = vals.size();
  for (std::size_t i = 0; i < 4 * G; ++i) {
    if (!(density.theta(static_cast<double>(i) / static_cast<double>(4 * G)) > 0.0)) {
      throw PreconditionError("density is not strictly positive");
    }
  }
  PeriodicPiecewisePolynomial q = density.theta.interpolant();
  q.add_constant(-1.0);
  PeriodicPiecewisePolynomial h = q.antiderivative();
  h.set_drift(0.0);
  return std::make_shared<PiecewiseDiffeo>(std::move(h));
}

double lebesgue_identity_residual(const CircleMap& map, std::size_t grid) {
  std::vector<double> r(grid);
  const int d = map.degree();
  parallel_for(grid, [&](std::size_t i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    double s = 0.0;
    for (int b = 0; b < d; ++b) s += 1.0 / map.derivative(map.inverse_branch(x, b));
    r[i] = std::abs(s - 1.0);
  });
  return *std::max_element(r.begin(), r.end());
}

NormalizedMap normalize_map(const MapPtr& map, std::size_t grid, double tol) {
  NormalizedMap n;
  n.density = invariant_density(*map, grid, tol);
  n.h = normalizing_conjugacy(n.density);
  n.map = std::make_shared<ConjugatedMap>(map, n.h);
  return n;
}

}  // namespace srlab
