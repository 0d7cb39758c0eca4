#include "srlab/livsic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "srlab/errors.hpp"
#include "srlab/messengers.hpp"
#include "srlab/norms.hpp"
#include "srlab/normalization.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

double periodic_obstruction(const CircleMap& g, const RealFunction& D, int m) {
  const int d = g.degree();
  const auto pts = periodic_points_by_code(g, m);
  const std::size_t total = pts.size();
  const std::size_t top = total / static_cast<std::size_t>(d);
  std::vector<double> sums(total - 1);
  parallel_for(total - 1, [&](std::size_t v) {
    double s = 0.0;
    std::size_t w = v;
    for (int i = 0; i < m; ++i) {
      s += D(pts[w]);
      w = (w % top) * static_cast<std::size_t>(d) + w / top;
    }
    sums[v] = std::abs(s);
  });
  return *std::max_element(sums.begin(), sums.end());
}

double periodic_obstruction(const CircleMap& g, const SampledFunction& D, int m) {
  return periodic_obstruction(g, [&D](double x) { return D(x); }, m);
}

double orbit_obstruction(const CircleMap& g, const RealFunction& D, const std::vector<Code>& codes) {
  std::vector<double> sums(codes.size());
  parallel_for(codes.size(), [&](std::size_t i) {
    double s = 0.0;
    for (double x : periodic_orbit_points(g, codes[i])) s += D(x);
    sums[i] = std::abs(s);
  });
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double barrier_value(const CircleMap& g, const RealFunction& D, double x, int S) {
  const double d0 = D(0.0);
  double u = 0.0;
  double y = x;
  for (int s = 1; s <= S; ++s) {
    y = g.inverse_branch(y, 0);
    u += D(y) - d0;
  }
  return u;
}

int barrier_truncation(const CircleMap& g, double lip_D, double tol) {
  const double lambda = g.expansion_lower_bound();
  if (lip_D <= 0.0) return 1;
  const double s = std::log(tol * (lambda - 1.0) / lip_D) / -std::log(lambda);
  return std::max(1, static_cast<int>(std::ceil(s)));
}

BarrierResult barrier_function(const CircleMap& g, const SampledFunction& D, int S) {
  if (S < 1) throw PreconditionError("barrier truncation must be at least 1");
  const std::size_t G = D.grid_size();
  std::vector<double> u(G);
  const RealFunction f = [&D](double x) { return D(x); };
  parallel_for(G, [&](std::size_t i) { u[i] = barrier_value(g, f, static_cast<double>(i) / static_cast<double>(G), S); });
  BarrierResult r;
  const double lambda = validate_expanding(g).lambda;
  r.S = S;
  r.tail_bound = D.lipschitz() * std::pow(lambda, -S) / (lambda - 1.0);
  r.u0 = u[0];
  r.u = SampledFunction(std::move(u));
  return r;
}

double coboundary_residual(const CircleMap& g, const RealFunction& D, const RealFunction& u, std::size_t grid) {
  std::vector<double> r(grid);
  parallel_for(grid, [&](std::size_t i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    r[i] = std::abs(D(x) - u(g(x)) + u(x));
  });
  return *std::max_element(r.begin(), r.end());
}

double coboundary_residual(const CircleMap& g, const SampledFunction& D, const SampledFunction& u, std::size_t grid) {
  return coboundary_residual(g, [&D](double x) { return D(x); }, [&u](double x) { return u(x); }, grid);
}

LivsicPipelineResult livsic_pipeline(const CircleMap& g, const SampledFunction& D, int n) {
  if (n < 2) throw PreconditionError("pipeline scale n must be at least 2");
  if (g.degree() != 2) throw PreconditionError("the periodic-data pipeline is built for degree 2");
  LivsicPipelineResult r;
  r.n = n;
  const RealFunction f = [&D](double x) { return D(x); };
  std::vector<double> dp(D.grid_size());
  for (std::size_t i = 0; i < dp.size(); ++i) dp[i] = std::abs(D.derivative(static_cast<double>(i) / static_cast<double>(dp.size())));
  r.d_prime_norm = *std::max_element(dp.begin(), dp.end());

  const auto recs = enumerate_periodic(g, n);
  std::vector<double> nodes;
  for (const auto& rec : recs) nodes.push_back(rec.point);
  r.O_n = cyclic_gaps(nodes).second;

  std::vector<Code> messengers4n, hybrids;
  const std::size_t count = (std::size_t{1} << n) - 1;
  for (std::size_t v = 0; v < count; ++v) {
    const Code sigma = code_from_value(v, 2, n);
    messengers4n.push_back(concat(Code(static_cast<std::size_t>(2 * n), 0), repeat(sigma, 2)));
    if (std::any_of(sigma.begin(), sigma.end(), [](int s) { return s != 0; })) hybrids.push_back(hybrid_code(sigma, 1, 2));
  }
  r.obstruction_4n = orbit_obstruction(g, f, messengers4n);
  r.obstruction_4n1 = orbit_obstruction(g, f, hybrids);
  r.orbits_checked = messengers4n.size() + hybrids.size();
  const double scale2 = r.O_n * r.O_n * r.d_prime_norm;
  r.obstruction_constant = scale2 > 0.0 ? std::max(r.obstruction_4n, r.obstruction_4n1) / scale2 : 0.0;

  const int S = barrier_truncation(g, D.lipschitz(), 1e-15);
  std::vector<double> uvals(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { uvals[i] = barrier_value(g, f, nodes[i], S); });
  const int degree = nodes.size() > 3 ? 3 : 1;
  const PeriodicPiecewisePolynomial u = periodic_spline(nodes, uvals, degree);
  r.residual = coboundary_residual(g, f, [&u](double x) { return u(x); });
  const double scale1 = r.O_n * r.d_prime_norm;
  r.residual_constant = scale1 > 0.0 ? r.residual / scale1 : 0.0;
  return r;
}

double fitted_decay_exponent(const std::vector<double>& ns, const std::vector<double>& values) {
  std::vector<double> logs;
  for (double v : values) logs.push_back(std::log(v));
  return -fit_slope(ns, logs);
}

DerivativeTransferReport derivative_transfer_check(const CircleMap& f, const CircleMap& g, int n,
                                                   const MarkingTable& marking, const ConjugacySamples& oracle) {
  DerivativeTransferReport r;
  r.n = n;
  r.f_identity_residual = lebesgue_identity_residual(f);
  r.g_identity_residual = lebesgue_identity_residual(g);
  if (r.f_identity_residual >= 1e-8 || r.g_identity_residual >= 1e-8) {
    throw PreconditionError("derivative transfer needs Lebesgue-preserving maps");
  }
  if (marking.recovered_up_to < n) throw PreconditionError("marking does not reach period n");
  if (oracle.f_points.size() != oracle.g_points.size() || oracle.f_points.empty()) {
    throw PreconditionError("conjugacy oracle samples missing");
  }
  std::vector<double> diff(oracle.f_points.size());
  parallel_for(diff.size(), [&](std::size_t i) {
    diff[i] = std::abs(f.derivative(oracle.f_points[i]) - g.derivative(oracle.g_points[i]));
  });
  r.distance = *std::max_element(diff.begin(), diff.end());
  const ValidityReport vg = validate_expanding(g);
  r.alpha = std::min(1.0, oracle.holder_exponent);
  r.a = vg.a;
  r.lambda = vg.lambda;
  r.rate = std::pow(vg.lambda, -r.alpha * r.alpha * n / (r.a + 1.0));
  r.ratio = r.distance / r.rate;
  return r;
}

}  // namespace srlab
