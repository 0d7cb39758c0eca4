#pragma once

#include <functional>
#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/conjugacy.hpp"
#include "srlab/periodic_orbits.hpp"
#include "srlab/sampled_function.hpp"
#include "srlab/spectrum.hpp"

namespace srlab {

using RealFunction = std::function<double(double)>;

// max over x in P_m of |sum_{s<m} D(g^s x)|.
double periodic_obstruction(const CircleMap& g, const RealFunction& D, int m);
double periodic_obstruction(const CircleMap& g, const SampledFunction& D, int m);
// Same maximum restricted to the orbits of the given codes.
double orbit_obstruction(const CircleMap& g, const RealFunction& D, const std::vector<Code>& codes);

struct BarrierResult {
  SampledFunction u;
  int S = 0;
  double tail_bound = 0.0;  // Lip(D) Lambda^{-S} / (Lambda - 1)
  double u0 = 0.0;
};

// u(x) = sum_{s=1}^{S} [D(g_0^{-s} x) - D(0)] on D's grid, g_0 the branch
// fixing 0.
BarrierResult barrier_function(const CircleMap& g, const SampledFunction& D, int S);
// Barrier value at a single point.
double barrier_value(const CircleMap& g, const RealFunction& D, double x, int S);
// Smallest S whose tail bound is below tol.
int barrier_truncation(const CircleMap& g, double lip_D, double tol);

// sup over the grid of |D - u o g + u|.
double coboundary_residual(const CircleMap& g, const RealFunction& D, const RealFunction& u,
                           std::size_t grid = 1u << 14);
double coboundary_residual(const CircleMap& g, const SampledFunction& D, const SampledFunction& u,
                           std::size_t grid = 1u << 14);

// One run of the periodic-data pipeline at scale n: obstructions on the
// messenger orbits 0^{2n} sigma^2 (period 4n) and hybrids with t = 1
// (period 4n + 1), barrier values on P_n extended by a periodic cubic
// spline, and the resulting coboundary residual.
struct LivsicPipelineResult {
  int n = 0;
  double O_n = 0.0;
  double d_prime_norm = 0.0;         // sup |D'|
  double obstruction_4n = 0.0;
  double obstruction_4n1 = 0.0;
  double obstruction_constant = 0.0; // max obstruction / (O_n^2 |D'|)
  double residual = 0.0;
  double residual_constant = 0.0;    // residual / (O_n |D'|)
  std::size_t orbits_checked = 0;
};

LivsicPipelineResult livsic_pipeline(const CircleMap& g, const SampledFunction& D, int n);

// -slope of log(values) against ns.
double fitted_decay_exponent(const std::vector<double>& ns, const std::vector<double>& values);

struct DerivativeTransferReport {
  int n = 0;
  double distance = 0.0;   // max |f'(phi^{-1} x) - g'(x)| over oracle samples
  double alpha = 1.0;
  double a = 1.0;
  double lambda = 0.0;
  double rate = 0.0;       // Lambda^{-alpha^2 n / (a + 1)}
  double ratio = 0.0;      // distance / rate
  double f_identity_residual = 0.0;
  double g_identity_residual = 0.0;
};

// Requires both maps Lebesgue preserving (identity residual < 1e-8) and a
// marking table reaching period n.
DerivativeTransferReport derivative_transfer_check(const CircleMap& f, const CircleMap& g, int n,
                                                   const MarkingTable& marking, const ConjugacySamples& oracle);

}  // namespace srlab
