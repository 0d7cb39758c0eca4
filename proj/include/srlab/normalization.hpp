#pragma once

#include "srlab/circle_map.hpp"
#include "srlab/diffeo.hpp"
#include "srlab/sampled_function.hpp"

namespace srlab {

struct InvariantDensity {
  SampledFunction theta;  // unit integral
  double residual = 0.0;  // grid sup of |L theta - theta|
  int iterations = 0;
};

// Fixed point of the transfer operator by power iteration from theta = 1.
InvariantDensity invariant_density(const CircleMap& map, std::size_t grid = 4096, double tol = 1e-12,
                                   int max_iterations = 100000);

// h(x) = int_0^x theta.
DiffeoPtr normalizing_conjugacy(const InvariantDensity& theta);

// sup over the grid of |sum_b 1 / F'(F_b^{-1} x) - 1|.
double lebesgue_identity_residual(const CircleMap& map, std::size_t grid = 4096);

struct NormalizedMap {
  MapPtr map;  // h o f o h^{-1}
  DiffeoPtr h;
  InvariantDensity density;
};

NormalizedMap normalize_map(const MapPtr& map, std::size_t grid = 4096, double tol = 1e-12);

}  // namespace srlab
