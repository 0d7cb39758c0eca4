#pragma once

#include <vector>

#include "srlab/circle_map.hpp"

namespace srlab {

// Marking conjugacy phi (phi o f = g o phi, phi(0) = 0) sampled at the
// iterated preimages of 0: f_points[i] and g_points[i] carry the same
// branch code, and phi(f_points[i]) = g_points[i]. Both arrays are sorted.
struct ConjugacySamples {
  int depth = 0;
  std::vector<double> f_points;
  std::vector<double> g_points;
  double holder_exponent = 1.0;  // min log-gap ratio at the finest level
  double max_displacement = 0.0; // max |phi(x) - x| over samples

  // Piecewise-linear evaluation of phi between samples.
  double operator()(double x) const;
};

ConjugacySamples conjugacy_oracle(const CircleMap& f, const CircleMap& g, int depth);

}  // namespace srlab
