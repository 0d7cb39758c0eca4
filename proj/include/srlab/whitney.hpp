#pragma once

#include <span>
#include <vector>

#include "srlab/diffeo.hpp"
#include "srlab/norms.hpp"

namespace srlab {

struct DividedDifferenceReport {
  std::vector<double> D;  // D[j - 1] = max over windows of |Delta^j|
  double order(int j) const { return D.at(static_cast<std::size_t>(j - 1)); }
};

// Divided differences over windows x_i..x_{i+j}. Cyclic windows wrap past
// the last node with x + 1 and value + drift (drift 1 for circle-map
// values, 0 for periodic data).
DividedDifferenceReport divided_differences(std::span<const double> nodes, std::span<const double> values, int m,
                                            double drift = 1.0, bool cyclic = true);

struct WhitneyExtension {
  DiffeoPtr h;
  int degree = 0;                  // spline degree actually used
  bool monotone_fallback = false;  // smoothness downgraded to the monotone cubic
  double interpolation_residual = 0.0;
  double min_derivative = 0.0;
  double gap_discrepancy = 0.0;    // A = max | |gap_to| - |gap_from| |
  double min_gap = 0.0;            // o_k of the source nodes
  NormReport norms;                // of h - id, orders 0..r+1
  DividedDifferenceReport dd;      // of h - id at the nodes, orders 1..r+1
};

// Diffeomorphism h with h(from[i]) = to[i]. Both lists sorted in [0, 1)
// and of equal length; h - id is a periodic spline of degree 2r + 1.
WhitneyExtension extend_correspondence(std::span<const double> from, std::span<const double> to, int r,
                                       std::size_t grid = 1u << 14);

}  // namespace srlab
