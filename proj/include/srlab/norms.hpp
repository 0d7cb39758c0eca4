#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "srlab/jet.hpp"

namespace srlab {

// Sampled C^s and C^{s,1} norms of a 1-periodic function given by its jet.
struct NormReport {
  std::vector<double> sup;  // sup[j] = grid max of |u^(j)|, j = 0..s
  double lipschitz = 0.0;   // finite-difference Lipschitz constant of u^(s)

  // max_{j <= s} sup[j]
  double cs(int s) const;
  // max(cs(s), lipschitz of the top derivative); only meaningful for the
  // top order s that was measured.
  double cs_lip() const;
};

using JetFunction = std::function<Jet(double, int)>;

NormReport measure_norms(const JetFunction& u, int s, std::size_t grid = 1u << 14);

// Grid-based Lipschitz constant of a periodic function from its samples.
double grid_lipschitz(const std::vector<double>& values);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace srlab
