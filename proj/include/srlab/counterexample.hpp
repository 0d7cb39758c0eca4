#pragma once

#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/io.hpp"
#include "srlab/periodic_orbits.hpp"

namespace srlab {

struct CounterexamplePair {
  MapSpec f;  // 2x + eps sin^2(pi x)
  MapSpec g;  // -f(-x) = 2x - eps sin^2(pi x)
  bool degenerate = false;  // eps = 0: f = g = L_2
};

CounterexamplePair build_pair(double epsilon);

struct IsospectralReport {
  bool isospectral = false;
  std::vector<double> level_distance;  // [n - 1]: max elementwise distance at level n
  double max_distance = 0.0;
};

IsospectralReport verify_isospectral(const CircleMap& f, const CircleMap& g, int N, double tol = 1e-9);

// Symbol complement b -> d - 1 - b: the code of R(p) under the conjugacy
// R(x) = -x. The time order of the itinerary is unchanged.
Code opposite_code(const Code& code, int d);

struct MultiplierMismatch {
  Code code;
  int period = 0;
  double lambda_f = 0.0;
  double lambda_g = 0.0;
  double discrepancy = 0.0;
};

// Codes with |lambda_f - lambda_g| > tol, matching g's code to the same code
// (or to opposite_code with `opposite`), sorted by decreasing discrepancy.
std::vector<MultiplierMismatch> find_multiplier_mismatch(const CircleMap& f, const CircleMap& g, int N,
                                                         double tol = 1e-10, bool opposite = false);

}  // namespace srlab
