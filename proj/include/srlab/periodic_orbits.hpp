#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "srlab/circle_map.hpp"

namespace srlab {

using Code = std::vector<int>;

Code parse_code(std::string_view text);
std::string code_string(const Code& code);
// Code of length n whose base-d value is v (most significant symbol first).
Code code_from_value(std::size_t v, int d, int n);
std::size_t code_value(const Code& code, int d);
// Cyclic left shift by t: s_t ... s_{n-1} s_0 ... s_{t-1}.
Code rotate(const Code& code, int t);
Code repeat(const Code& code, int times);
Code concat(const Code& a, const Code& b);

struct PeriodicOrbitRecord {
  Code code;
  double point = 0.0;  // in [0, 1)
  int period = 0;
  double log_multiplier = 0.0;
  double residual = 0.0;  // |F^n(x) - x| / ((f^n)'(x) - 1)
};

PeriodicOrbitRecord periodic_point_from_code(const CircleMap& map, const Code& code);

// All d^n - 1 periodic points of period n (not necessarily primitive),
// sorted by point. With primitive_only, points of smaller exact period are
// dropped.
std::vector<PeriodicOrbitRecord> enumerate_periodic(const CircleMap& map, int n, bool primitive_only = false);

// Points of period n indexed by code value (entry d^n - 1 is the fixed point
// 0, which is also entry 0).
std::vector<double> periodic_points_by_code(const CircleMap& map, int n);

struct GapStats {
  int period = 0;
  double o = 0.0;  // smallest gap
  double O = 0.0;  // largest gap
  double N_g = 0.0;
  double lower_bound = 0.0;  // 1 / (N_g Omega^k - 1)
  double upper_bound = 0.0;  // 1 / (N_g^{-1} Lambda^k - 1), inf if vacuous
  bool lower_ok = false;
  bool upper_ok = false;
};

GapStats gap_statistics(const CircleMap& map, int n);
GapStats gap_statistics(const std::vector<PeriodicOrbitRecord>& records, const ValidityReport& v, int n);
// Smallest and largest cyclic gaps of sorted points in [0, 1).
std::pair<double, double> cyclic_gaps(const std::vector<double>& sorted_points);
// N_g = (Omega / Lambda) exp(Lip(g') / (Lambda - 1)).
double nonlinearity_constant(const ValidityReport& v);

struct DistortionReport {
  double ratio = 1.0;
  double bound = 1.0;
  double image_length = 0.0;
  bool ok = false;
};

// Interval [a, b] on the lift; requires map^n injective there, i.e. the
// image length is at most 1.
DistortionReport distortion_check(const CircleMap& map, double a, double b, int n, int samples = 257);

// Circle distance between two points.
double circle_distance(double a, double b);

}  // namespace srlab
