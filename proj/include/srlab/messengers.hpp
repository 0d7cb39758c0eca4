#pragma once

#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/periodic_orbits.hpp"

namespace srlab {

struct MessengerSpec {
  Code code_minus, code_plus, code;
  int n = 0, p = 0, q = 0;
  double x_minus = 0.0, x_plus = 0.0;  // endpoints
  double y_minus = 0.0, y_plus = 0.0;  // closest approaches, y_plus = g^{pn}(y_minus)
  double ell = 0.0;                    // |x_minus - x_plus|
  double t_minus = 0.0, t_plus = 0.0;  // |x_minus - y_minus|, |x_plus - y_plus|
  double c_g = 1.0;                    // exp(Lip(g') / (Lambda - 1))
  double lower_minus = 0.0, upper_minus = 0.0;
  double lower_plus = 0.0, upper_plus = 0.0;
  double o_n = 0.0, O_n = 0.0;
  // Smallest C with C^{-1} ell o_n^p <= t <= C ell O_n^p for both ends.
  double empirical_constant = 0.0;
  bool degenerate = false;  // ell = 0
  bool bounds_ok = false;
};

MessengerSpec messenger(const CircleMap& map, const Code& code_minus, const Code& code_plus, int p, int q);

// Map data shared by many messengers of the same period.
struct MessengerContext {
  ValidityReport validity;
  int n = 0;
  double o_n = 0.0, O_n = 0.0;
};

MessengerContext messenger_context(const CircleMap& map, int n);
MessengerSpec messenger(const CircleMap& map, const Code& code_minus, const Code& code_plus, int p, int q,
                        const MessengerContext& ctx);

struct HybridMessengerSpec {
  Code code_i, code_j, code;
  int n = 0, t = 0, p = 0;
  double z_minus = 0.0, z0 = 0.0, z_plus = 0.0;
  double deviation = 0.0;           // max distance to the pseudo-orbit
  double scale = 0.0;               // Lambda^{-np}
  double empirical_constant = 0.0;  // deviation / scale
  double constant = 0.0;            // C used in the flag
  bool collapsed = false;           // code_i is the fixed point 0
  bool within_bound = false;
};

// Hybrid code 0^{pn} s_t sigma_j^p with sigma_j = rotate(sigma_i, t).
Code hybrid_code(const Code& code_i, int t, int p);

HybridMessengerSpec hybrid_messenger(const CircleMap& map, const Code& code_i, int t, int p,
                                     double constant = 1.0, int min_shift = 2);

struct PseudoOrbit {
  std::vector<double> points;  // length 2pn + t
  std::vector<double> jumps;   // jumps[s] = |g(points[s]) - points[s+1]| (cyclic)
  double max_jump = 0.0;
  double O_n = 0.0;
  double empirical_constant = 0.0;  // max_jump / O_n^p
  bool collapsed = false;
};

// Concatenation of the messenger y_i^- orbit (pn steps), the x_i arc
// (t steps) and the y_j^+ orbit (pn steps). Accepts t in [1, n).
PseudoOrbit pseudo_orbit(const CircleMap& map, const Code& code_i, int t, int p);

// Points of the orbit of the periodic point with this code, located code by
// code (orbit[s] = point of rotate(code, s)).
std::vector<double> periodic_orbit_points(const CircleMap& map, const Code& code);

}  // namespace srlab
