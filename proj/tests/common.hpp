#pragma once

#include <cmath>
#include <memory>
#include <numbers>

#include "srlab/circle_map.hpp"
#include "srlab/trig.hpp"

namespace testutil {

// 2x + eps sin^2(pi x)
inline std::shared_ptr<srlab::TrigMap> sin2_map(double eps, const char* label = "f") {
  return std::make_shared<srlab::TrigMap>(2, srlab::TrigPolynomial({}, {-0.5 * eps}), label);
}
inline std::shared_ptr<srlab::TrigMap> f0() { return sin2_map(0.1, "f0"); }
inline std::shared_ptr<srlab::TrigMap> g0() { return sin2_map(-0.1, "g0"); }
inline std::shared_ptr<srlab::TrigMap> L2() { return srlab::TrigMap::linear(2); }

// Direct lift evaluation, independent of TrigMap.
inline double f0_lift(double x) {
  const double s = std::sin(std::numbers::pi * x);
  return 2.0 * x + 0.1 * s * s;
}
inline double f0_prime(double x) { return 2.0 + 0.1 * std::numbers::pi * std::sin(2.0 * std::numbers::pi * x); }

}  // namespace testutil
