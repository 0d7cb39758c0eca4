#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "srlab/errors.hpp"
#include "srlab/periodic_orbits.hpp"
#include "srlab/whitney.hpp"

using namespace srlab;
constexpr double kPi = std::numbers::pi;

namespace {
std::vector<double> sorted_points(const CircleMap& m, int n) {
  std::vector<double> p = periodic_points_by_code(m, n);
  p.pop_back();
  return p;  // code order is point order
}
}  // namespace

TEST_SUITE("whitney") {
  TEST_CASE("divided difference examples") {
    const std::vector<double> x{0.0, 0.25, 0.5, 0.75};
    const auto id = divided_differences(x, x, 2);
    CHECK(id.order(1) == doctest::Approx(1.0));
    CHECK(id.order(2) == doctest::Approx(0.0).epsilon(1e-14));

    const std::vector<double> n3{0.0, 0.25, 0.5}, v3{0.0, 0.125, 0.5};
    CHECK(divided_differences(n3, v3, 2, 0.0, false).order(2) == doctest::Approx(2.0));

    std::vector<double> xs(12), q(12);
    for (int i = 0; i < 12; ++i) {
      xs[i] = i / 12.0;
      q[i] = 3 * xs[i] * xs[i] - xs[i] + 0.5;
    }
    const auto dq = divided_differences(xs, q, 3, 0.0, false);
    CHECK(dq.order(2) == doctest::Approx(3.0));
    CHECK(std::abs(dq.order(3)) < 1e-10);

    const std::vector<double> dup{0.0, 0.2, 0.2};
    CHECK_THROWS_AS(divided_differences(dup, dup, 1), PreconditionError);
  }

  TEST_CASE("identity correspondence") {
    const auto p = sorted_points(*testutil::L2(), 4);
    const WhitneyExtension w = extend_correspondence(p, p, 2);
    CHECK(w.norms.sup[0] == 0.0);
    CHECK(w.norms.cs(3) == 0.0);
    CHECK(w.gap_discrepancy == 0.0);
    CHECK_FALSE(w.monotone_fallback);
  }

  TEST_CASE("linear response to a small perturbation") {
    const std::vector<double> nodes{0.0, 1.0 / 3, 2.0 / 3};
    std::vector<double> norms;
    for (double s : {1e-4, 2e-4}) {
      std::vector<double> to(nodes);
      for (double& t : to) t += s * std::sin(2 * kPi * t);
      const WhitneyExtension w = extend_correspondence(nodes, to, 2);
      CHECK(w.interpolation_residual < 1e-12);
      norms.push_back(w.norms.sup[1]);
    }
    CHECK(norms[0] > 0.0);
    CHECK(norms[1] / norms[0] == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("exact interpolation and diffeomorphism on periodic data") {
    const auto f = testutil::f0();
    for (int k = 2; k <= 8; ++k) {
      const auto from = sorted_points(*testutil::L2(), k), to = sorted_points(*f, k);
      const WhitneyExtension w = extend_correspondence(from, to, 2);
      CHECK(w.interpolation_residual < 1e-12);
      CHECK(w.min_derivative > 0.0);
      for (std::size_t i = 0; i < from.size(); ++i) CHECK(std::abs((*w.h)(from[i]) - to[i]) < 1e-12);
    }
  }

  TEST_CASE("divided differences obey the inductive bound") {
    const auto f = testutil::f0();
    const int r = 2;
    for (int k = 2; k <= 8; ++k) {
      const auto from = sorted_points(*testutil::L2(), k), to = sorted_points(*f, k);
      const WhitneyExtension w = extend_correspondence(from, to, r);
      double fact = 1.0;
      for (int j = 1; j <= std::min<int>(r + 1, static_cast<int>(from.size()) - 1); ++j) {
        fact *= j;
        CHECK(w.dd.order(j) <= std::pow(2.0, j) / fact * w.gap_discrepancy / std::pow(w.min_gap, j) * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("relabeling invariance") {
    const auto from = sorted_points(*testutil::L2(), 5), to = sorted_points(*testutil::f0(), 5);
    const WhitneyExtension w = extend_correspondence(from, to, 2);
    // Same correspondence conjugated by the rotation by one node.
    const double shift_f = from[1], shift_t = to[1];
    std::vector<double> rf, rt;
    for (std::size_t i = 1; i <= from.size(); ++i) {
      const std::size_t j = i % from.size();
      rf.push_back(from[j] - shift_f + (j == 0 ? 1.0 : 0.0));
      rt.push_back(to[j] - shift_t + (j == 0 ? 1.0 : 0.0));
    }
    const WhitneyExtension v = extend_correspondence(rf, rt, 2);
    for (int i = 0; i < 200; ++i) {
      const double x = i / 200.0;
      double a = (*v.h)(x) + shift_t;
      double b = (*w.h)(x + shift_f);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }

  TEST_CASE("composition sanity") {
    const auto p = sorted_points(*testutil::f0(), 6);
    const WhitneyExtension w = extend_correspondence(p, p, 2);
    for (int i = 0; i < 100; ++i) {
      const double y = i / 100.0;
      CHECK(std::abs(diffeo_inverse(*w.h, y) - y) < 1e-10);
    }
  }

  TEST_CASE("wild data falls back to a monotone extension") {
    const std::vector<double> from{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const std::vector<double> to{0.0, 0.01, 0.02, 0.5, 0.51, 0.52, 0.53, 0.97, 0.98, 0.99};
    const WhitneyExtension w = extend_correspondence(from, to, 2);
    CHECK(w.monotone_fallback);
    CHECK(w.min_derivative > 0.0);
    CHECK(w.interpolation_residual < 1e-12);
    const std::vector<double> unordered{0.0, 0.3, 0.2};
    CHECK_THROWS_AS(extend_correspondence(std::vector<double>{0.0, 0.1, 0.2}, unordered, 1), PreconditionError);
  }
}
