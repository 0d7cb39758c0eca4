#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "srlab/counterexample.hpp"
#include "srlab/errors.hpp"

using namespace srlab;

TEST_SUITE("counterexample") {
  TEST_CASE("build_pair") {
    const CounterexamplePair p = build_pair(0.1);
    const auto f = trig_map(p.f), g = trig_map(p.g);
    for (int i = 0; i < 100; ++i) {
      const double x = i / 100.0;
      CHECK(std::abs((*f)(x) - testutil::f0_lift(x)) < 1e-15);
      CHECK(std::abs((*g)(x) + (*f)(-x)) < 1e-14);  // g(x) = -f(-x)
    }
    CHECK(validate_expanding(*f).expanding);
    CHECK(validate_expanding(*g).expanding);
    CHECK_FALSE(p.degenerate);
    CHECK(std::abs((*f)(0.3) - (*g)(0.3)) > 0.01);
    const CounterexamplePair z = build_pair(0.0);
    CHECK(z.degenerate);
    CHECK((*trig_map(z.f))(0.3) == doctest::Approx(0.6));
    CHECK_THROWS_AS(build_pair(0.4), PreconditionError);
  }

  TEST_CASE("isospectrality") {
    const CounterexamplePair p = build_pair(0.1);
    const auto f = trig_map(p.f), g = trig_map(p.g);
    const IsospectralReport r = verify_isospectral(*f, *g, 10, 1e-9);
    CHECK(r.isospectral);
    CHECK(r.level_distance.size() == 10);
    const IsospectralReport s = verify_isospectral(*f, *f, 6, 1e-9);
    CHECK(s.max_distance == 0.0);
    CHECK_FALSE(verify_isospectral(*f, *testutil::L2(), 3, 1e-9).isospectral);
  }

  TEST_CASE("multiplier mismatch under the orientation-preserving marking") {
    const CounterexamplePair p = build_pair(0.1);
    const auto f = trig_map(p.f), g = trig_map(p.g);
    const auto mm = find_multiplier_mismatch(*f, *g, 3);
    bool has001 = false;
    double worst3 = 0.0;
    for (const auto& m : mm) {
      if (code_string(m.code) == "001") {
        has001 = true;
        CHECK(m.lambda_f == doctest::Approx(2.31).epsilon(0.05 / 2.31));
        CHECK(m.lambda_g == doctest::Approx(1.90).epsilon(0.05 / 1.90));
      }
      if (m.period == 3) worst3 = std::max(worst3, m.discrepancy);
    }
    CHECK(has001);
    CHECK(worst3 >= 0.3);
    for (std::size_t i = 1; i < mm.size(); ++i) CHECK(mm[i - 1].discrepancy >= mm[i].discrepancy);
    CHECK(find_multiplier_mismatch(*f, *f, 5).empty());
    CHECK(find_multiplier_mismatch(*f, *g, 3, 1e-10, true).empty());
  }

  TEST_CASE("opposite codes match located points under R") {
    const CounterexamplePair p = build_pair(0.1);
    const auto f = trig_map(p.f), g = trig_map(p.g);
    CHECK(code_string(opposite_code(parse_code("001"), 2)) == "110");
    for (int n = 1; n <= 8; ++n) {
      for (const auto& r : enumerate_periodic(*f, n)) {
        const Code c = opposite_code(r.code, 2);
        const auto q = periodic_point_from_code(*g, c);
        // R(x) = -x maps the f-point to the g-point.
        CHECK(circle_distance(q.point, -r.point) < 1e-12);
        CHECK(std::abs(q.log_multiplier - r.log_multiplier) < 1e-10);
      }
    }
  }
}
