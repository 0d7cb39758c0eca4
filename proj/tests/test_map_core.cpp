#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "srlab/circle_map.hpp"
#include "srlab/diffeo.hpp"
#include "srlab/errors.hpp"

using namespace srlab;
using testutil::f0;
using testutil::L2;

TEST_SUITE("map_core") {
  TEST_CASE("eval examples") {
    CHECK(eval(*L2(), 0.25, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval(*f0(), 0.0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval(*f0(), 0.25, 1) == doctest::Approx(2.0 + 0.1 * std::numbers::pi).epsilon(1e-14));
    CHECK(eval(*f0(), 0.0, 0) == 0.0);
  }

  TEST_CASE("lift matches the closed form and is a degree-2 lift") {
    const auto f = f0();
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 0.03 * i;
      CHECK(std::abs((*f)(x) - testutil::f0_lift(x)) < 1e-14);
      CHECK(std::abs(f->derivative(x) - testutil::f0_prime(x)) < 1e-13);
      CHECK(std::abs((*f)(x + 1.0) - (*f)(x) - 2.0) < 1e-13);
    }
  }

  TEST_CASE("derivatives agree with centered finite differences") {
    const auto f = f0();
    const auto h = std::make_shared<TrigDiffeo>(TrigPolynomial({0.01, 0.002}, {0.003}));
    const ConjugatedMap c(f, h);
    const double e = 1e-6;
    for (int i = 0; i < 10000; i += 7) {
      const double x = i / 10000.0;
      for (const CircleMap* m : {static_cast<const CircleMap*>(f.get()), static_cast<const CircleMap*>(&c)}) {
        const double fd = ((*m)(x + e) - (*m)(x - e)) / (2 * e);
        CHECK(std::abs(m->derivative(x) - fd) / m->derivative(x) < 1e-6);
      }
    }
  }

  TEST_CASE("inverse_branch examples and round trip") {
    CHECK(inverse_branch(*L2(), 0.5, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(inverse_branch(*L2(), 0.5, 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(inverse_branch(*f0(), 0.0, 0) == 0.0);
    const auto f = f0();
    for (int i = 0; i < 1000; ++i) {
      const double y = i / 1000.0;
      for (int b = 0; b < 2; ++b) {
        const double x = f->inverse_branch(y, b);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(std::abs((*f)(x) - (y + b)) < 1e-12);
      }
    }
    CHECK_THROWS_AS(f->inverse_branch(0.3, 2), PreconditionError);
  }

  TEST_CASE("branch intervals partition [0, 1) in symbol order") {
    const auto f = f0();
    const double split = f->inverse_branch(0.0, 1);  // F(split) = 1
    CHECK(std::abs((*f)(split) - 1.0) < 1e-14);
    CHECK(f->inverse_branch(0.999, 0) < split);
    CHECK(f->inverse_branch(0.001, 1) >= split);
  }

  TEST_CASE("validate_expanding examples") {
    const ValidityReport l = validate_expanding(*L2());
    CHECK(l.lambda == 2.0);
    CHECK(l.omega == 2.0);
    CHECK(l.a == 1.0);
    CHECK(l.near_linear);
    CHECK(l.expanding);

    const ValidityReport r = validate_expanding(*f0());
    CHECK(r.lambda == doctest::Approx(2.0 - 0.1 * std::numbers::pi).epsilon(1e-8));
    CHECK(r.omega == doctest::Approx(2.0 + 0.1 * std::numbers::pi).epsilon(1e-8));
    CHECK(r.expanding);
    // |f0 - L2|_{C^2} = sup |p''| = 0.2 pi^2 ~ 1.97 exceeds (d - 1) / 2.
    CHECK(r.c2 == doctest::Approx(0.2 * std::numbers::pi * std::numbers::pi).epsilon(1e-6));
    CHECK_FALSE(r.near_linear);

    const auto small = testutil::sin2_map(0.02);
    CHECK(validate_expanding(*small).near_linear);

    const auto bad = testutil::sin2_map(0.9);
    CHECK_FALSE(validate_expanding(*bad).expanding);
  }

  TEST_CASE("certified C2 correction dominates the grid maximum") {
    const auto f = f0();
    const ValidityReport r = validate_expanding(*f, 64);
    CHECK(r.c2_certified >= 0.2 * std::numbers::pi * std::numbers::pi);
    CHECK(r.lambda_certified <= 2.0 - 0.1 * std::numbers::pi);
  }

  TEST_CASE("diffeo_inverse examples") {
    const IdentityDiffeo id;
    CHECK(diffeo_inverse(id, 0.3) == doctest::Approx(0.3));
    const TrigDiffeo h(TrigPolynomial({0.01}, {}));
    CHECK(std::abs(diffeo_inverse(h, 0.0)) < 1e-15);
    CHECK(diffeo_inverse(h, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    for (int i = 0; i < 200; ++i) {
      const double y = -0.5 + i * 0.0137;
      CHECK(std::abs(h(diffeo_inverse(h, y)) - y) < 1e-14);
    }
  }

  TEST_CASE("ConjugatedMap with identity chain equals its base") {
    const auto f = f0();
    const ConjugatedMap c(f, std::vector<DiffeoPtr>{std::make_shared<IdentityDiffeo>()});
    for (int i = 0; i < 500; ++i) {
      const double x = i / 500.0;
      CHECK(std::abs(c(x) - (*f)(x)) < 1e-14);
    }
  }

  TEST_CASE("ConjugatedMap flattens nested bases") {
    const auto f = f0();
    const auto h1 = std::make_shared<TrigDiffeo>(TrigPolynomial({0.01}, {}));
    const auto h2 = std::make_shared<TrigDiffeo>(TrigPolynomial({0.0, 0.004}, {}));
    const auto inner = std::make_shared<ConjugatedMap>(f, h1);
    const ConjugatedMap outer(inner, h2);
    CHECK(outer.base() == f);
    for (int i = 0; i < 50; ++i) {
      const double x = i / 50.0;
      const double direct = (*h2)((*h1)((*f)(h1->inverse(h2->inverse(x)))));
      CHECK(std::abs(outer(x) - direct) < 1e-13);
    }
  }

  TEST_CASE("lift invariants of diffeomorphisms") {
    const TrigDiffeo h(TrigPolynomial({0.02}, {0.01}));
    const DiffeoReport r = validate_diffeo(h);
    CHECK(r.valid);
    CHECK(std::abs(h(0.0)) < 1e-16);
    CHECK(std::abs(h(1.3) - h(0.3) - 1.0) < 1e-14);
  }
}
