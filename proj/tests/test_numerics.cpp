#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "srlab/errors.hpp"
#include "srlab/jet.hpp"
#include "srlab/norms.hpp"
#include "srlab/parallel.hpp"
#include "srlab/piecewise_polynomial.hpp"
#include "srlab/sampled_function.hpp"
#include "srlab/trig.hpp"

using namespace srlab;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("numerics") {
  TEST_CASE("jet composition reproduces closed-form derivatives") {
    // exp(sin x): derivatives at x0 by hand.
    const double x0 = 0.3;
    const double s = std::sin(x0), c = std::cos(x0), e = std::exp(s);
    double inner_d[4] = {s, c, -s, -c};
    double outer_d[4] = {e, e, e, e};
    const Jet j = compose(Jet::from_derivatives(outer_d, 3), Jet::from_derivatives(inner_d, 3));
    CHECK(j.derivative(0) == doctest::Approx(e));
    CHECK(j.derivative(1) == doctest::Approx(e * c));
    CHECK(j.derivative(2) == doctest::Approx(e * (c * c - s)));
    CHECK(j.derivative(3) == doctest::Approx(e * (c * c * c - 3 * s * c - c)));
  }

  TEST_CASE("jet inverse of exp is log") {
    const double x0 = 0.7, y0 = std::exp(x0);
    double d[6] = {y0, y0, y0, y0, y0, y0};
    const Jet inv = invert(Jet::from_derivatives(d, 5), x0);
    CHECK(inv.value() == doctest::Approx(x0));
    CHECK(inv.derivative(1) == doctest::Approx(1.0 / y0));
    CHECK(inv.derivative(2) == doctest::Approx(-1.0 / (y0 * y0)));
    CHECK(inv.derivative(3) == doctest::Approx(2.0 / (y0 * y0 * y0)));
    CHECK(inv.derivative(5) == doctest::Approx(24.0 / std::pow(y0, 5)));
  }

  TEST_CASE("jet log") {
    double d[3] = {2.0, 1.0, 0.0};  // f(x0 + e) = 2 + e
    const Jet l = log(Jet::from_derivatives(d, 2));
    CHECK(l.value() == doctest::Approx(std::log(2.0)));
    CHECK(l.derivative(1) == doctest::Approx(0.5));
    CHECK(l.derivative(2) == doctest::Approx(-0.25));
  }

  TEST_CASE("trig polynomial derivatives and normalization") {
    const TrigPolynomial q({0.3, -0.1}, {0.2, 0.05});
    CHECK(std::abs(q(0.0)) < 1e-16);
    const double x = 0.37, e = 1e-5;
    for (int m = 0; m < 4; ++m) {
      const double fd = (q.derivative(x + e, m) - q.derivative(x - e, m)) / (2 * e);
      CHECK(q.derivative(x, m + 1) == doctest::Approx(fd).epsilon(1e-7));
      CHECK(q.jet(x, 4).derivative(m) == doctest::Approx(q.derivative(x, m)).epsilon(1e-13));
    }
    CHECK(q.derivative_bound(1) == doctest::Approx(2 * kPi * 0.5 + 4 * kPi * 0.15));
  }

  TEST_CASE("periodic spline interpolates and converges") {
    for (int degree : {1, 3, 5, 7}) {
      double prev = 0.0;
      for (int M : {16, 32, 64}) {
        std::vector<double> nodes(M), values(M);
        for (int i = 0; i < M; ++i) {
          nodes[i] = (i + 0.3 * std::sin(i)) / M;  // non-uniform
          values[i] = std::sin(2 * kPi * nodes[i]) + 0.2 * std::cos(4 * kPi * nodes[i]);
        }
        const auto p = periodic_spline(nodes, values, degree);
        for (int i = 0; i < M; ++i) CHECK(std::abs(p(nodes[i]) - values[i]) < 1e-12);
        double err = 0.0;
        for (int i = 0; i < 997; ++i) {
          const double x = i / 997.0;
          err = std::max(err, std::abs(p(x) - std::sin(2 * kPi * x) - 0.2 * std::cos(4 * kPi * x)));
        }
        if (prev > 0.0 && err > 1e-13) CHECK(prev / err > std::pow(2.0, degree + 1) * 0.5);
        prev = err;
      }
    }
  }

  TEST_CASE("spline is periodic across the seam") {
    std::vector<double> nodes{0.0, 0.2, 0.45, 0.6, 0.8, 0.9}, values{0.0, 0.1, -0.2, 0.3, 0.05, -0.1};
    const auto p = periodic_spline(nodes, values, 5);
    for (int k = 0; k <= 4; ++k) {
      CHECK(p.jet(1.0 - 1e-12, 4).derivative(k) == doctest::Approx(p.jet(1e-12, 4).derivative(k)).epsilon(1e-6));
    }
    CHECK(std::abs(p(1.3) - p(0.3)) < 1e-14);
  }

  TEST_CASE("antiderivative of a periodic piecewise polynomial") {
    std::vector<double> v(64);
    for (int i = 0; i < 64; ++i) v[i] = 1.0 + 0.1 * std::cos(2 * kPi * i / 64.0);
    const auto p = periodic_cubic_uniform(v);
    const auto a = p.antiderivative();
    CHECK(std::abs(a(0.0)) < 1e-16);
    CHECK(a.drift() == doctest::Approx(p.integral()));
    CHECK(p.integral() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 100; ++i) {
      const double x = i / 100.0;
      CHECK(std::abs(a(x) - (x + 0.1 / (2 * kPi) * std::sin(2 * kPi * x))) < 1e-7);
      CHECK(a.jet(x, 1).derivative(1) == doctest::Approx(p(x)).epsilon(1e-12));
    }
  }

  TEST_CASE("monotone cubic preserves order") {
    std::vector<double> nodes{0.0, 0.1, 0.11, 0.5, 0.9}, vals{0.0, 0.3, 0.31, 0.32, 0.95};
    const auto p = monotone_periodic_cubic(nodes, vals);
    for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(std::abs(p(nodes[i]) - vals[i]) < 1e-14);
    double prev = p(0.0);
    for (int i = 1; i <= 2000; ++i) {
      const double y = p(i / 2000.0);
      CHECK(y >= prev);
      prev = y;
    }
    CHECK(p.drift() == 1.0);
    std::vector<double> bad{0.0, 0.4, 0.3, 0.5, 0.6};
    CHECK_THROWS_AS(monotone_periodic_cubic(nodes, bad), MonotonicityFailure);
  }

  TEST_CASE("sampled function") {
    const auto s = SampledFunction::sample([](double x) { return std::sin(2 * kPi * x); }, 256);
    CHECK(std::abs(s(0.123) - std::sin(2 * kPi * 0.123)) < 1e-7);
    CHECK(std::abs(s.integral()) < 1e-14);
    CHECK(s.sup_norm() == doctest::Approx(1.0));
    CHECK(s.lipschitz() == doctest::Approx(2 * kPi).epsilon(1e-3));
    CHECK_THROWS_AS(SampledFunction(std::vector<double>{1.0, 2.0}), PreconditionError);
  }

  TEST_CASE("norm measurement") {
    const TrigPolynomial q({0.01}, {});
    const NormReport n = measure_norms([&](double x, int o) { return q.jet(x, o); }, 2);
    CHECK(n.sup[0] == doctest::Approx(0.01).epsilon(1e-6));
    CHECK(n.sup[1] == doctest::Approx(0.02 * kPi).epsilon(1e-6));
    CHECK(n.sup[2] == doctest::Approx(0.04 * kPi * kPi).epsilon(1e-6));
    CHECK(n.lipschitz == doctest::Approx(0.08 * kPi * kPi * kPi).epsilon(1e-3));
    CHECK(n.cs(1) == doctest::Approx(0.02 * kPi).epsilon(1e-6));
    CHECK(fit_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2.0));
  }

  TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}
