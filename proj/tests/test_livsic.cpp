#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "srlab/counterexample.hpp"
#include "srlab/errors.hpp"
#include "srlab/livsic.hpp"
#include "srlab/normalization.hpp"
#include "srlab/reconstruction.hpp"

using namespace srlab;
using testutil::f0;
using testutil::L2;
constexpr double kPi = std::numbers::pi;

namespace {
// v with v(0) = 0
double v_fn(double x) { return 0.05 * std::sin(2 * kPi * x) + 0.02 * (1 - std::cos(4 * kPi * x)); }
}  // namespace

TEST_SUITE("livsic") {
  TEST_CASE("obstruction examples") {
    const auto g = f0();
    const RealFunction cob = [&](double x) { return v_fn((*g)(x)) - v_fn(x); };
    for (int m = 1; m <= 8; ++m) CHECK(periodic_obstruction(*g, cob, m) < 1e-12);
    const auto cs = SampledFunction::sample(cob, 4096);
    for (int m = 1; m <= 6; ++m) CHECK(periodic_obstruction(*g, cs, m) < 1e-8);
    for (int m = 1; m <= 5; ++m) CHECK(periodic_obstruction(*g, [](double) { return 0.3; }, m) == doctest::Approx(0.3 * m));
    CHECK(periodic_obstruction(*L2(), [](double x) { return std::sin(2 * kPi * x); }, 2) < 1e-15);
  }

  TEST_CASE("barrier function examples") {
    const auto g = f0();
    const auto zero = SampledFunction(std::vector<double>(256, 0.0));
    CHECK(barrier_function(*g, zero, 30).u.sup_norm() == 0.0);

    // u = v - v(0) = v for an exact coboundary.
    const RealFunction cob = [&](double x) { return v_fn((*g)(x)) - v_fn(x); };
    for (double x : {0.1, 0.37, 0.8}) CHECK(std::abs(barrier_value(*g, cob, x, 80) - v_fn(x)) < 1e-12);

    // L2, D(x) = x near 0: u(x) = x.
    const RealFunction id = [](double x) { return x; };
    CHECK(barrier_value(*L2(), id, 0.1, 60) == doctest::Approx(0.1).epsilon(1e-14));

    const BarrierResult b = barrier_function(*g, SampledFunction::sample(cob, 2048), 60);
    CHECK(b.S == 60);
    CHECK(coboundary_residual(*g, SampledFunction::sample(cob, 2048), b.u) < 1e-6);
  }

  TEST_CASE("constant is not a coboundary") {
    const auto g = f0();
    const auto c = SampledFunction(std::vector<double>(512, 0.25));
    const BarrierResult b = barrier_function(*g, c, 40);
    CHECK(coboundary_residual(*g, c, b.u) == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("barrier is linear in D") {
    const auto g = f0();
    const auto d1 = SampledFunction::sample([](double x) { return std::sin(2 * kPi * x); }, 512);
    const auto d2 = SampledFunction::sample([](double x) { return std::cos(6 * kPi * x) - 1; }, 512);
    std::vector<double> mix(512);
    for (std::size_t i = 0; i < 512; ++i) mix[i] = 2 * d1.values()[i] - 3 * d2.values()[i];
    const auto u1 = barrier_function(*g, d1, 40).u, u2 = barrier_function(*g, d2, 40).u;
    const auto um = barrier_function(*g, SampledFunction(mix), 40).u;
    for (std::size_t i = 0; i < 512; ++i) CHECK(std::abs(um.values()[i] - 2 * u1.values()[i] + 3 * u2.values()[i]) < 1e-10);
  }

  TEST_CASE("truncation tail bound") {
    const auto g = f0();
    const int S = barrier_truncation(*g, 1.0, 1e-10);
    const double lam = validate_expanding(*g).lambda;
    CHECK(std::pow(lam, -S) / (lam - 1) <= 1e-10);
    CHECK(std::pow(lam, -(S - 1)) / (lam - 1) > 1e-10);
  }

  TEST_CASE("pipeline on a coboundary") {
    const auto g = f0();
    const auto D = SampledFunction::sample([&](double x) { return v_fn((*g)(x)) - v_fn(x); }, 4096);
    std::vector<double> ns, res;
    for (int n = 4; n <= 7; ++n) {
      const LivsicPipelineResult r = livsic_pipeline(*g, D, n);
      CHECK(r.obstruction_4n < 1e-8);
      CHECK(r.obstruction_4n1 < 1e-8);
      ns.push_back(n);
      res.push_back(r.residual);
    }
    CHECK(res.back() < 1e-4);
    CHECK(fitted_decay_exponent(ns, res) > 0.9 * std::log(validate_expanding(*g).lambda));
  }

  TEST_CASE("fitted decay exponent") {
    CHECK(fitted_decay_exponent({1, 2, 3}, {std::exp(-1.0), std::exp(-2.0), std::exp(-3.0)}) == doctest::Approx(1.0));
  }

  TEST_CASE("derivative transfer") {
    const NormalizedMap g = normalize_map(f0());
    const ConjugacySamples same = conjugacy_oracle(*g.map, *g.map, 8);
    MarkingTable marking;
    marking.recovered_up_to = 6;
    const DerivativeTransferReport r = derivative_transfer_check(*g.map, *g.map, 6, marking, same);
    CHECK(r.distance < 1e-12);
    CHECK(r.rate > 0.0);

    // Normalized counterexample pair: the distance stays bounded away from 0.
    const CounterexamplePair pr = build_pair(0.1);
    const NormalizedMap nf = normalize_map(trig_map(pr.f)), ng = normalize_map(trig_map(pr.g));
    const ConjugacySamples oracle = conjugacy_oracle(*nf.map, *ng.map, 10);
    const DerivativeTransferReport c = derivative_transfer_check(*nf.map, *ng.map, 6, marking, oracle);
    CHECK(c.distance > 0.1);
    CHECK(c.ratio > 1.0);

    MarkingTable shallow;
    shallow.recovered_up_to = 3;
    CHECK_THROWS_AS(derivative_transfer_check(*g.map, *g.map, 6, shallow, same), PreconditionError);
    CHECK_THROWS_AS(derivative_transfer_check(*f0(), *f0(), 6, marking, same), PreconditionError);
  }
}
