#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "srlab/errors.hpp"
#include "srlab/norms.hpp"
#include "srlab/spectrum.hpp"

using namespace srlab;
using testutil::f0;
using testutil::L2;

TEST_SUITE("spectrum") {
  TEST_CASE("length_spectrum examples") {
    const LengthSpectrum l = length_spectrum(*L2(), 3);
    for (int n = 1; n <= 3; ++n) {
      CHECK(l.level(n).size() == (std::size_t{1} << n) - 1);
      for (const auto& e : l.level(n)) CHECK(e.value == doctest::Approx(n * std::log(2.0)).epsilon(1e-14));
    }
    const LengthSpectrum s = length_spectrum(*f0(), 5);
    bool found = false;
    for (const auto& e : s.level(3)) found = found || std::abs(e.value - 2.31) < 0.05;
    CHECK(found);
    const double lam = 2.0 - 0.1 * std::numbers::pi;
    CHECK(s.level(5).front().value >= 5 * std::log(lam) - 1e-12);
    for (int n = 1; n <= 5; ++n) {
      CHECK(std::is_sorted(s.level(n).begin(), s.level(n).end(),
                           [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; }));
    }
  }

  TEST_CASE("spectrum is a conjugacy invariant") {
    const auto f = f0();
    const auto h = std::make_shared<TrigDiffeo>(TrigPolynomial({0.01, 0.003}, {0.002}));
    const ConjugatedMap c(f, h);
    const LengthSpectrum a = length_spectrum(*f, 8), b = length_spectrum(c, 8);
    for (int n = 1; n <= 8; ++n) {
      for (std::size_t i = 0; i < a.level(n).size(); ++i) {
        CHECK(std::abs(a.level(n)[i].value - b.level(n)[i].value) < 1e-9);
      }
    }
  }

  TEST_CASE("default sparsity parameters") {
    const DefaultSparsity d2 = default_sparsity_parameters(2);
    CHECK(d2.gamma0 == 1.0 / 3.0);
    CHECK(d2.a0 == doctest::Approx(2.2599).epsilon(1e-4));
    CHECK(d2.beta0 == doctest::Approx(5.0e-4).epsilon(0.02));
    const DefaultSparsity d3 = default_sparsity_parameters(3);
    CHECK(d3.a0 == 2.0);
    CHECK(d3.beta0 == 1.0 / 1440.0);
    CHECK(d3.gamma0 == 1.0 / 3.0);
  }

  TEST_CASE("sparsity classification") {
    const SparsityParams p{0.1, 0.5, 0.5, 1.0};
    const SparsityVerdict l = sparsity_classify(length_spectrum(*L2(), 6), p);
    CHECK(l.satisfied);
    CHECK(l.violations == 0);
    CHECK(sparsity_classify(length_spectrum(*L2(), 1), p).satisfied);
    CHECK_THROWS_AS(sparsity_classify(length_spectrum(*f0(), 3), SparsityParams{0.3, 0.3, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(sparsity_classify(length_spectrum(*f0(), 3), SparsityParams{-0.1, 0.3, 1, 1}), PreconditionError);
  }

  TEST_CASE("reported C_beta threshold is sharp") {
    const LengthSpectrum s = length_spectrum(*f0(), 5);
    const SparsityParams p{0.1, 0.5, 1.0, 1e-12};
    const SparsityVerdict v = sparsity_classify(s, p);
    REQUIRE(std::isfinite(v.c_beta_max));
    SparsityParams below = p, above = p;
    below.c_beta = 0.999 * v.c_beta_max;
    above.c_beta = 1.001 * v.c_beta_max;
    CHECK(sparsity_classify(s, below).satisfied);
    const SparsityVerdict bad = sparsity_classify(s, above);
    CHECK_FALSE(bad.satisfied);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.pairs == v.pairs);
  }

  TEST_CASE("marking depth formula") {
    const double lam = 1.7;
    CHECK(marking_depth(std::pow(lam, -10.0), 0.5, 1.0, lam, 2.0) == 10);
    CHECK(marking_depth(0.0, 0.5, 1.0, lam, 2.0) == INT_MAX);
  }

  TEST_CASE("kappa0 is the smallest k satisfying the inequality") {
    const double beta = 0.05, cb = 2.0, K = 3.0, om = 2.3, eta = 2.0;
    const int k0 = marking_kappa0(beta, cb, K, om, eta);
    auto ok = [&](int k) {
      return std::log(k) + beta * k * std::log(om) - std::log(cb) + std::log(K) < eta * beta * k * std::log(om);
    };
    CHECK(ok(k0));
    for (int k = 1; k < k0; ++k) CHECK_FALSE(ok(k));
  }

  TEST_CASE("recover_marking: identical spectra") {
    const LengthSpectrum s = length_spectrum(*f0(), 8);
    const MarkingTable t = recover_marking(s, s, 1e-12, SparsityParams{0.5, 0.9, 10.0, 1e-6}, 2.0);
    CHECK(t.kappa0 == 1);
    CHECK(t.recovered_up_to == 8);
    CHECK(t.max_discrepancy == 0.0);
    CHECK(t.all_code_consistent);
    for (const auto& r : t.rows) CHECK(r.discrepancy <= r.threshold);
  }

  TEST_CASE("recover_marking: smooth conjugate") {
    const auto f = f0();
    const auto c = std::make_shared<ConjugatedMap>(f, std::make_shared<TrigDiffeo>(TrigPolynomial({1e-6}, {})));
    const double delta1 = measure_norms([&](double x, int o) { return c->jet(x, o) - f->jet(x, o); }, 1).cs(1);
    const MarkingTable t =
        recover_marking(length_spectrum(*c, 6), length_spectrum(*f, 6), delta1, SparsityParams{0.5, 0.9, 10.0, 1e-7}, 2.0);
    CHECK(t.recovered_up_to >= 1);
    CHECK(t.max_discrepancy < 1e-9);
    CHECK(t.all_code_consistent);
    // Corollary bound K k delta1.
    for (const auto& r : t.rows) CHECK(r.discrepancy <= t.K * r.period * delta1);
  }

  TEST_CASE("recover_marking: missing levels give an empty table, not a crash") {
    const LengthSpectrum s = length_spectrum(*f0(), 2);
    const MarkingTable t = recover_marking(s, s, 1e-12, SparsityParams{0.01, 0.9, 1.0, 1e-6}, 2.0);
    CHECK(t.kappa0 > 2);
    CHECK(t.recovered_up_to == 0);
    CHECK(t.rows.empty());
  }
}
