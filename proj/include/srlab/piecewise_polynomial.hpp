#pragma once

#include <span>
#include <vector>

#include "srlab/jet.hpp"

namespace srlab {

// A piecewise polynomial on the circle R/Z, stored as local Taylor
// coefficients at each breakpoint. Breakpoints b_0 < ... < b_{M-1} lie in
// [0, 1); the last piece runs from b_{M-1} to b_0 + 1. The function is a
// lift with drift: p(x + 1) = p(x) + drift (drift = 0 for periodic data).
class PeriodicPiecewisePolynomial {
 public:
  PeriodicPiecewisePolynomial() = default;
  // coeffs has breaks.size() * (degree + 1) entries, row-major per piece.
  PeriodicPiecewisePolynomial(std::vector<double> breaks, std::vector<double> coeffs,
                              int degree, double drift = 0.0);

  int degree() const { return degree_; }
  double drift() const { return drift_; }
  void set_drift(double drift) { drift_ = drift; }
  std::size_t pieces() const { return breaks_.size(); }
  std::span<const double> breaks() const { return breaks_; }

  double operator()(double x) const;
  // Derivatives up to min(order, degree); higher orders are zero.
  Jet jet(double x, int order) const;

  // Integral over one period. Requires drift == 0.
  double integral() const;
  // A(x) = integral_0^x p. The result has drift equal to integral().
  PeriodicPiecewisePolynomial antiderivative() const;

  PeriodicPiecewisePolynomial& operator*=(double s);
  // Adds the constant c to every piece.
  PeriodicPiecewisePolynomial& add_constant(double c);
  // Subtracts the identity x (turns a lift with drift 1 into a periodic
  // displacement).
  PeriodicPiecewisePolynomial minus_identity() const;

 private:
  std::size_t locate(double t) const;

  std::vector<double> breaks_;
  std::vector<double> coeffs_;
  int degree_ = 0;
  double drift_ = 0.0;
};

// Periodic spline interpolant of odd degree through (nodes[i], values[i]),
// with knots at the nodes. nodes must be strictly increasing in [0, 1) and
// values periodic. Requires nodes.size() > degree.
PeriodicPiecewisePolynomial periodic_spline(std::span<const double> nodes,
                                            std::span<const double> values, int degree);

// Uniform-grid periodic cubic interpolant of values at i / G.
PeriodicPiecewisePolynomial periodic_cubic_uniform(std::span<const double> values);

// Monotone periodic piecewise-cubic Hermite interpolant (Fritsch-Carlson
// slopes) of a circle-map lift: values[i] = h(nodes[i]) with
// h(x + 1) = h(x) + 1. Values must be strictly increasing and
// values.back() < values.front() + 1.
PeriodicPiecewisePolynomial monotone_periodic_cubic(std::span<const double> nodes,
                                                    std::span<const double> values);

}  // namespace srlab
