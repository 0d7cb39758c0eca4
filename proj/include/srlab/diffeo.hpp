#pragma once

#include <memory>
#include <vector>

#include "srlab/jet.hpp"
#include "srlab/piecewise_polynomial.hpp"
#include "srlab/trig.hpp"

namespace srlab {

// Orientation-preserving circle diffeomorphism, represented by its lift
// with h(0) = 0 and h(x + 1) = h(x) + 1.
class CircleDiffeo {
 public:
  virtual ~CircleDiffeo() = default;

  virtual Jet jet(double x, int order) const = 0;
  virtual double operator()(double x) const { return jet(x, 0).value(); }
  double derivative(double x) const { return jet(x, 1).coeff(1); }
  // Lift inverse; the default is bracketed Newton.
  virtual double inverse(double y) const;
  // Highest derivative order carrying information (piecewise forms stop
  // at their polynomial degree).
  virtual int smoothness() const { return Jet::kMaxOrder; }
};

using DiffeoPtr = std::shared_ptr<const CircleDiffeo>;

// x with h(x) = y on the lift, |h(x) - y| < 1e-14. Throws
// MonotonicityFailure when the bracket shows h is not increasing.
double diffeo_inverse(const CircleDiffeo& h, double y);

class IdentityDiffeo final : public CircleDiffeo {
 public:
  Jet jet(double x, int order) const override { return Jet::variable(x, order); }
  double operator()(double x) const override { return x; }
  double inverse(double y) const override { return y; }
};

// h(x) = x + q(x) with q a trigonometric polynomial, q(0) = 0.
class TrigDiffeo final : public CircleDiffeo {
 public:
  explicit TrigDiffeo(TrigPolynomial q);
  Jet jet(double x, int order) const override;
  double operator()(double x) const override { return x + q_(x); }
  const TrigPolynomial& displacement() const { return q_; }

 private:
  TrigPolynomial q_;
};

// h(x) = x + q(x) with q a periodic piecewise polynomial.
class PiecewiseDiffeo final : public CircleDiffeo {
 public:
  explicit PiecewiseDiffeo(PeriodicPiecewisePolynomial q);
  Jet jet(double x, int order) const override;
  double operator()(double x) const override { return x + q_(x); }
  int smoothness() const override { return q_.degree(); }
  const PeriodicPiecewisePolynomial& displacement() const { return q_; }

 private:
  PeriodicPiecewisePolynomial q_;
};

// parts[0] is applied first: h = parts.back() o ... o parts[0].
class CompositeDiffeo final : public CircleDiffeo {
 public:
  explicit CompositeDiffeo(std::vector<DiffeoPtr> parts);
  Jet jet(double x, int order) const override;
  double operator()(double x) const override;
  double inverse(double y) const override;
  int smoothness() const override;
  const std::vector<DiffeoPtr>& parts() const { return parts_; }

 private:
  std::vector<DiffeoPtr> parts_;
};

// Composition outer o inner, flattening nested composites.
DiffeoPtr compose(const DiffeoPtr& outer, const DiffeoPtr& inner);

struct DiffeoReport {
  double min_derivative = 0.0;
  double value_at_zero = 0.0;
  double period_defect = 0.0;  // |h(1) - 1|
  bool valid = false;
};

DiffeoReport validate_diffeo(const CircleDiffeo& h, std::size_t grid = 1u << 14);

}  // namespace srlab
