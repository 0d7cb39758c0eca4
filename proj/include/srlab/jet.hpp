#pragma once

#include <array>
#include <cstddef>

namespace srlab {

// Truncated Taylor expansion f(x0 + e) = sum_k c[k] e^k, k <= order.
// Jets give exact chain-rule derivatives of compositions and inverses
// without symbolic bookkeeping.
class Jet {
 public:
  static constexpr int kMaxOrder = 7;

  Jet() = default;
  explicit Jet(int order) : order_(order) {}

  // Jet of the constant `value` (all higher coefficients zero).
  static Jet constant(double value, int order);
  // Jet of the identity at x0.
  static Jet variable(double x0, int order);
  // Builds a jet from derivative values f(x0), f'(x0), ..., f^(order)(x0).
  static Jet from_derivatives(const double* derivs, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }
  // k-th derivative, k! * c[k].
  double derivative(int k) const;

  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

// Jet of outer(inner(x)) at x0, given the jet of `inner` at x0 and the jet
// of `outer` at inner(x0). The result has the smaller of the two orders.
Jet compose(const Jet& outer, const Jet& inner);

// Jet of the inverse function at y0 = f(x0), given the jet of f at x0.
// Requires f'(x0) != 0.
Jet invert(const Jet& f, double x0);

// Jet of log(f) given the jet of f (f(x0) > 0).
Jet log(const Jet& f);

}  // namespace srlab
