#include "srlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srlab {

namespace {
constexpr std::array<double, Jet::kMaxOrder + 1> kFactorial{1, 1, 2, 6, 24, 120, 720, 5040};

void check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder) {
    throw std::invalid_argument("jet order out of range: " + std::to_string(order));
  }
}
}  // namespace

Jet Jet::constant(double value, int order) {
  check_order(order);
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double x0, int order) {
  check_order(order);
  Jet j(order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_derivatives(const double* derivs, int order) {
  check_order(order);
  Jet j(order);
  for (int k = 0; k <= order; ++k) j.c_[static_cast<std::size_t>(k)] = derivs[k] / kFactorial[static_cast<std::size_t>(k)];
  return j;
}

double Jet::derivative(int k) const {
  if (k > order_) throw std::out_of_range("jet derivative beyond stored order");
  return c_[static_cast<std::size_t>(k)] * kFactorial[static_cast<std::size_t>(k)];
}

Jet Jet::truncated(int order) const {
  Jet j(std::min(order, order_));
  for (int k = 0; k <= j.order_; ++k) j.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] += o.c_[static_cast<std::size_t>(k)];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[static_cast<std::size_t>(k)] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] -= o.c_[static_cast<std::size_t>(k)];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[static_cast<std::size_t>(k)] = 0.0;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_; ++i) {
    double s = 0.0;
    for (int k = 0; k <= i; ++k) s += a.c_[static_cast<std::size_t>(k)] * b.c_[static_cast<std::size_t>(i - k)];
    r.c_[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

Jet compose(const Jet& outer, const Jet& inner) {
  const int order = std::min(outer.order(), inner.order());
  Jet shifted = inner.truncated(order);
  shifted.coeff(0) = 0.0;
  Jet result = Jet::constant(outer.coeff(0), order);
  Jet power = Jet::constant(1.0, order);
  for (int k = 1; k <= order; ++k) {
    power = power * shifted;
    const double b = outer.coeff(k);
    for (int i = k; i <= order; ++i) result.coeff(i) += b * power.coeff(i);
  }
  return result;
}

Jet invert(const Jet& f, double x0) {
  const int order = f.order();
  if (order == 0) return Jet::constant(x0, 0);
  const double a1 = f.coeff(1);
  if (a1 == 0.0 || !std::isfinite(a1)) throw std::domain_error("jet inversion with zero derivative");
  // Series reversion: the e^m coefficient of f(g) equals a1 * g_m plus terms
  // involving lower coefficients of g only.
  Jet g(order);
  g.coeff(1) = 1.0 / a1;
  Jet f0 = f;
  f0.coeff(0) = 0.0;
  for (int m = 2; m <= order; ++m) {
    const Jet fg = compose(f0, g.truncated(m));
    g.coeff(m) = -fg.coeff(m) / a1;
  }
  g.coeff(0) = x0;
  return g;
}

Jet log(const Jet& f) {
  const int order = f.order();
  const double v = f.coeff(0);
  if (!(v > 0.0)) throw std::domain_error("jet log of non-positive value");
  Jet lg(order);
  lg.coeff(0) = std::log(v);
  // log(v + e) = log v + sum_{k>=1} (-1)^{k+1} (e/v)^k / k
  double vp = 1.0;
  for (int k = 1; k <= order; ++k) {
    vp *= v;
    lg.coeff(k) = ((k % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(k) * vp);
  }
  return compose(lg, f);
}

}  // namespace srlab
