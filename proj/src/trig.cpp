#include "srlab/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace srlab {

TrigPolynomial::TrigPolynomial(std::vector<double> sine, std::vector<double> cosine)
    : sine_(std::move(sine)), cosine_(std::move(cosine)) {
  c0_ = 0.0;
  for (double b : cosine_) c0_ -= b;
}

double TrigPolynomial::operator()(double x) const { return derivative(x, 0); }

double TrigPolynomial::derivative(double x, int m) const {
  const std::size_t k_max = std::max(sine_.size(), cosine_.size());
  double v = (m == 0) ? c0_ : 0.0;
  // d^m/dx^m sin(w x) = w^m sin(w x + m pi / 2), same shift for cos.
  const int phase = m % 4;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    const double a = k <= sine_.size() ? sine_[k - 1] : 0.0;
    const double b = k <= cosine_.size() ? cosine_[k - 1] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double s = std::sin(w * x);
    const double c = std::cos(w * x);
    double ds = 0.0, dc = 0.0;  // m-th derivatives of sin, cos (without w^m)
    switch (phase) {
      case 0: ds = s; dc = c; break;
      case 1: ds = c; dc = -s; break;
      case 2: ds = -s; dc = -c; break;
      default: ds = -c; dc = s; break;
    }
    v += std::pow(w, m) * (a * ds + b * dc);
  }
  return v;
}

Jet TrigPolynomial::jet(double x, int order) const {
  std::array<double, Jet::kMaxOrder + 1> d{};
  const std::size_t k_max = std::max(sine_.size(), cosine_.size());
  d[0] = c0_;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    const double a = k <= sine_.size() ? sine_[k - 1] : 0.0;
    const double b = k <= cosine_.size() ? cosine_[k - 1] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double s = std::sin(w * x);
    const double c = std::cos(w * x);
    const double base[4] = {a * s + b * c, a * c - b * s, -(a * s + b * c), -(a * c - b * s)};
    double wp = 1.0;
    for (int m = 0; m <= order; ++m) {
      d[static_cast<std::size_t>(m)] += wp * base[m % 4];
      wp *= w;
    }
  }
  return Jet::from_derivatives(d.data(), order);
}

double TrigPolynomial::derivative_bound(int m) const {
  const std::size_t k_max = std::max(sine_.size(), cosine_.size());
  double bound = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    const double a = k <= sine_.size() ? sine_[k - 1] : 0.0;
    const double b = k <= cosine_.size() ? cosine_[k - 1] : 0.0;
    bound += std::pow(w, m) * (std::abs(a) + std::abs(b));
  }
  if (m == 0) bound += std::abs(c0_);
  return bound;
}

bool TrigPolynomial::is_zero() const {
  return std::all_of(sine_.begin(), sine_.end(), [](double v) { return v == 0.0; }) &&
         std::all_of(cosine_.begin(), cosine_.end(), [](double v) { return v == 0.0; });
}

}  // namespace srlab
