#pragma once

#include <vector>

#include "srlab/jet.hpp"

namespace srlab {

// q(x) = c0 + sum_k a_k sin(2 pi k x) + b_k cos(2 pi k x), k = 1..K, with
// c0 = -sum_k b_k so that q(0) = 0.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(std::vector<double> sine, std::vector<double> cosine);

  const std::vector<double>& sine() const { return sine_; }
  const std::vector<double>& cosine() const { return cosine_; }
  double constant() const { return c0_; }

  double operator()(double x) const;
  // m-th derivative, any m >= 0.
  double derivative(double x, int m) const;
  Jet jet(double x, int order) const;
  // sum_k (2 pi k)^m (|a_k| + |b_k|), a bound on sup |q^(m)| for m >= 1.
  double derivative_bound(int m) const;
  bool is_zero() const;

 private:
  std::vector<double> sine_;
  std::vector<double> cosine_;
  double c0_ = 0.0;
};

}  // namespace srlab
