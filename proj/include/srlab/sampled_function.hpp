#pragma once

#include <functional>
#include <vector>

#include "srlab/piecewise_polynomial.hpp"

namespace srlab {

// 1-periodic function sampled on the uniform grid i / G, evaluated off grid
// by its periodic cubic interpolant.
class SampledFunction {
 public:
  SampledFunction() = default;
  explicit SampledFunction(std::vector<double> values);
  static SampledFunction sample(const std::function<double(double)>& f, std::size_t grid);

  std::size_t grid_size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator()(double x) const { return interp_(x); }
  double derivative(double x) const { return interp_.jet(x, 1).coeff(1); }
  const PeriodicPiecewisePolynomial& interpolant() const { return interp_; }

  double sup_norm() const;
  // Grid Lipschitz constant of the samples.
  double lipschitz() const;
  // Exact integral of the interpolant, h * sum of samples.
  double integral() const;

 private:
  std::vector<double> values_;
  PeriodicPiecewisePolynomial interp_;
};

}  // namespace srlab
