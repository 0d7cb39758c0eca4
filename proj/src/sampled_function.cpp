#include "srlab/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "srlab/errors.hpp"
#include "srlab/norms.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

SampledFunction::SampledFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 4) throw PreconditionError("sampled function needs at least 4 samples");
  interp_ = periodic_cubic_uniform(values_);
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& f, std::size_t grid) {
  std::vector<double> v(grid);
  parallel_for(grid, [&](std::size_t i) { v[i] = f(static_cast<double>(i) / static_cast<double>(grid)); });
  return SampledFunction(std::move(v));
}

double SampledFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::lipschitz() const { return grid_lipschitz(values_); }

double SampledFunction::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

}  // namespace srlab
