#include "srlab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

double NormReport::cs(int s) const {
  double m = 0.0;
  for (int j = 0; j <= s && j < static_cast<int>(sup.size()); ++j) m = std::max(m, sup[static_cast<std::size_t>(j)]);
  return m;
}

double NormReport::cs_lip() const { return std::max(cs(static_cast<int>(sup.size()) - 1), lipschitz); }

NormReport measure_norms(const JetFunction& u, int s, std::size_t grid) {
  if (s < 0 || s > Jet::kMaxOrder) throw PreconditionError("norm order out of range");
  std::vector<std::vector<double>> vals(static_cast<std::size_t>(s + 1), std::vector<double>(grid));
  parallel_for(grid, [&](std::size_t i) {
    const Jet j = u(static_cast<double>(i) / static_cast<double>(grid), s);
    for (int k = 0; k <= s; ++k) vals[static_cast<std::size_t>(k)][i] = j.derivative(k);
  });
  NormReport r;
  r.sup.resize(static_cast<std::size_t>(s + 1));
  for (int k = 0; k <= s; ++k) {
    double m = 0.0;
    for (double v : vals[static_cast<std::size_t>(k)]) m = std::max(m, std::abs(v));
    r.sup[static_cast<std::size_t>(k)] = m;
  }
  r.lipschitz = grid_lipschitz(vals.back());
  return r;
}

double grid_lipschitz(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) lip = std::max(lip, std::abs(values[(i + 1) % n] - values[i]));
  return lip * static_cast<double>(n);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw PreconditionError("fit_slope needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace srlab
