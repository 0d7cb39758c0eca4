#include "srlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "srlab/errors.hpp"
#include "srlab/spectrum.hpp"

namespace srlab {

CounterexamplePair build_pair(double epsilon) {
  if (!(std::abs(epsilon) * std::numbers::pi < 1.0)) {
    throw PreconditionError("counterexample: |epsilon| pi must be below 1 for expansion");
  }
  // sin^2(pi x) = (1 - cos 2 pi x) / 2
  CounterexamplePair p;
  p.f.cosine_coeffs = {-0.5 * epsilon};
  p.f.label = "f";
  p.g.cosine_coeffs = {0.5 * epsilon};
  p.g.label = "g";
  p.degenerate = epsilon == 0.0;
  return p;
}

IsospectralReport verify_isospectral(const CircleMap& f, const CircleMap& g, int N, double tol) {
  if (f.degree() != g.degree()) throw PreconditionError("verify_isospectral: degrees differ");
  const LengthSpectrum sf = length_spectrum(f, N);
  const LengthSpectrum sg = length_spectrum(g, N);
  IsospectralReport r;
  for (int n = 1; n <= N; ++n) {
    const auto& a = sf.level(n);
    const auto& b = sg.level(n);
    double dist = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dist = std::max(dist, std::abs(a[i].value - b[i].value));
    r.level_distance.push_back(dist);
    r.max_distance = std::max(r.max_distance, dist);
  }
  r.isospectral = r.max_distance < tol;
  return r;
}

Code opposite_code(const Code& code, int d) {
  Code out(code.size());
  std::transform(code.begin(), code.end(), out.begin(), [d](int b) { return d - 1 - b; });
  return out;
}

std::vector<MultiplierMismatch> find_multiplier_mismatch(const CircleMap& f, const CircleMap& g, int N, double tol,
                                                         bool opposite) {
  if (f.degree() != g.degree()) throw PreconditionError("find_multiplier_mismatch: degrees differ");
  const int d = f.degree();
  std::vector<MultiplierMismatch> out;
  for (int n = 1; n <= N; ++n) {
    const auto rf = enumerate_periodic(f, n);
    const auto rg = enumerate_periodic(g, n);
    std::vector<double> lg(rg.size() + 1);
    for (const auto& r : rg) lg[code_value(r.code, d)] = r.log_multiplier;
    for (const auto& r : rf) {
      const Code c = opposite ? opposite_code(r.code, d) : r.code;
      std::size_t v = code_value(c, d);
      if (v == rg.size()) v = 0;  // all-(d-1) code is the fixed point 0
      const double dl = std::abs(r.log_multiplier - lg[v]);
      if (dl > tol) out.push_back({r.code, n, r.log_multiplier, lg[v], dl});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MultiplierMismatch& a, const MultiplierMismatch& b) { return a.discrepancy > b.discrepancy; });
  return out;
}

}  // namespace srlab
