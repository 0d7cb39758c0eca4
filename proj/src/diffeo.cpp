#include "srlab/diffeo.hpp"

#include <algorithm>
#include <cmath>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

double diffeo_inverse(const CircleDiffeo& h, double y) {
  double lo = std::floor(y);
  double hi = lo + 1.0;
  // h(lo) = lo and h(hi) = hi by the lift invariants; check them anyway so a
  // broken representation is caught here.
  const double h_lo = h(lo) - y;
  const double h_hi = h(hi) - y;
  if (h_lo > 1e-12 || h_hi < -1e-12) throw MonotonicityFailure("diffeo_inverse: bracket not increasing");
  double x = y;
  for (int it = 0; it < 200; ++it) {
    const Jet j = h.jet(x, 1);
    const double r = j.value() - y;
    if (r == 0.0) return x;
    if (r < 0.0) lo = x; else hi = x;
    const double dh = j.coeff(1);
    double next = (dh > 0.0) ? x - r / dh : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) {
      if (std::abs(h(next) - y) > 1e-13) throw MonotonicityFailure("diffeo_inverse: no root in bracket");
      return next;
    }
    x = next;
  }
  if (std::abs(h(x) - y) < 1e-14) return x;
  throw NumericalError("diffeo_inverse: no convergence");
}

double CircleDiffeo::inverse(double y) const { return diffeo_inverse(*this, y); }

TrigDiffeo::TrigDiffeo(TrigPolynomial q) : q_(std::move(q)) {}

Jet TrigDiffeo::jet(double x, int order) const { return Jet::variable(x, order) + q_.jet(x, order); }

PiecewiseDiffeo::PiecewiseDiffeo(PeriodicPiecewisePolynomial q) : q_(std::move(q)) {
  if (q_.drift() != 0.0) throw PreconditionError("displacement must be periodic");
}

Jet PiecewiseDiffeo::jet(double x, int order) const { return Jet::variable(x, order) + q_.jet(x, order); }

CompositeDiffeo::CompositeDiffeo(std::vector<DiffeoPtr> parts) : parts_(std::move(parts)) {}

Jet CompositeDiffeo::jet(double x, int order) const {
  Jet j = Jet::variable(x, order);
  for (const auto& p : parts_) j = srlab::compose(p->jet(j.value(), order), j);
  return j;
}

double CompositeDiffeo::operator()(double x) const {
  for (const auto& p : parts_) x = (*p)(x);
  return x;
}

double CompositeDiffeo::inverse(double y) const {
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) y = (*it)->inverse(y);
  return y;
}

int CompositeDiffeo::smoothness() const {
  int s = Jet::kMaxOrder;
  for (const auto& p : parts_) s = std::min(s, p->smoothness());
  return s;
}

DiffeoPtr compose(const DiffeoPtr& outer, const DiffeoPtr& inner) {
  std::vector<DiffeoPtr> parts;
  auto append = [&parts](const DiffeoPtr& d) {
    if (dynamic_cast<const IdentityDiffeo*>(d.get())) return;
    if (const auto* c = dynamic_cast<const CompositeDiffeo*>(d.get())) {
      parts.insert(parts.end(), c->parts().begin(), c->parts().end());
    } else {
      parts.push_back(d);
    }
  };
  append(inner);
  append(outer);
  if (parts.empty()) return std::make_shared<IdentityDiffeo>();
  if (parts.size() == 1) return parts.front();
  return std::make_shared<CompositeDiffeo>(std::move(parts));
}

DiffeoReport validate_diffeo(const CircleDiffeo& h, std::size_t grid) {
  DiffeoReport r;
  std::vector<double> d(grid);
  parallel_for(grid, [&](std::size_t i) { d[i] = h.derivative(static_cast<double>(i) / static_cast<double>(grid)); });
  r.min_derivative = *std::min_element(d.begin(), d.end());
  r.value_at_zero = h(0.0);
  r.period_defect = std::abs(h(1.0) - 1.0);
  r.valid = r.min_derivative > 0.0 && std::abs(r.value_at_zero) < 1e-12 && r.period_defect < 1e-12;
  return r;
}

}  // namespace srlab
