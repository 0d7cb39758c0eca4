#include "srlab/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

double CircleMap::eval(double x, int order) const {
  if (order < 0 || order > Jet::kMaxOrder) throw PreconditionError("derivative order not supported by this map");
  return jet(x, order).derivative(order);
}

double CircleMap::inverse_branch(double y, int branch) const {
  const int d = degree();
  if (branch < 0 || branch >= d) throw PreconditionError("inverse_branch: branch out of range");
  y -= std::floor(y);
  const double target = y + branch;
  double lo = 0.0, hi = 1.0;
  double x = target / d;
  for (int it = 0; it < 200; ++it) {
    const Jet j = jet(x, 1);
    const double r = j.value() - target;
    if (r == 0.0) return x;
    if (r < 0.0) lo = x; else hi = x;
    const double dx = r / j.coeff(1);
    double next = x - dx;
    if (!(next >= lo && next <= hi) || !(j.coeff(1) > 0.0)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2e-16 || hi - lo <= 2e-16) return next;
    x = next;
  }
  throw NumericalError("inverse_branch: Newton iteration did not converge");
}

double CircleMap::perturbation_bound(int) const { return std::numeric_limits<double>::quiet_NaN(); }

double CircleMap::periodic_seed(std::span<const int> code) const {
  const double lambda = std::max(expansion_lower_bound(), 1.0 + 1e-3);
  const std::size_t n = code.size();
  const int rounds =
      static_cast<int>(std::ceil(std::log(1e-14) / std::log(1.0 / lambda) / static_cast<double>(n))) + 5;
  double x = 0.0;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t i = n; i-- > 0;) x = inverse_branch(x, code[i]);
  }
  return x;
}

TrigMap::TrigMap(int degree, TrigPolynomial perturbation, std::string label)
    : degree_(degree), p_(std::move(perturbation)) {
  if (degree_ < 2) throw PreconditionError("map degree must be at least 2");
  set_label(std::move(label));
  constexpr int kGrid = 4096;
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) m = std::min(m, degree_ + p_.derivative(static_cast<double>(i) / kGrid, 1));
  lambda_lower_ = m - 0.5 / kGrid * p_.derivative_bound(2);
}

std::shared_ptr<TrigMap> TrigMap::linear(int degree) {
  return std::make_shared<TrigMap>(degree, TrigPolynomial{}, "L" + std::to_string(degree));
}

Jet TrigMap::jet(double x, int order) const {
  Jet j = p_.jet(x, order);
  j += Jet::variable(x, order) * static_cast<double>(degree_);
  return j;
}

double TrigMap::eval(double x, int order) const {
  if (order < 0) throw PreconditionError("negative derivative order");
  double v = p_.derivative(x, order);
  if (order == 0) v += degree_ * x;
  if (order == 1) v += degree_;
  return v;
}

double TrigMap::perturbation_bound(int m) const { return p_.derivative_bound(m); }

namespace {
void flatten(MapPtr& base, std::vector<DiffeoPtr>& chain) {
  while (const auto* c = dynamic_cast<const ConjugatedMap*>(base.get())) {
    chain.insert(chain.begin(), c->conjugacy());
    base = c->base();
  }
}

DiffeoPtr chain_to_diffeo(const std::vector<DiffeoPtr>& chain) {
  DiffeoPtr h = std::make_shared<IdentityDiffeo>();
  for (const auto& d : chain) h = compose(d, h);
  return h;
}
}  // namespace

ConjugatedMap::ConjugatedMap(MapPtr base, std::vector<DiffeoPtr> chain) {
  flatten(base, chain);
  base_ = std::move(base);
  h_ = chain_to_diffeo(chain);
  smoothness_ = h_->smoothness();
  set_label(base_->label() + "~");
}

ConjugatedMap::ConjugatedMap(MapPtr base, DiffeoPtr h)
    : ConjugatedMap(std::move(base), std::vector<DiffeoPtr>{std::move(h)}) {}

Jet ConjugatedMap::jet(double x, int order) const {
  const double y = h_->inverse(x);
  const Jet hy = h_->jet(y, order);
  const Jet hinv = invert(hy, y);
  Jet j = compose(base_->jet(y, order), hinv);
  return compose(h_->jet(j.value(), order), j);
}

double ConjugatedMap::eval(double x, int order) const {
  if (order > smoothness_) throw PreconditionError("derivative order exceeds the conjugacy's smoothness");
  return CircleMap::eval(x, order);
}

double ConjugatedMap::inverse_branch(double y, int branch) const {
  y -= std::floor(y);
  double x = (*h_)(base_->inverse_branch(h_->inverse(y), branch));
  return x;
}

double ConjugatedMap::expansion_lower_bound() const { return base_->expansion_lower_bound(); }

double ConjugatedMap::periodic_seed(std::span<const int> code) const {
  return (*h_)(base_->periodic_seed(code));
}

double eval(const CircleMap& map, double x, int derivative_order) { return map.eval(x, derivative_order); }

double inverse_branch(const CircleMap& map, double y, int branch) { return map.inverse_branch(y, branch); }

ValidityReport validate_expanding(const CircleMap& map, std::size_t grid) {
  ValidityReport r;
  const int d = map.degree();
  r.degree = d;
  struct Sample {
    double p0, p1, p2;
  };
  std::vector<Sample> s(grid);
  parallel_for(grid, [&](std::size_t i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    const Jet j = map.jet(x, 2);
    s[i] = {j.value() - d * x, j.derivative(1) - d, j.derivative(2)};
  });
  double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
  double lip2 = 0.0;
  const double h = 1.0 / static_cast<double>(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    pmin = std::min(pmin, s[i].p1);
    pmax = std::max(pmax, s[i].p1);
    r.c0 = std::max(r.c0, std::abs(s[i].p0));
    r.c1 = std::max(r.c1, std::abs(s[i].p1));
    r.c2 = std::max(r.c2, std::abs(s[i].p2));
    lip2 = std::max(lip2, std::abs(s[(i + 1) % grid].p2 - s[i].p2) / h);
  }
  const double b3 = map.perturbation_bound(3);
  r.analytic_certificate = std::isfinite(b3);
  const double next = r.analytic_certificate ? b3 : lip2;
  const double b2 = r.analytic_certificate ? map.perturbation_bound(2) : r.c2 + 0.5 * h * lip2;
  r.lambda = d + pmin;
  r.omega = d + pmax;
  r.a = (r.lambda > 1.0) ? std::log(r.omega) / std::log(r.lambda) : std::numeric_limits<double>::infinity();
  r.c2_certified = std::max({r.c0, r.c1, r.c2 + 0.5 * h * next});
  r.lip_derivative = std::min(b2, r.c2 + 0.5 * h * next);
  r.lambda_certified = r.lambda - 0.5 * h * r.lip_derivative;
  r.expanding = r.lambda_certified > 1.0;
  r.near_linear = r.c2_certified < 0.5 * (d - 1);
  return r;
}

}  // namespace srlab
