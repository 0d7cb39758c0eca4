#include "srlab/messengers.hpp"

#include <algorithm>
#include <cmath>

#include "srlab/errors.hpp"

namespace srlab {

namespace {

bool all_zero(const Code& c) {
  return std::all_of(c.begin(), c.end(), [](int s) { return s == 0; });
}

void check_budget_period(const CircleMap& map, std::size_t period) {
  require_budget(period * period, "messenger period");
  (void)map;
}

}  // namespace

std::vector<double> periodic_orbit_points(const CircleMap& map, const Code& code) {
  // Backward iteration along inverse branches is contracting, so the orbit
  // keeps the accuracy of its first point.
  const std::size_t n = code.size();
  std::vector<double> pts(n);
  pts[0] = periodic_point_from_code(map, code).point;
  double x = pts[0];
  for (std::size_t s = n; s-- > 1;) {
    x = map.inverse_branch(x, code[s]);
    pts[s] = x;
  }
  return pts;
}

MessengerContext messenger_context(const CircleMap& map, int n) {
  MessengerContext c;
  c.validity = validate_expanding(map);
  c.n = n;
  const auto recs = enumerate_periodic(map, n);
  std::vector<double> pts;
  for (const auto& r : recs) pts.push_back(r.point);
  std::tie(c.o_n, c.O_n) = cyclic_gaps(pts);
  return c;
}

MessengerSpec messenger(const CircleMap& map, const Code& code_minus, const Code& code_plus, int p, int q) {
  return messenger(map, code_minus, code_plus, p, q, messenger_context(map, static_cast<int>(code_minus.size())));
}

MessengerSpec messenger(const CircleMap& map, const Code& code_minus, const Code& code_plus, int p, int q,
                        const MessengerContext& ctx) {
  if (code_minus.size() != code_plus.size() || code_minus.empty()) {
    throw PreconditionError("messenger codes must share a period");
  }
  if (p < 1 || q < 1) throw PreconditionError("messenger repetitions must be positive");
  MessengerSpec m;
  m.code_minus = code_minus;
  m.code_plus = code_plus;
  m.n = static_cast<int>(code_minus.size());
  m.p = p;
  m.q = q;
  m.code = concat(repeat(code_minus, p), repeat(code_plus, q));
  check_budget_period(map, m.code.size());

  const auto rec_minus = periodic_point_from_code(map, code_minus);
  const auto rec_plus = periodic_point_from_code(map, code_plus);
  m.x_minus = rec_minus.point;
  m.x_plus = rec_plus.point;
  m.y_minus = periodic_point_from_code(map, m.code).point;
  m.y_plus = periodic_point_from_code(map, rotate(m.code, p * m.n)).point;
  m.ell = std::abs(m.x_minus - m.x_plus);
  m.t_minus = std::abs(m.x_minus - m.y_minus);
  m.t_plus = std::abs(m.x_plus - m.y_plus);
  m.degenerate = m.ell == 0.0;

  if (ctx.n != m.n) throw PreconditionError("messenger context built for another period");
  const ValidityReport& v = ctx.validity;
  m.c_g = std::exp(v.lip_derivative / (v.lambda - 1.0));
  const double Lm = std::exp(p * rec_minus.log_multiplier);
  const double Lp = std::exp(q * rec_plus.log_multiplier);
  const double den = Lp * Lm - 1.0;
  m.lower_minus = m.ell * (Lp / m.c_g - 1.0) / den;
  m.upper_minus = m.ell * (m.c_g * Lp - 1.0) / den;
  m.lower_plus = m.ell * (Lm / m.c_g - 1.0) / den;
  m.upper_plus = m.ell * (m.c_g * Lm - 1.0) / den;

  m.o_n = ctx.o_n;
  m.O_n = ctx.O_n;
  if (!m.degenerate) {
    double c = 1.0;
    auto widen = [&](double t, int reps) {
      c = std::max(c, t / (m.ell * std::pow(m.O_n, reps)));
      if (t > 0.0) c = std::max(c, m.ell * std::pow(m.o_n, reps) / t);
    };
    widen(m.t_minus, p);
    widen(m.t_plus, q);
    m.empirical_constant = c;
  }
  constexpr double kTol = 1e-12;
  m.bounds_ok = m.lower_minus - kTol <= m.t_minus && m.t_minus <= m.upper_minus + kTol &&
                m.lower_plus - kTol <= m.t_plus && m.t_plus <= m.upper_plus + kTol;
  return m;
}

Code hybrid_code(const Code& code_i, int t, int p) {
  const int n = static_cast<int>(code_i.size());
  const Code code_j = rotate(code_i, t);
  Code c(static_cast<std::size_t>(p * n), 0);
  c.insert(c.end(), code_i.begin(), code_i.begin() + t);
  const Code tail = repeat(code_j, p);
  c.insert(c.end(), tail.begin(), tail.end());
  return c;
}

namespace {

struct HybridParts {
  std::vector<double> pseudo;
  Code code_j;
};

void check_hybrid(const Code& code_i, int t, int p, int min_shift) {
  const int n = static_cast<int>(code_i.size());
  if (n < 1) throw PreconditionError("empty code");
  if (p < 1) throw PreconditionError("p must be positive");
  if (t < min_shift || t >= n) {
    throw PreconditionError("shift t must lie in [" + std::to_string(min_shift) + ", " + std::to_string(n) + ")");
  }
}

HybridParts build_pseudo(const CircleMap& map, const Code& code_i, int t, int p) {
  const int n = static_cast<int>(code_i.size());
  HybridParts h;
  h.code_j = rotate(code_i, t);
  const Code zeros(static_cast<std::size_t>(p * n), 0);
  // y_i^-: messenger 0 -> x_i; first pn points of its orbit.
  const auto mi = periodic_orbit_points(map, concat(zeros, repeat(code_i, p)));
  h.pseudo.insert(h.pseudo.end(), mi.begin(), mi.begin() + p * n);
  const auto xi = periodic_orbit_points(map, code_i);
  h.pseudo.insert(h.pseudo.end(), xi.begin(), xi.begin() + t);
  // y_j^+ = g^{pn}(y_j^-) has code sigma_j^p 0^{pn}.
  const auto mj = periodic_orbit_points(map, concat(repeat(h.code_j, p), zeros));
  h.pseudo.insert(h.pseudo.end(), mj.begin(), mj.begin() + p * n);
  return h;
}

}  // namespace

HybridMessengerSpec hybrid_messenger(const CircleMap& map, const Code& code_i, int t, int p, double constant,
                                     int min_shift) {
  HybridMessengerSpec h;
  h.code_i = code_i;
  h.n = static_cast<int>(code_i.size());
  h.t = t;
  h.p = p;
  h.constant = constant;
  const ValidityReport v = validate_expanding(map);
  h.scale = std::pow(v.lambda, -static_cast<double>(h.n * p));
  if (all_zero(code_i)) {
    h.collapsed = true;
    h.code_j = code_i;
    h.code = Code(static_cast<std::size_t>(2 * p * h.n + std::max(t, 0)), 0);
    h.within_bound = true;
    return h;
  }
  check_hybrid(code_i, t, p, min_shift);
  h.code = hybrid_code(code_i, t, p);
  check_budget_period(map, h.code.size());
  const HybridParts parts = build_pseudo(map, code_i, t, p);
  h.code_j = parts.code_j;
  const auto orbit = periodic_orbit_points(map, h.code);
  for (std::size_t s = 0; s < orbit.size(); ++s) h.deviation = std::max(h.deviation, circle_distance(orbit[s], parts.pseudo[s]));
  h.z_minus = orbit[0];
  h.z0 = orbit[static_cast<std::size_t>(p * h.n)];
  h.z_plus = orbit[static_cast<std::size_t>(p * h.n + t)];
  h.empirical_constant = h.deviation / h.scale;
  h.within_bound = h.deviation <= constant * h.scale;
  return h;
}

PseudoOrbit pseudo_orbit(const CircleMap& map, const Code& code_i, int t, int p) {
  PseudoOrbit po;
  const int n = static_cast<int>(code_i.size());
  if (all_zero(code_i)) {
    po.collapsed = true;
    po.points.assign(static_cast<std::size_t>(2 * p * n + std::max(t, 0)), 0.0);
    po.jumps.assign(po.points.size(), 0.0);
    return po;
  }
  check_hybrid(code_i, t, p, 1);
  po.points = build_pseudo(map, code_i, t, p).pseudo;
  const std::size_t m = po.points.size();
  po.jumps.resize(m);
  for (std::size_t s = 0; s < m; ++s) {
    po.jumps[s] = circle_distance(map(po.points[s]), po.points[(s + 1) % m]);
    po.max_jump = std::max(po.max_jump, po.jumps[s]);
  }
  const auto recs = enumerate_periodic(map, n);
  std::vector<double> pts;
  for (const auto& r : recs) pts.push_back(r.point);
  po.O_n = cyclic_gaps(pts).second;
  po.empirical_constant = po.max_jump / std::pow(po.O_n, p);
  return po;
}

}  // namespace srlab
