#include "srlab/periodic_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

Code parse_code(std::string_view text) {
  Code c;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw PreconditionError("code symbols must be digits");
    c.push_back(ch - '0');
  }
  if (c.empty()) throw PreconditionError("empty code");
  return c;
}

std::string code_string(const Code& code) {
  std::string s;
  for (int v : code) s.push_back(static_cast<char>('0' + v));
  return s;
}

Code code_from_value(std::size_t v, int d, int n) {
  Code c(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::size_t>(d));
    v /= static_cast<std::size_t>(d);
  }
  return c;
}

std::size_t code_value(const Code& code, int d) {
  std::size_t v = 0;
  for (int s : code) v = v * static_cast<std::size_t>(d) + static_cast<std::size_t>(s);
  return v;
}

Code rotate(const Code& code, int t) {
  const int n = static_cast<int>(code.size());
  Code r(code.size());
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = code[static_cast<std::size_t>(((i + t) % n + n) % n)];
  return r;
}

Code repeat(const Code& code, int times) {
  Code r;
  for (int i = 0; i < times; ++i) r.insert(r.end(), code.begin(), code.end());
  return r;
}

Code concat(const Code& a, const Code& b) {
  Code r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

namespace {

void check_code(const Code& code, int d) {
  if (code.empty()) throw PreconditionError("empty code");
  for (int s : code) {
    if (s < 0 || s >= d) throw PreconditionError("code symbol out of range for degree " + std::to_string(d));
  }
}

struct Orbit {
  double g = 0.0;         // y_n - x
  double log_mult = 0.0;  // sum log F'(y_i)
};

Orbit follow(const CircleMap& map, const Code& code, double x) {
  Orbit o;
  double y = x;
  for (int s : code) {
    const Jet j = map.jet(y, 1);
    o.log_mult += std::log(j.coeff(1));
    y = j.value() - s;
  }
  o.g = y - x;
  return o;
}

std::size_t ipow(int d, int n) {
  std::size_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d)) {
      throw BudgetExceeded("period too large");
    }
    v *= static_cast<std::size_t>(d);
  }
  return v;
}

bool is_primitive(const Code& c) {
  const std::size_t n = c.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool same = true;
    for (std::size_t i = p; i < n && same; ++i) same = c[i] == c[i - p];
    if (same) return false;
  }
  return true;
}

}  // namespace

PeriodicOrbitRecord periodic_point_from_code(const CircleMap& map, const Code& code) {
  check_code(code, map.degree());
  double x = map.periodic_seed(code);
  Orbit o = follow(map, code, x);
  for (int it = 0; it < 8 && o.g != 0.0; ++it) {
    const double slope = std::exp(o.log_mult) - 1.0;
    const double nx = x - o.g / slope;
    const Orbit no = follow(map, code, nx);
    if (!(std::abs(no.g) < std::abs(o.g))) break;
    x = nx;
    o = no;
  }
  // Forward residual grows like the multiplier; judge the implied step in x.
  const double step = std::abs(o.g) / (std::exp(o.log_mult) - 1.0);
  if (!(step < 1e-12)) throw NumericalError("periodic point did not converge for code " + code_string(code));
  PeriodicOrbitRecord r;
  r.code = code;
  r.period = static_cast<int>(code.size());
  if (x < 0.0) x = (x > -1e-14) ? 0.0 : x + 1.0;
  if (x >= 1.0) x -= 1.0;
  r.point = x;
  r.log_multiplier = o.log_mult;
  r.residual = step;
  return r;
}

std::vector<PeriodicOrbitRecord> enumerate_periodic(const CircleMap& map, int n, bool primitive_only) {
  if (n < 1) throw PreconditionError("period must be at least 1");
  const int d = map.degree();
  const std::size_t count = ipow(d, n) - 1;
  require_budget(count, "enumerate_periodic");
  std::vector<PeriodicOrbitRecord> out(count);
  parallel_for(count, [&](std::size_t v) { out[v] = periodic_point_from_code(map, code_from_value(v, d, n)); });
  if (primitive_only) {
    std::erase_if(out, [](const PeriodicOrbitRecord& r) { return !is_primitive(r.code); });
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PeriodicOrbitRecord& a, const PeriodicOrbitRecord& b) { return a.point < b.point; });
  return out;
}

std::vector<double> periodic_points_by_code(const CircleMap& map, int n) {
  const int d = map.degree();
  const std::size_t count = ipow(d, n);
  require_budget(count - 1, "periodic_points_by_code");
  std::vector<double> pts(count, 0.0);
  parallel_for(count - 1, [&](std::size_t v) { pts[v] = periodic_point_from_code(map, code_from_value(v, d, n)).point; });
  return pts;
}

std::pair<double, double> cyclic_gaps(const std::vector<double>& p) {
  if (p.empty()) throw PreconditionError("no points");
  double o = std::numeric_limits<double>::infinity(), big = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double next = (i + 1 < p.size()) ? p[i + 1] : p.front() + 1.0;
    const double gap = next - p[i];
    o = std::min(o, gap);
    big = std::max(big, gap);
  }
  return {o, big};
}

double nonlinearity_constant(const ValidityReport& v) {
  return v.omega / v.lambda * std::exp(v.lip_derivative / (v.lambda - 1.0));
}

GapStats gap_statistics(const std::vector<PeriodicOrbitRecord>& records, const ValidityReport& v, int n) {
  std::vector<double> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.push_back(r.point);
  std::sort(pts.begin(), pts.end());
  GapStats g;
  g.period = n;
  std::tie(g.o, g.O) = cyclic_gaps(pts);
  g.N_g = nonlinearity_constant(v);
  g.lower_bound = 1.0 / (g.N_g * std::pow(v.omega, n) - 1.0);
  const double den = std::pow(v.lambda, n) / g.N_g - 1.0;
  g.upper_bound = den > 0.0 ? 1.0 / den : std::numeric_limits<double>::infinity();
  constexpr double kRel = 1e-12;
  g.lower_ok = g.o >= g.lower_bound * (1.0 - kRel);
  g.upper_ok = g.O <= g.upper_bound * (1.0 + kRel);
  return g;
}

GapStats gap_statistics(const CircleMap& map, int n) {
  return gap_statistics(enumerate_periodic(map, n), validate_expanding(map), n);
}

DistortionReport distortion_check(const CircleMap& map, double a, double b, int n, int samples) {
  if (!(b > a) || n < 1 || samples < 2) throw PreconditionError("distortion_check: bad interval or iterate");
  auto iterate = [&](double x) {
    for (int i = 0; i < n; ++i) x = map(x);
    return x;
  };
  DistortionReport r;
  r.image_length = iterate(b) - iterate(a);
  if (r.image_length > 1.0 + 1e-12) throw PreconditionError("distortion_check: map^n is not injective on the interval");
  std::vector<double> logs(static_cast<std::size_t>(samples));
  parallel_for(logs.size(), [&](std::size_t j) {
    double z = a + (b - a) * static_cast<double>(j) / static_cast<double>(samples - 1);
    double l = 0.0;
    for (int i = 0; i < n; ++i) {
      const Jet jt = map.jet(z, 1);
      l += std::log(jt.coeff(1));
      z = jt.value();
    }
    logs[j] = l;
  });
  const auto [mn, mx] = std::minmax_element(logs.begin(), logs.end());
  r.ratio = std::exp(*mx - *mn);
  const ValidityReport v = validate_expanding(map);
  r.bound = std::exp(v.lip_derivative / (v.lambda - 1.0) * r.image_length);
  r.ok = r.ratio <= r.bound * (1.0 + 1e-12);
  return r;
}

double circle_distance(double a, double b) {
  double d = std::abs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

}  // namespace srlab
