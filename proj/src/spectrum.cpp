#include "srlab/spectrum.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>

#include "srlab/errors.hpp"
#include "srlab/parallel.hpp"

namespace srlab {

const std::vector<SpectrumEntry>& LengthSpectrum::level(int n) const {
  if (n < 1 || n > max_level()) throw PreconditionError("spectrum level " + std::to_string(n) + " not stored");
  return levels[static_cast<std::size_t>(n - 1)];
}

double LengthSpectrum::a() const { return std::log(omega) / std::log(lambda); }

LengthSpectrum length_spectrum(const CircleMap& map, int N) {
  if (N < 1) throw PreconditionError("spectrum depth must be at least 1");
  LengthSpectrum s;
  s.degree = map.degree();
  const ValidityReport v = validate_expanding(map);
  s.lambda = v.lambda;
  s.omega = v.omega;
  s.lip_derivative = v.lip_derivative;
  for (int n = 1; n <= N; ++n) {
    const auto recs = enumerate_periodic(map, n);
    std::vector<SpectrumEntry> lvl;
    lvl.reserve(recs.size());
    for (const auto& r : recs) lvl.push_back({r.log_multiplier, r.code, r.point});
    std::stable_sort(lvl.begin(), lvl.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    s.levels.push_back(std::move(lvl));
  }
  return s;
}

namespace {
void check_params(const SparsityParams& p) {
  if (!(p.beta > 0.0 && p.gamma > 0.0 && p.c_beta > 0.0 && p.c_gamma > 0.0)) {
    throw PreconditionError("sparsity parameters must be positive");
  }
  if (!(p.beta < p.gamma)) throw PreconditionError("sparsity parameters require beta < gamma");
}
}  // namespace

SparsityVerdict sparsity_classify(const LengthSpectrum& spec, const SparsityParams& params) {
  check_params(params);
  struct Item {
    int level;
    double value;
  };
  std::vector<Item> items;
  for (int n = 1; n <= spec.max_level(); ++n) {
    for (const auto& e : spec.level(n)) items.push_back({n, e.value});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.level != b.level ? a.level < b.level : a.value < b.value;
  });
  const std::size_t m = items.size();
  struct Row {
    std::size_t far = 0, close = 0, viol = 0;
    double cmax = std::numeric_limits<double>::infinity();
    std::size_t first_viol = SIZE_MAX;
  };
  std::vector<Row> rows(m);
  parallel_for(m, [&](std::size_t i) {
    Row& r = rows[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      const double l1 = items[i].value, l2 = items[j].value;
      const double d = std::abs(l1 - l2);
      const double hi = std::max(l1, l2), lo = std::min(l1, l2);
      if (d <= params.c_gamma * std::exp(-params.gamma * lo)) {
        ++r.close;
        continue;
      }
      r.cmax = std::min(r.cmax, d * std::exp(params.beta * hi));
      if (d >= params.c_beta * std::exp(-params.beta * hi)) {
        ++r.far;
      } else {
        ++r.viol;
        if (r.first_viol == SIZE_MAX) r.first_viol = j;
      }
    }
  });
  SparsityVerdict v;
  v.c_beta_max = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    v.far += r.far;
    v.close += r.close;
    v.violations += r.viol;
    v.c_beta_max = std::min(v.c_beta_max, r.cmax);
    if (!v.witness && r.first_viol != SIZE_MAX) {
      v.witness = SparsityWitness{items[i].level, items[r.first_viol].level, items[i].value, items[r.first_viol].value};
    }
  }
  v.pairs = m * (m > 0 ? m - 1 : 0) / 2;
  v.satisfied = v.violations == 0;
  return v;
}

DefaultSparsity default_sparsity_parameters(int d) {
  if (d < 2) throw PreconditionError("degree must be at least 2");
  DefaultSparsity s;
  s.a0 = std::log((3.0 * d - 1.0) / 2.0) / std::log((d + 1.0) / 2.0);
  s.beta0 = 1.0 / (120.0 * (s.a0 + 1.0) * s.a0 * s.a0);
  s.gamma0 = 1.0 / 3.0;
  return s;
}

int marking_depth(double delta1, double beta, double a, double lambda, double eta) {
  if (!(delta1 > 0.0)) return INT_MAX;
  const double n = -(1.0 / (eta * beta * a)) * std::log(delta1) / std::log(lambda);
  if (n >= static_cast<double>(INT_MAX)) return INT_MAX;
  return static_cast<int>(std::floor(n + 1e-9));
}

int marking_kappa0(double beta, double c_beta, double K, double omega, double eta) {
  const double lo = std::log(omega);
  for (int k = 1; k < 1000000; ++k) {
    const double lhs = std::log(static_cast<double>(k)) + beta * k * lo - std::log(c_beta) + std::log(K);
    if (lhs < eta * beta * k * lo) return k;
  }
  return INT_MAX;
}

MarkingTable recover_marking(const LengthSpectrum& spec_f, const LengthSpectrum& spec_g, double delta1,
                             const SparsityParams& params, double eta) {
  check_params(params);
  if (!(eta > 1.0)) throw PreconditionError("eta must exceed 1");
  if (delta1 < 0.0) throw PreconditionError("delta1 must be non-negative");
  if (spec_f.degree != spec_g.degree) throw PreconditionError("spectra of different degrees");
  MarkingTable t;
  const double lambda = spec_g.lambda;
  const double a = std::max(1.0, spec_g.a());
  const double lambda0 = std::min(spec_f.lambda, spec_g.lambda - delta1);
  if (!(lambda0 > 1.0)) throw PreconditionError("maps too far apart: expansion bound below 1");
  t.K = (spec_g.lip_derivative / (lambda0 - 1.0) + 1.0) / lambda0;
  t.N = marking_depth(delta1, params.beta, a, lambda, eta);
  t.kappa0 = marking_kappa0(params.beta, params.c_beta, t.K, spec_g.omega, eta);
  const int top = std::min({t.N, spec_f.max_level(), spec_g.max_level()});
  if (t.kappa0 > top) return t;
  t.recovered_up_to = top;
  const int d = spec_g.degree;
  for (int k = t.kappa0; k <= top; ++k) {
    const auto& lf = spec_f.level(k);
    const auto& lg = spec_g.level(k);
    const double thr = params.c_gamma * std::pow(lambda, -params.gamma * k);
    const double window = t.K * k * delta1;
    // clusters: maximal chains with consecutive gaps <= thr
    std::vector<std::size_t> start{0};
    for (std::size_t i = 1; i < lg.size(); ++i) {
      if (lg[i].value - lg[i - 1].value > thr) start.push_back(i);
    }
    start.push_back(lg.size());
    std::vector<std::size_t> cluster_of(lg.size());
    std::vector<std::size_t> by_code(static_cast<std::size_t>(std::pow(d, k)), SIZE_MAX);
    for (std::size_t c = 0; c + 1 < start.size(); ++c) {
      for (std::size_t i = start[c]; i < start[c + 1]; ++i) {
        cluster_of[i] = c;
        by_code[code_value(lg[i].code, d)] = i;
      }
    }
    for (const auto& e : lf) {
      const double lo = e.value - window, hi = e.value + window;
      std::size_t found = SIZE_MAX;
      int hits = 0;
      for (std::size_t c = 0; c + 1 < start.size(); ++c) {
        const double cl = lg[start[c]].value, ch = lg[start[c + 1] - 1].value;
        if (ch < lo || cl > hi) continue;
        ++hits;
        found = c;
      }
      if (hits > 1) {
        throw AmbiguousMarking("two length-spectrum clusters inside the proximity window at period " +
                               std::to_string(k) + " (code " + code_string(e.code) + ")");
      }
      if (hits == 0) {
        throw NumericalError("no length-spectrum entry within the proximity window at period " + std::to_string(k));
      }
      std::size_t best = start[found];
      for (std::size_t i = start[found]; i < start[found + 1]; ++i) {
        if (std::abs(lg[i].value - e.value) < std::abs(lg[best].value - e.value)) best = i;
      }
      MarkingRow row;
      row.period = k;
      row.code = e.code;
      row.lambda_f = e.value;
      row.lambda_g = lg[best].value;
      row.discrepancy = std::abs(row.lambda_f - row.lambda_g);
      row.threshold = thr;
      const std::size_t same = by_code[code_value(e.code, d)];
      row.code_consistent = same != SIZE_MAX && cluster_of[same] == found;
      t.max_discrepancy = std::max(t.max_discrepancy, row.discrepancy);
      t.all_code_consistent = t.all_code_consistent && row.code_consistent;
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

}  // namespace srlab
