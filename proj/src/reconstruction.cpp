#include "srlab/reconstruction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "srlab/errors.hpp"
#include "srlab/normalization.hpp"
#include "srlab/norms.hpp"
#include "srlab/parallel.hpp"
#include "srlab/periodic_orbits.hpp"
#include "srlab/whitney.hpp"

namespace srlab {

double ConjugacySamples::operator()(double x) const {
  const double fl = std::floor(x);
  x -= fl;
  const std::size_t n = f_points.size();
  const auto it = std::upper_bound(f_points.begin(), f_points.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - f_points.begin());  // f_points[0] = 0 <= x
  const double x0 = f_points[i - 1], y0 = g_points[i - 1];
  const double x1 = i < n ? f_points[i] : 1.0 + f_points[0];
  const double y1 = i < n ? g_points[i] : 1.0 + g_points[0];
  return fl + y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

ConjugacySamples conjugacy_oracle(const CircleMap& f, const CircleMap& g, int depth) {
  if (f.degree() != g.degree()) throw PreconditionError("conjugacy_oracle: degrees differ");
  if (depth < 1) throw PreconditionError("conjugacy_oracle: depth must be positive");
  const int d = f.degree();
  const double total = std::pow(static_cast<double>(d), depth);
  if (total > static_cast<double>(orbit_budget())) throw BudgetExceeded("conjugacy_oracle: d^depth exceeds the orbit budget");
  require_budget(static_cast<std::size_t>(total), "conjugacy_oracle");

  // levels[D][b d^{D-1} + j] = branch_b^{-1}(levels[D-1][j]).
  std::vector<std::vector<double>> lf{{0.0}}, lg{{0.0}};
  for (int D = 1; D <= depth; ++D) {
    const std::size_t m = lf.back().size();
    std::vector<double> nf(m * static_cast<std::size_t>(d)), ng(nf.size());
    const auto& pf = lf.back();
    const auto& pg = lg.back();
    parallel_for(nf.size(), [&](std::size_t idx) {
      const int b = static_cast<int>(idx / m);
      const std::size_t j = idx % m;
      nf[idx] = f.inverse_branch(pf[j], b);
      ng[idx] = g.inverse_branch(pg[j], b);
    });
    lf.push_back(std::move(nf));
    lg.push_back(std::move(ng));
  }

  auto sorted_pairs = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<std::size_t> idx(a.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });
    std::vector<double> sa(a.size()), sb(b.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sa[i] = a[idx[i]];
      sb[i] = b[idx[i]];
    }
    return std::pair{sa, sb};
  };

  ConjugacySamples out;
  out.depth = depth;
  for (int D = 1; D <= depth; ++D) {
    auto [sf, sg] = sorted_pairs(lf[static_cast<std::size_t>(D)], lg[static_cast<std::size_t>(D)]);
    for (std::size_t i = 1; i < sg.size(); ++i) {
      if (!(sg[i] > sg[i - 1])) throw NumericalError("conjugacy_oracle: preimage orders disagree");
    }
    if (D == depth) {
      out.f_points = std::move(sf);
      out.g_points = std::move(sg);
    }
  }
  // Smallest log-gap ratio over adjacent sample pairs at the finest level.
  const std::size_t M = out.f_points.size();
  if (M >= 2) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < M; ++i) {
      const double ef = (i + 1 < M ? out.f_points[i + 1] : out.f_points[0] + 1.0) - out.f_points[i];
      const double eg = (i + 1 < M ? out.g_points[i + 1] : out.g_points[0] + 1.0) - out.g_points[i];
      alpha = std::min(alpha, std::log(eg) / std::log(ef));
    }
    out.holder_exponent = alpha;
  }
  for (std::size_t i = 0; i < out.f_points.size(); ++i) {
    out.max_displacement = std::max(out.max_displacement, circle_distance(out.f_points[i], out.g_points[i]));
  }
  return out;
}

namespace {

// Pairs (P_n^from, P_n^to) matched by code, sorted by the source point.
std::pair<std::vector<double>, std::vector<double>> matched_points(const CircleMap& from, const std::vector<double>& to_by_code,
                                                                   int n) {
  const std::vector<double> from_by_code = periodic_points_by_code(from, n);
  const std::size_t m = from_by_code.size() - 1;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return from_by_code[i] < from_by_code[j]; });
  std::vector<double> a(m), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = from_by_code[idx[i]];
    b[i] = to_by_code[idx[i]];
    if (i > 0 && !(b[i] > b[i - 1])) throw AmbiguousMarking("code correspondence is not order preserving");
  }
  return {a, b};
}

double sup_distance(const CircleMap& f, const CircleMap& g, std::size_t grid) {
  std::vector<double> v(grid);
  parallel_for(grid, [&](std::size_t i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    v[i] = std::abs(f(x) - g(x));
  });
  return *std::max_element(v.begin(), v.end());
}

NormReport diffeo_norms(const DiffeoPtr& h, int s, std::size_t grid) {
  return measure_norms([&h](double x, int order) { return h->jet(x, order) - Jet::variable(x, order); }, s, grid);
}

struct Runner {
  MapPtr f, g;
  ReconstructionConfig config;
  ValidityReport vg;
  double beta = 0.0;
  double fg0_c1 = 0.0;
  ConjugacySamples oracle;
  std::map<int, std::vector<double>> g_levels;

  const std::vector<double>& g_points(int n) {
    auto it = g_levels.find(n);
    if (it == g_levels.end()) it = g_levels.emplace(n, periodic_points_by_code(*g, n)).first;
    return it->second;
  }

  void measure(const ReconstructionState& s, StepDiagnostics& diag) {
    const NormReport hn = diffeo_norms(s.h, 2, config.norm_grid);
    diag.k = s.k;
    diag.h_c0 = hn.sup[0];
    diag.h_c1 = hn.cs(1);
    diag.h_c2 = hn.cs(2);

    const auto& fk = *s.f_k;
    const auto& gm = *g;
    const NormReport dn = measure_norms(
        [&](double x, int order) { return fk.jet(x, order) - gm.jet(x, order); }, 2, config.norm_grid);
    diag.fg_c0 = dn.sup[0];
    diag.fg_c1 = dn.cs(1);
    diag.top_norm = dn.cs(2);
    std::vector<double> vals(config.norm_grid);
    parallel_for(vals.size(), [&](std::size_t i) {
      const double x = static_cast<double>(i) / static_cast<double>(vals.size());
      vals[i] = fk(x) - gm(x);
    });
    diag.fg_lip = std::max(dn.sup[1], grid_lipschitz(vals));

    const auto& pg = g_points(s.k);
    std::vector<double> sorted(pg.begin(), pg.end() - 1);
    std::sort(sorted.begin(), sorted.end());
    std::tie(diag.o_k, diag.O_k) = cyclic_gaps(sorted);
    double res = 0.0;
    for (double p : sorted) res = std::max(res, std::abs(fk(p) - gm(p)));
    diag.interpolation_residual = res;
    const double rolle_scale = diag.fg_lip * diag.O_k;
    diag.rolle_ratio = rolle_scale > 0.0 ? diag.fg_c0 / rolle_scale : 0.0;
    diag.rolle_ok = diag.fg_c0 <= rolle_scale + res + 1e-15;

    double err = 0.0;
    for (std::size_t i = 0; i < oracle.f_points.size(); ++i) {
      err = std::max(err, circle_distance((*s.h)(oracle.f_points[i]), oracle.g_points[i]));
    }
    diag.oracle_error = err;

    const double denom = diag.h_c2 + fg0_c1;
    diag.T_empirical = denom > 0.0 ? diag.fg_c1 / denom : 0.0;

    const double k = static_cast<double>(s.k);
    diag.choice_lhs = 5.0 * (vg.a + 1.0) * (k + 1.0);
    diag.choice_rhs = config.tau * config.r * k / (2.0 * vg.a * beta);
    diag.marking_depth = static_cast<int>(std::floor(diag.choice_rhs));
  }
};

}  // namespace

DiffeoPtr initial_adjustment(const CircleMap& f, const CircleMap& g, int kappa0, int r) {
  if (kappa0 < 1) throw PreconditionError("kappa0 must be positive");
  const ValidityReport vf = validate_expanding(f);
  const std::vector<double> pg = periodic_points_by_code(g, kappa0);
  std::vector<double> sorted(pg.begin(), pg.end() - 1);
  std::sort(sorted.begin(), sorted.end());
  const double o = cyclic_gaps(sorted).first;
  // Periodic points move by at most |f - g|_{C^0} / (Lambda - 1); beyond
  // half the smallest gap the order-matching is not forced.
  const double shift = sup_distance(f, g, 1u << 12) / (vf.lambda - 1.0);
  if (!(shift < 0.5 * o)) throw AmbiguousMarking("initial_adjustment: |f - g|_{C^0} too large for P_kappa0 matching");
  auto [a, b] = matched_points(f, pg, kappa0);
  return extend_correspondence(a, b, r).h;
}

ReconstructionState scheme_step(const MapPtr& f, const MapPtr& g, const ReconstructionState& state,
                                const ReconstructionConfig& config, StepDiagnostics& diag) {
  const int n = state.k + 1;
  const InvariantDensity theta = invariant_density(*state.f_k, config.density_grid);
  const DiffeoPtr psi = normalizing_conjugacy(theta);
  const auto f_tilde = std::make_shared<ConjugatedMap>(state.f_k, psi);

  if (config.mode == MarkingMode::Spectrum) {
    const SparsityParams params = config.sparsity.value_or([&] {
      const DefaultSparsity ds = default_sparsity_parameters(g->degree());
      return SparsityParams{ds.beta0, ds.gamma0, 1.0, 1.0};
    }());
    const NormReport dn = measure_norms(
        [&](double x, int order) { return f_tilde->jet(x, order) - g->jet(x, order); }, 1, config.norm_grid);
    const LengthSpectrum sf = length_spectrum(*f_tilde, n);
    const LengthSpectrum sg = length_spectrum(*g, n);
    const MarkingTable table = recover_marking(sf, sg, dn.cs(1), params, config.eta);
    diag.oracle_assisted = !(table.recovered_up_to >= n && table.all_code_consistent && diag.choice_lhs <= diag.choice_rhs);
  } else {
    diag.oracle_assisted = true;
  }

  auto [a, b] = matched_points(*f_tilde, periodic_points_by_code(*g, n), n);
  const WhitneyExtension phi = extend_correspondence(a, b, config.r, config.norm_grid);
  diag.whitney_fallback = phi.monotone_fallback;
  const NormReport pn = diffeo_norms(psi, 2, config.norm_grid);
  diag.psi_c0 = pn.sup[0];
  diag.psi_c2 = pn.cs(2);
  diag.phi_c0 = phi.norms.sup[0];
  diag.phi_c2 = phi.norms.cs(2);

  ReconstructionState next;
  next.k = n;
  next.h = compose(phi.h, compose(psi, state.h));
  next.f_k = std::make_shared<ConjugatedMap>(f, next.h);
  return next;
}

ReconstructionResult run_scheme(const MapPtr& f, const MapPtr& g, const ReconstructionConfig& config) {
  if (config.r < 1) throw PreconditionError("run_scheme: r must be at least 1");
  if (!(config.tau > 0.0 && config.tau < 1.0)) throw PreconditionError("run_scheme: tau must lie in (0, 1)");
  if (config.max_k < config.kappa0) throw PreconditionError("run_scheme: max_k below kappa0");
  const ValidityReport vf = validate_expanding(*f);
  Runner run;
  run.f = f;
  run.g = g;
  run.config = config;
  run.vg = validate_expanding(*g);
  if (!vf.expanding || !run.vg.expanding) throw PreconditionError("run_scheme: maps must be expanding");
  if (!run.vg.near_linear) throw PreconditionError("run_scheme: g is not near-linear");
  run.beta = config.sparsity ? config.sparsity->beta : default_sparsity_parameters(g->degree()).beta0;
  run.fg0_c1 = measure_norms([&](double x, int order) { return f->jet(x, order) - g->jet(x, order); }, 1,
                             config.norm_grid)
                   .cs(1);
  run.oracle = conjugacy_oracle(*f, *g, config.oracle_depth);

  ReconstructionResult out;
  auto t0 = std::chrono::steady_clock::now();
  ReconstructionState state;
  state.k = config.kappa0;
  state.h = initial_adjustment(*f, *g, config.kappa0, config.r);
  state.f_k = std::make_shared<ConjugatedMap>(f, state.h);
  {
    StepDiagnostics diag;
    const NormReport pn = diffeo_norms(state.h, 2, config.norm_grid);
    diag.phi_c0 = pn.sup[0];
    diag.phi_c2 = pn.cs(2);
    run.measure(state, diag);
    diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.series.push_back(diag);
  }

  auto growing = [&out](auto field, double floor) {
    const auto& s = out.series;
    if (s.size() < 5) return false;  // the first entry carries no step
    for (std::size_t i = s.size() - 3; i < s.size(); ++i) {
      if (!(s[i].*field >= s[i - 1].*field)) return false;
    }
    return s.back().*field > floor;
  };

  while (state.k < config.max_k) {
    t0 = std::chrono::steady_clock::now();
    StepDiagnostics diag;
    const DiffeoPtr previous = state.h;
    diag.k = state.k + 1;
    {
      const double k = static_cast<double>(diag.k);
      diag.choice_lhs = 5.0 * (run.vg.a + 1.0) * (k + 1.0);
      diag.choice_rhs = config.tau * config.r * k / (2.0 * run.vg.a * run.beta);
    }
    state = scheme_step(f, g, state, config, diag);
    const bool assisted = diag.oracle_assisted;
    run.measure(state, diag);
    diag.oracle_assisted = assisted;
    const NormReport step = measure_norms(
        [&](double x, int order) { return state.h->jet(x, order) - previous->jet(x, order); }, 2, config.norm_grid);
    const double adj = diag.phi_c2 + diag.psi_c2;
    diag.step_c2 = step.cs(2);
    diag.Q_empirical = adj > 0.0 ? diag.step_c2 / adj : 0.0;
    diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.series.push_back(diag);
    out.oracle_assisted = out.oracle_assisted || assisted;

    if (growing(&StepDiagnostics::oracle_error, config.error_floor) ||
        growing(&StepDiagnostics::step_c2, config.step_floor)) {
      out.diverged = true;
      out.failure = "error or step size non-decreasing for 3 consecutive steps at k = " + std::to_string(state.k);
      break;
    }
  }

  out.state = state;
  out.final_oracle_error = out.series.back().oracle_error;
  const std::size_t m = std::min<std::size_t>(5, out.series.size());
  if (m >= 2) {
    std::vector<double> ks, le;
    for (std::size_t i = out.series.size() - m; i < out.series.size(); ++i) {
      ks.push_back(out.series[i].k);
      le.push_back(std::log(std::max(out.series[i].oracle_error, 1e-300)));
    }
    out.decay_factor = std::exp(fit_slope(ks, le));
  }
  if (out.diverged && config.throw_on_divergence) throw DivergenceError(out.failure);
  return out;
}

}  // namespace srlab
