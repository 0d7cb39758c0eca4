#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srlab/counterexample.hpp"
#include "srlab/errors.hpp"
#include "srlab/io.hpp"
#include "srlab/livsic.hpp"
#include "srlab/messengers.hpp"
#include "srlab/normalization.hpp"
#include "srlab/norms.hpp"
#include "srlab/parallel.hpp"
#include "srlab/reconstruction.hpp"
#include "srlab/spectrum.hpp"
#include "srlab/whitney.hpp"

namespace srlab::cli {

using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write " + path);
  f << text;
}

void emit_json(const json& j, const std::string& path, std::ostream& out) { emit(j.dump(2) + "\n", path, out); }

json validity_json(const ValidityReport& v) {
  return {{"degree", v.degree},
          {"lambda", v.lambda},
          {"omega", v.omega},
          {"a", v.a},
          {"c0", v.c0},
          {"c1", v.c1},
          {"c2", v.c2},
          {"c2_certified", v.c2_certified},
          {"lip_derivative", v.lip_derivative},
          {"lambda_certified", v.lambda_certified},
          {"analytic_certificate", v.analytic_certificate},
          {"expanding", v.expanding},
          {"near_linear", v.near_linear}};
}

SparsityParams sparsity_params(int d, double beta, double gamma, double cb, double cg) {
  const DefaultSparsity ds = default_sparsity_parameters(d);
  return {beta > 0.0 ? beta : ds.beta0, gamma > 0.0 ? gamma : ds.gamma0, cb, cg};
}

double c1_distance(const CircleMap& f, const CircleMap& g) {
  return measure_norms([&](double x, int k) { return f.jet(x, k) - g.jet(x, k); }, 1).cs(1);
}

struct Options {
  std::string map, f, g, out, csv;
  int period = 3, max_level = 8, level = 4, r = 2, kappa0 = 4, max_k = 12, p = 1, q = 1, t = 1, oracle_depth = 14;
  int max_period = 8, mismatch_level = 3;
  std::size_t grid = 4096;
  double tol = 1e-12, beta = 0.0, gamma = 0.0, cbeta = 1.0, cgamma = 1.0, delta1 = -1.0, eta = 2.0;
  double epsilon = 0.1, tau = 0.5, constant = 1.0;
  bool primitive = false, coboundary = false, strict = false;
  std::string minus, plus, hybrid, mode = "oracle";
  std::vector<double> sine, cosine;
  std::vector<int> pipeline;
  unsigned threads = 0;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"srlab: numerical laboratory for length-spectral rigidity of expanding circle maps", "srlab"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads (default: hardware concurrency)");

  auto* validate = app.add_subcommand("validate", "expansion and near-linearity report");
  validate->add_option("--map", o.map)->required();
  validate->add_option("--grid", o.grid)->default_val(1u << 14);
  validate->add_option("--out", o.out);

  auto* orbits = app.add_subcommand("orbits", "periodic orbits as CSV");
  orbits->add_option("--map", o.map)->required();
  orbits->add_option("--period", o.period)->required();
  orbits->add_flag("--primitive", o.primitive);
  orbits->add_option("--out", o.out);

  auto* spectrum = app.add_subcommand("spectrum", "length spectrum as CSV");
  spectrum->add_option("--map", o.map)->required();
  spectrum->add_option("--max-level", o.max_level);
  spectrum->add_option("--out", o.out);

  auto* sparsity = app.add_subcommand("sparsity", "(beta, gamma)-sparsity verdict");
  sparsity->add_option("--map", o.map)->required();
  sparsity->add_option("--max-level", o.max_level);
  sparsity->add_option("--beta", o.beta);
  sparsity->add_option("--gamma", o.gamma);
  sparsity->add_option("--cbeta", o.cbeta);
  sparsity->add_option("--cgamma", o.cgamma);
  sparsity->add_option("--out", o.out);

  auto* marking = app.add_subcommand("marking", "marking recovery from unmarked spectra");
  marking->add_option("--f", o.f)->required();
  marking->add_option("--g", o.g)->required();
  marking->add_option("--max-level", o.max_level);
  marking->add_option("--delta1", o.delta1, "C^1 distance (default: measured)");
  marking->add_option("--beta", o.beta);
  marking->add_option("--gamma", o.gamma);
  marking->add_option("--cbeta", o.cbeta);
  marking->add_option("--cgamma", o.cgamma);
  marking->add_option("--eta", o.eta);
  marking->add_option("--out", o.out);

  auto* msg = app.add_subcommand("messenger", "messenger or hybrid messenger report");
  msg->add_option("--map", o.map)->required();
  msg->add_option("--minus", o.minus);
  msg->add_option("--plus", o.plus);
  msg->add_option("--hybrid", o.hybrid, "code sigma_i for a hybrid messenger");
  msg->add_option("--p", o.p);
  msg->add_option("--q", o.q);
  msg->add_option("--t", o.t);
  msg->add_option("--constant", o.constant);
  msg->add_option("--out", o.out);

  auto* livsic = app.add_subcommand("livsic", "periodic obstructions and barrier reconstruction");
  livsic->add_option("--map", o.map)->required();
  livsic->add_option("--sine", o.sine)->expected(0, -1);
  livsic->add_option("--cosine", o.cosine)->expected(0, -1);
  livsic->add_flag("--coboundary", o.coboundary, "use D = v o g - v with v from the coefficients");
  livsic->add_option("--max-period", o.max_period);
  livsic->add_option("--pipeline", o.pipeline, "scales n for the periodic-data pipeline")->expected(0, -1);
  livsic->add_option("--grid", o.grid);
  livsic->add_option("--out", o.out);

  auto* normalize = app.add_subcommand("normalize", "invariant density as CSV");
  normalize->add_option("--map", o.map)->required();
  normalize->add_option("--grid", o.grid);
  normalize->add_option("--tol", o.tol);
  normalize->add_option("--out", o.out);

  auto* whitney = app.add_subcommand("whitney", "extension sending P_k^f to P_k^g");
  whitney->add_option("--f", o.f)->required();
  whitney->add_option("--g", o.g)->required();
  whitney->add_option("--level", o.level);
  whitney->add_option("--r", o.r);
  whitney->add_option("--csv", o.csv, "dump of (x, h(x), h'(x))");
  whitney->add_option("--out", o.out);

  auto* recon = app.add_subcommand("reconstruct", "inductive reconstruction scheme");
  recon->add_option("--f", o.f)->required();
  recon->add_option("--g", o.g)->required();
  recon->add_option("--kappa0", o.kappa0);
  recon->add_option("--max-k", o.max_k);
  recon->add_option("--mode", o.mode)->check(CLI::IsMember({"oracle", "spectrum"}));
  recon->add_option("--r", o.r);
  recon->add_option("--tau", o.tau);
  recon->add_option("--eta", o.eta);
  recon->add_option("--oracle-depth", o.oracle_depth);
  recon->add_flag("--strict", o.strict, "exit 2 on divergence");
  recon->add_option("--csv", o.csv, "per-step norms");
  recon->add_option("--out", o.out);

  auto* ce = app.add_subcommand("counterexample", "iso-spectral pair that is not smoothly conjugate");
  ce->add_option("--epsilon", o.epsilon);
  ce->add_option("--max-level", o.max_level)->default_val(10);
  ce->add_option("--mismatch-level", o.mismatch_level);
  ce->add_option("--tol", o.tol)->default_val(1e-9);
  ce->add_option("--out", o.out);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 64;
  }

  try {
    if (o.threads > 0) set_worker_count(o.threads);
    if (validate->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      emit_json(validity_json(validate_expanding(*m, o.grid)), o.out, out);
    } else if (orbits->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      std::ostringstream ss;
      write_orbits_csv(ss, enumerate_periodic(*m, o.period, o.primitive), m->degree());
      emit(ss.str(), o.out, out);
    } else if (spectrum->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      std::ostringstream ss;
      write_spectrum_csv(ss, length_spectrum(*m, o.max_level));
      emit(ss.str(), o.out, out);
    } else if (sparsity->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      const SparsityParams sp = sparsity_params(m->degree(), o.beta, o.gamma, o.cbeta, o.cgamma);
      const SparsityVerdict v = sparsity_classify(length_spectrum(*m, o.max_level), sp);
      json j{{"beta", sp.beta}, {"gamma", sp.gamma}, {"c_beta", sp.c_beta}, {"c_gamma", sp.c_gamma},
             {"satisfied", v.satisfied}, {"pairs", v.pairs}, {"far", v.far}, {"close", v.close},
             {"violations", v.violations}, {"c_beta_max", v.c_beta_max}};
      if (v.witness) {
        j["witness"] = {{"level1", v.witness->level1}, {"level2", v.witness->level2},
                        {"value1", v.witness->value1}, {"value2", v.witness->value2}};
      }
      emit_json(j, o.out, out);
    } else if (marking->parsed()) {
      const MapPtr f = build_map(read_map_spec(o.f));
      const MapPtr g = build_map(read_map_spec(o.g));
      const double delta1 = o.delta1 >= 0.0 ? o.delta1 : c1_distance(*f, *g);
      const SparsityParams sp = sparsity_params(g->degree(), o.beta, o.gamma, o.cbeta, o.cgamma);
      const MarkingTable t =
          recover_marking(length_spectrum(*f, o.max_level), length_spectrum(*g, o.max_level), delta1, sp, o.eta);
      json rows = json::array();
      for (const auto& r : t.rows) {
        rows.push_back({{"period", r.period}, {"code", code_string(r.code)}, {"lambda_f", r.lambda_f},
                        {"lambda_g", r.lambda_g}, {"discrepancy", r.discrepancy}, {"threshold", r.threshold},
                        {"code_consistent", r.code_consistent}});
      }
      emit_json({{"delta1", delta1}, {"kappa0", t.kappa0}, {"N", t.N}, {"recovered_up_to", t.recovered_up_to},
                 {"K", t.K}, {"max_discrepancy", t.max_discrepancy}, {"all_code_consistent", t.all_code_consistent},
                 {"rows", rows}},
                o.out, out);
    } else if (msg->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      if (!o.hybrid.empty()) {
        const HybridMessengerSpec h = hybrid_messenger(*m, parse_code(o.hybrid), o.t, o.p, o.constant);
        emit_json({{"code_i", code_string(h.code_i)}, {"code_j", code_string(h.code_j)}, {"code", code_string(h.code)},
                   {"n", h.n}, {"t", h.t}, {"p", h.p},
                   {"landmarks", {{"z_minus", h.z_minus}, {"z0", h.z0}, {"z_plus", h.z_plus}}},
                   {"deviation", h.deviation}, {"scale", h.scale}, {"empirical_constant", h.empirical_constant},
                   {"constant", h.constant}, {"collapsed", h.collapsed}, {"within_bound", h.within_bound}},
                  o.out, out);
      } else {
        if (o.minus.empty() || o.plus.empty()) throw PreconditionError("messenger: --minus and --plus are required");
        const MessengerSpec s = messenger(*m, parse_code(o.minus), parse_code(o.plus), o.p, o.q);
        emit_json({{"code_minus", code_string(s.code_minus)}, {"code_plus", code_string(s.code_plus)},
                   {"code", code_string(s.code)}, {"n", s.n}, {"p", s.p}, {"q", s.q},
                   {"landmarks", {{"x_minus", s.x_minus}, {"x_plus", s.x_plus}, {"y_minus", s.y_minus},
                                  {"y_plus", s.y_plus}}},
                   {"distances", {{"ell", s.ell}, {"t_minus", s.t_minus}, {"t_plus", s.t_plus}}},
                   {"bounds", {{"lower_minus", s.lower_minus}, {"upper_minus", s.upper_minus},
                               {"lower_plus", s.lower_plus}, {"upper_plus", s.upper_plus}, {"c_g", s.c_g},
                               {"o_n", s.o_n}, {"O_n", s.O_n}, {"empirical_constant", s.empirical_constant}}},
                   {"degenerate", s.degenerate}, {"bounds_ok", s.bounds_ok}},
                  o.out, out);
      }
    } else if (livsic->parsed()) {
      const MapPtr g = build_map(read_map_spec(o.map));
      const TrigPolynomial v(o.sine, o.cosine);
      RealFunction D;
      if (o.coboundary) {
        D = [&](double x) { return v((*g)(x)) - v(x); };
      } else {
        D = [&](double x) { return v(x); };
      }
      const SampledFunction Ds = SampledFunction::sample(D, o.grid);
      json per = json::array();
      for (int m = 1; m <= o.max_period; ++m) per.push_back({{"period", m}, {"obstruction", periodic_obstruction(*g, D, m)}});
      const ValidityReport vr = validate_expanding(*g);
      const int S = barrier_truncation(*g, Ds.lipschitz(), 1e-12);
      const BarrierResult b = barrier_function(*g, Ds, S);
      json j{{"obstructions", per},
             {"barrier", {{"S", b.S}, {"tail_bound", b.tail_bound}, {"residual", coboundary_residual(*g, Ds, b.u)}}}};
      if (!o.pipeline.empty()) {
        json runs = json::array();
        std::vector<double> ns, res;
        for (int n : o.pipeline) {
          const LivsicPipelineResult r = livsic_pipeline(*g, Ds, n);
          runs.push_back({{"n", r.n}, {"O_n", r.O_n}, {"obstruction_4n", r.obstruction_4n},
                          {"obstruction_4n1", r.obstruction_4n1}, {"obstruction_constant", r.obstruction_constant},
                          {"residual", r.residual}, {"residual_constant", r.residual_constant}});
          ns.push_back(n);
          res.push_back(r.residual);
        }
        j["pipeline"] = runs;
        if (ns.size() >= 2) {
          j["fitted_exponent"] = fitted_decay_exponent(ns, res);
          j["log_lambda"] = std::log(vr.lambda);
        }
      }
      emit_json(j, o.out, out);
    } else if (normalize->parsed()) {
      const MapPtr m = build_map(read_map_spec(o.map));
      const InvariantDensity d = invariant_density(*m, o.grid, o.tol);
      std::ostringstream ss;
      write_density_csv(ss, d);
      emit(ss.str(), o.out, out);
      if (!o.out.empty()) {
        const NormalizedMap nm = normalize_map(m, o.grid, o.tol);
        out << json{{"iterations", d.iterations}, {"residual", d.residual},
                    {"identity_residual", lebesgue_identity_residual(*nm.map)}}
                   .dump(2)
            << '\n';
      }
    } else if (whitney->parsed()) {
      const MapPtr f = build_map(read_map_spec(o.f));
      const MapPtr g = build_map(read_map_spec(o.g));
      auto sorted = [&](const CircleMap& m) {
        std::vector<double> p = periodic_points_by_code(m, o.level);
        p.pop_back();
        return p;
      };
      std::vector<double> pf = sorted(*f), pg = sorted(*g);
      std::vector<std::size_t> idx(pf.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pf[a] < pf[b]; });
      std::vector<double> from, to;
      for (std::size_t i : idx) {
        from.push_back(pf[i]);
        to.push_back(pg[i]);
      }
      const WhitneyExtension w = extend_correspondence(from, to, o.r);
      json dd = json::array();
      for (double v : w.dd.D) dd.push_back(v);
      emit_json({{"level", o.level}, {"degree", w.degree}, {"monotone_fallback", w.monotone_fallback},
                 {"interpolation_residual", w.interpolation_residual}, {"min_derivative", w.min_derivative},
                 {"gap_discrepancy", w.gap_discrepancy}, {"min_gap", w.min_gap}, {"norm_sup", w.norms.sup},
                 {"norm_lipschitz", w.norms.lipschitz}, {"divided_differences", dd}},
                o.out, out);
      if (!o.csv.empty()) {
        std::ostringstream ss;
        ss << "x,h,dh\n" << std::setprecision(17);
        constexpr int kSamples = 1024;
        for (int i = 0; i < kSamples; ++i) {
          const double x = static_cast<double>(i) / kSamples;
          const Jet j = w.h->jet(x, 1);
          ss << x << ',' << j.value() << ',' << j.coeff(1) << '\n';
        }
        emit(ss.str(), o.csv, out);
      }
    } else if (recon->parsed()) {
      const MapPtr f = build_map(read_map_spec(o.f));
      const MapPtr g = build_map(read_map_spec(o.g));
      ReconstructionConfig cfg;
      cfg.kappa0 = o.kappa0;
      cfg.max_k = o.max_k;
      cfg.r = o.r;
      cfg.tau = o.tau;
      cfg.eta = o.eta;
      cfg.oracle_depth = o.oracle_depth;
      cfg.mode = o.mode == "spectrum" ? MarkingMode::Spectrum : MarkingMode::Oracle;
      cfg.throw_on_divergence = o.strict;
      const ReconstructionResult res = run_scheme(f, g, cfg);
      json series = json::array();
      std::ostringstream csv;
      csv << "k,h_c0,h_c1,h_c2,fg_c0,fg_c1,fg_lip,O_k,rolle_ratio,oracle_error,phi_c0,psi_c0,step_c2\n"
          << std::setprecision(17);
      for (const auto& d : res.series) {
        series.push_back({{"k", d.k}, {"h_c0", d.h_c0}, {"h_c1", d.h_c1}, {"h_c2", d.h_c2}, {"fg_c0", d.fg_c0},
                          {"fg_c1", d.fg_c1}, {"fg_lip", d.fg_lip}, {"top_norm", d.top_norm}, {"o_k", d.o_k},
                          {"O_k", d.O_k}, {"rolle_ratio", d.rolle_ratio}, {"rolle_ok", d.rolle_ok},
                          {"interpolation_residual", d.interpolation_residual}, {"oracle_error", d.oracle_error},
                          {"phi_c0", d.phi_c0}, {"phi_c2", d.phi_c2}, {"psi_c0", d.psi_c0}, {"psi_c2", d.psi_c2},
                          {"T", d.T_empirical}, {"Q", d.Q_empirical}, {"step_c2", d.step_c2},
                          {"marking_depth", d.marking_depth}, {"oracle_assisted", d.oracle_assisted},
                          {"whitney_fallback", d.whitney_fallback}, {"choice_lhs", d.choice_lhs},
                          {"choice_rhs", d.choice_rhs}, {"seconds", d.seconds}});
        csv << d.k << ',' << d.h_c0 << ',' << d.h_c1 << ',' << d.h_c2 << ',' << d.fg_c0 << ',' << d.fg_c1 << ','
            << d.fg_lip << ',' << d.O_k << ',' << d.rolle_ratio << ',' << d.oracle_error << ',' << d.phi_c0 << ','
            << d.psi_c0 << ',' << d.step_c2 << '\n';
      }
      emit_json({{"series", series}, {"diverged", res.diverged}, {"failure", res.failure},
                 {"oracle_assisted", res.oracle_assisted}, {"final_oracle_error", res.final_oracle_error},
                 {"decay_factor", res.decay_factor}},
                o.out, out);
      if (!o.csv.empty()) emit(csv.str(), o.csv, out);
    } else if (ce->parsed()) {
      const CounterexamplePair pr = build_pair(o.epsilon);
      const auto f = trig_map(pr.f);
      const auto g = trig_map(pr.g);
      const IsospectralReport iso = verify_isospectral(*f, *g, o.max_level, o.tol);
      const auto mm = find_multiplier_mismatch(*f, *g, o.mismatch_level, 1e-10);
      const auto opp = find_multiplier_mismatch(*f, *g, o.mismatch_level, 1e-10, true);
      json table = json::array();
      for (const auto& m : mm) {
        table.push_back({{"code", code_string(m.code)}, {"period", m.period}, {"lambda_f", m.lambda_f},
                         {"lambda_g", m.lambda_g}, {"discrepancy", m.discrepancy}});
      }
      emit_json({{"epsilon", o.epsilon},
                 {"degenerate", pr.degenerate},
                 {"f", json::parse(map_spec_to_json(pr.f))},
                 {"g", json::parse(map_spec_to_json(pr.g))},
                 {"isospectral", iso.isospectral},
                 {"level_distance", iso.level_distance},
                 {"max_distance", iso.max_distance},
                 {"mismatches", table},
                 {"opposite_marking_mismatches", opp.size()}},
                o.out, out);
    }
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace srlab::cli
