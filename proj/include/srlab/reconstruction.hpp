#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/conjugacy.hpp"
#include "srlab/diffeo.hpp"
#include "srlab/spectrum.hpp"

namespace srlab {

enum class MarkingMode { Oracle, Spectrum };

struct ReconstructionConfig {
  int kappa0 = 4;
  double tau = 0.5;
  int r = 2;
  int max_k = 12;
  double eta = 2.0;
  MarkingMode mode = MarkingMode::Oracle;
  std::optional<SparsityParams> sparsity;  // defaults: beta0, gamma0, C = 1
  std::size_t density_grid = 4096;
  std::size_t norm_grid = 1u << 14;
  int oracle_depth = 14;
  // Divergence: the oracle error or the step size |h_{k+1} - h_k|_{C^2} is
  // non-decreasing for 3 consecutive steps while above its floor.
  double error_floor = 1e-9;
  double step_floor = 1e-6;
  bool throw_on_divergence = true;
};

struct StepDiagnostics {
  int k = 0;
  double h_c0 = 0.0, h_c1 = 0.0, h_c2 = 0.0;    // |h_k - id|
  double fg_c0 = 0.0, fg_c1 = 0.0, fg_lip = 0.0; // f_k - g
  double o_k = 0.0, O_k = 0.0;                   // gaps of P_k^g
  double rolle_ratio = 0.0;                      // |f_k - g|_{C^0} / (Lip * O_k)
  bool rolle_ok = false;
  double interpolation_residual = 0.0;           // max over P_k^g of |f_k - g|
  double oracle_error = 0.0;                     // |h_k - phi| on oracle samples
  double phi_c2 = 0.0, psi_c2 = 0.0;             // adjustments that produced h_k
  double phi_c0 = 0.0, psi_c0 = 0.0;
  double T_empirical = 0.0;
  double Q_empirical = 0.0;
  double step_c2 = 0.0;                          // |h_k - h_{k-1}|_{C^2}
  double top_norm = 0.0;                         // |f_k - g|_{C^1} Lipschitz part, U
  int marking_depth = 0;                         // N_{k+1}
  bool oracle_assisted = true;
  bool whitney_fallback = false;
  double choice_lhs = 0.0, choice_rhs = 0.0;     // 5(a+1)(k+1) <= tau r k / (2 a beta)
  double seconds = 0.0;
};

struct ReconstructionState {
  int k = 0;
  DiffeoPtr h;
  MapPtr f_k;
};

struct ReconstructionResult {
  ReconstructionState state;
  std::vector<StepDiagnostics> series;
  bool diverged = false;
  bool oracle_assisted = false;
  std::string failure;
  double final_oracle_error = 0.0;
  double decay_factor = 0.0;  // geometric factor fitted over the last 5 steps
};

// Whitney extension sending P_{kappa0}^f to P_{kappa0}^g.
DiffeoPtr initial_adjustment(const CircleMap& f, const CircleMap& g, int kappa0, int r);

// One scheme step k -> k+1; appends diagnostics of the new state.
ReconstructionState scheme_step(const MapPtr& f, const MapPtr& g, const ReconstructionState& state,
                                const ReconstructionConfig& config, StepDiagnostics& diag);

ReconstructionResult run_scheme(const MapPtr& f, const MapPtr& g, const ReconstructionConfig& config);

}  // namespace srlab
