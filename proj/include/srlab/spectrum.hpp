#pragma once

#include <optional>
#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/periodic_orbits.hpp"

namespace srlab {

struct SpectrumEntry {
  double value = 0.0;
  Code code;
  double point = 0.0;
};

struct LengthSpectrum {
  int degree = 2;
  // levels[n - 1] holds the d^n - 1 entries of period n sorted by value.
  std::vector<std::vector<SpectrumEntry>> levels;
  double lambda = 0.0;          // min f'
  double omega = 0.0;           // max f'
  double lip_derivative = 0.0;  // Lip(f')

  int max_level() const { return static_cast<int>(levels.size()); }
  const std::vector<SpectrumEntry>& level(int n) const;
  double a() const;
};

LengthSpectrum length_spectrum(const CircleMap& map, int N);

struct SparsityParams {
  double beta = 0.0;
  double gamma = 0.0;
  double c_beta = 1.0;
  double c_gamma = 1.0;
};

struct SparsityWitness {
  int level1 = 0, level2 = 0;
  double value1 = 0.0, value2 = 0.0;
};

struct SparsityVerdict {
  bool satisfied = true;
  std::size_t pairs = 0, far = 0, close = 0, violations = 0;
  std::optional<SparsityWitness> witness;  // first violation in (level, value) order
  // Largest C_beta (for the given beta) under which every non-CLOSE pair is
  // FAR; infinity when every pair is CLOSE.
  double c_beta_max = 0.0;
};

SparsityVerdict sparsity_classify(const LengthSpectrum& spec, const SparsityParams& params);

struct DefaultSparsity {
  double beta0 = 0.0;
  double gamma0 = 0.0;
  double a0 = 0.0;
};

DefaultSparsity default_sparsity_parameters(int d);

struct MarkingRow {
  int period = 0;
  Code code;
  double lambda_f = 0.0;
  double lambda_g = 0.0;
  double discrepancy = 0.0;
  double threshold = 0.0;    // C_gamma Lambda^{-gamma k}
  bool code_consistent = false;
};

struct MarkingTable {
  std::vector<MarkingRow> rows;
  int kappa0 = 0;
  int N = 0;                 // depth from the delta_1 formula
  int recovered_up_to = 0;   // min(N, stored levels); 0 when nothing recovered
  double K = 0.0;            // proximity constant
  double max_discrepancy = 0.0;
  bool all_code_consistent = true;
};

// N = floor(-(1/(eta beta a)) log(delta1) / log(Lambda)).
int marking_depth(double delta1, double beta, double a, double lambda, double eta);

// Smallest k >= 1 with log k + beta k log Omega - log C_beta + log K <
// eta beta k log Omega.
int marking_kappa0(double beta, double c_beta, double K, double omega, double eta);

MarkingTable recover_marking(const LengthSpectrum& spec_f, const LengthSpectrum& spec_g, double delta1,
                             const SparsityParams& params, double eta);

}  // namespace srlab
