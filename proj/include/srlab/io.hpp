#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srlab/circle_map.hpp"
#include "srlab/normalization.hpp"
#include "srlab/periodic_orbits.hpp"
#include "srlab/spectrum.hpp"

namespace srlab {

// Trigonometric perturbation of L_d. The cosine part is stored as given; the
// constant term is implied by p(0) = 0.
struct MapSpec {
  int degree = 2;
  std::vector<double> sine_coeffs;
  std::vector<double> cosine_coeffs;
  std::string label;
  // Optional extras: replace the map by its measure-normalization, then
  // conjugate by x + q(x) with q given by these coefficients.
  bool normalize = false;
  std::optional<std::vector<double>> conjugate_sine;
  std::optional<std::vector<double>> conjugate_cosine;

  bool operator==(const MapSpec&) const = default;
};

std::string map_spec_to_json(const MapSpec& spec);
MapSpec map_spec_from_json(const std::string& text);
MapSpec read_map_spec(const std::string& path);
void write_map_spec(const std::string& path, const MapSpec& spec);

std::shared_ptr<TrigMap> trig_map(const MapSpec& spec);
// The map described by spec including normalization and conjugation.
MapPtr build_map(const MapSpec& spec);

void write_orbits_csv(std::ostream& os, const std::vector<PeriodicOrbitRecord>& records, int degree);
void write_spectrum_csv(std::ostream& os, const LengthSpectrum& spec);
void write_density_csv(std::ostream& os, const InvariantDensity& density);

}  // namespace srlab
