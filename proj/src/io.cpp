#include "srlab/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "srlab/errors.hpp"

namespace srlab {

using nlohmann::json;

std::string map_spec_to_json(const MapSpec& spec) {
  json j;
  j["degree"] = spec.degree;
  j["sine_coeffs"] = spec.sine_coeffs;
  j["cosine_coeffs"] = spec.cosine_coeffs;
  j["label"] = spec.label;
  if (spec.normalize) j["normalize"] = true;
  if (spec.conjugate_sine) j["conjugate_sine"] = *spec.conjugate_sine;
  if (spec.conjugate_cosine) j["conjugate_cosine"] = *spec.conjugate_cosine;
  return j.dump(2);
}

MapSpec map_spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("map spec: ") + e.what());
  }
  MapSpec s;
  try {
    s.degree = j.at("degree").get<int>();
    s.sine_coeffs = j.value("sine_coeffs", std::vector<double>{});
    s.cosine_coeffs = j.value("cosine_coeffs", std::vector<double>{});
    s.label = j.value("label", std::string{});
    s.normalize = j.value("normalize", false);
    if (j.contains("conjugate_sine")) s.conjugate_sine = j["conjugate_sine"].get<std::vector<double>>();
    if (j.contains("conjugate_cosine")) s.conjugate_cosine = j["conjugate_cosine"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("map spec: ") + e.what());
  }
  if (s.degree < 2) throw PreconditionError("map spec: degree must be at least 2");
  return s;
}

MapSpec read_map_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open map spec " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return map_spec_from_json(ss.str());
}

void write_map_spec(const std::string& path, const MapSpec& spec) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << map_spec_to_json(spec) << '\n';
}

std::shared_ptr<TrigMap> trig_map(const MapSpec& spec) {
  return std::make_shared<TrigMap>(spec.degree, TrigPolynomial(spec.sine_coeffs, spec.cosine_coeffs), spec.label);
}

MapPtr build_map(const MapSpec& spec) {
  MapPtr m = trig_map(spec);
  if (spec.normalize) m = normalize_map(m).map;
  if (spec.conjugate_sine || spec.conjugate_cosine) {
    auto h = std::make_shared<TrigDiffeo>(TrigPolynomial(spec.conjugate_sine.value_or(std::vector<double>{}),
                                                         spec.conjugate_cosine.value_or(std::vector<double>{})));
    if (!validate_diffeo(*h, 1u << 12).valid) throw PreconditionError("map spec: conjugacy is not a diffeomorphism");
    m = std::make_shared<ConjugatedMap>(m, h);
  }
  return m;
}

void write_orbits_csv(std::ostream& os, const std::vector<PeriodicOrbitRecord>& records, int /*degree*/) {
  os << "code,point,period,log_multiplier,residual\n" << std::setprecision(17);
  for (const auto& r : records) {
    os << code_string(r.code) << ',' << r.point << ',' << r.period << ',' << r.log_multiplier << ',' << r.residual
       << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const LengthSpectrum& spec) {
  os << "level,value,code\n" << std::setprecision(17);
  for (int n = 1; n <= spec.max_level(); ++n) {
    for (const auto& e : spec.level(n)) os << n << ',' << e.value << ',' << code_string(e.code) << '\n';
  }
}

void write_density_csv(std::ostream& os, const InvariantDensity& density) {
  os << "x,theta\n" << std::setprecision(17);
  const auto& v = density.theta.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << static_cast<double>(i) / static_cast<double>(v.size()) << ',' << v[i] << '\n';
  }
}

}  // namespace srlab
