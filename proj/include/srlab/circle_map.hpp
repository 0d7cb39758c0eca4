#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "srlab/diffeo.hpp"
#include "srlab/jet.hpp"
#include "srlab/trig.hpp"

namespace srlab {

// Expanding degree-d circle map given by its lift F with F(0) = 0 and
// F(x + 1) = F(x) + d.
class CircleMap {
 public:
  virtual ~CircleMap() = default;

  virtual int degree() const = 0;
  virtual Jet jet(double x, int order) const = 0;
  // Value (order 0) or derivative of the lift. Throws PreconditionError when
  // the representation cannot supply the requested order.
  virtual double eval(double x, int order) const;
  double operator()(double x) const { return eval(x, 0); }
  double derivative(double x) const { return jet(x, 1).coeff(1); }

  // x in [0, 1) with F(x) = y + branch, y reduced mod 1.
  virtual double inverse_branch(double y, int branch) const;

  // Analytic bound on sup |F^(m) - L_d^(m)| when available, NaN otherwise.
  virtual double perturbation_bound(int /*m*/) const;
  // Lower bound on min F' used to size pullback iterations.
  virtual double expansion_lower_bound() const = 0;
  // Starting point for the periodic point with the given cyclic code.
  virtual double periodic_seed(std::span<const int> code) const;

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::string label_;
};

using MapPtr = std::shared_ptr<const CircleMap>;

// F(x) = d x + p(x) with p a trigonometric polynomial, p(0) = 0.
class TrigMap final : public CircleMap {
 public:
  TrigMap(int degree, TrigPolynomial perturbation, std::string label = {});
  static std::shared_ptr<TrigMap> linear(int degree);

  int degree() const override { return degree_; }
  Jet jet(double x, int order) const override;
  double eval(double x, int order) const override;
  double perturbation_bound(int m) const override;
  double expansion_lower_bound() const override { return lambda_lower_; }
  const TrigPolynomial& perturbation() const { return p_; }

 private:
  int degree_;
  TrigPolynomial p_;
  double lambda_lower_;
};

// h o F o h^{-1} for a chain of diffeomorphisms h = chain.back() o ... o
// chain[0]. Nested conjugated bases are flattened.
class ConjugatedMap final : public CircleMap {
 public:
  ConjugatedMap(MapPtr base, std::vector<DiffeoPtr> chain);
  ConjugatedMap(MapPtr base, DiffeoPtr h);

  int degree() const override { return base_->degree(); }
  Jet jet(double x, int order) const override;
  double eval(double x, int order) const override;
  double inverse_branch(double y, int branch) const override;
  double expansion_lower_bound() const override;
  double periodic_seed(std::span<const int> code) const override;

  const MapPtr& base() const { return base_; }
  const DiffeoPtr& conjugacy() const { return h_; }

 private:
  MapPtr base_;
  DiffeoPtr h_;
  int smoothness_;
};

double eval(const CircleMap& map, double x, int derivative_order);
double inverse_branch(const CircleMap& map, double y, int branch);

struct ValidityReport {
  int degree = 0;
  double lambda = 0.0;  // min F'
  double omega = 0.0;   // max F'
  double a = 1.0;       // log omega / log lambda
  double c0 = 0.0;      // |map - L_d| norms
  double c1 = 0.0;
  double c2 = 0.0;             // grid max of the C^2 norm
  double c2_certified = 0.0;   // grid max plus inter-grid correction
  double lip_derivative = 0.0; // Lip(F') = sup |F''|, certified
  double lambda_certified = 0.0;
  bool analytic_certificate = false;  // false: correction from finite differences
  bool expanding = false;
  bool near_linear = false;
};

ValidityReport validate_expanding(const CircleMap& map, std::size_t grid = 1u << 14);

}  // namespace srlab
