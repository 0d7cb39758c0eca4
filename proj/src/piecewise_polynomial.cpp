#include "srlab/piecewise_polynomial.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srlab/errors.hpp"

namespace srlab {

namespace {

constexpr int kMaxSplineDegree = Jet::kMaxOrder;
using Table = std::array<std::array<double, kMaxSplineDegree + 1>, kMaxSplineDegree + 1>;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Periodic knot sequence t_j = nodes[j mod M] + floor(j / M).
struct PeriodicKnots {
  std::span<const double> nodes;
  double operator()(long j) const {
    const long m = static_cast<long>(nodes.size());
    long q = j / m;
    long r = j % m;
    if (r < 0) {
      r += m;
      --q;
    }
    return nodes[static_cast<std::size_t>(r)] + static_cast<double>(q);
  }
};

// B-spline basis values and derivatives at x in knot span `span`
// (t_span <= x < t_{span+1}). ders[k][r] is the k-th derivative of
// N_{span-p+r}. Piegl & Tiller, algorithm A2.3.
Table basis_derivatives(const PeriodicKnots& t, long span, double x, int p, int n) {
  Table ndu{};
  std::array<double, kMaxSplineDegree + 1> left{}, right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[static_cast<std::size_t>(j)] = x - t(span + 1 - j);
    right[static_cast<std::size_t>(j)] = t(span + j) - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
      saved = left[static_cast<std::size_t>(j - r)] * temp;
    }
    ndu[j][j] = saved;
  }
  Table ders{};
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];
  std::array<std::array<double, kMaxSplineDegree + 1>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0].fill(0.0);
    a[1].fill(0.0);
    a[0][0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
  return ders;
}

void check_nodes(std::span<const double> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] >= 0.0 && nodes[i] < 1.0)) throw PreconditionError("spline node outside [0, 1)");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw PreconditionError("spline nodes not strictly increasing");
  }
}

}  // namespace

PeriodicPiecewisePolynomial::PeriodicPiecewisePolynomial(std::vector<double> breaks,
                                                         std::vector<double> coeffs, int degree,
                                                         double drift)
    : breaks_(std::move(breaks)), coeffs_(std::move(coeffs)), degree_(degree), drift_(drift) {
  if (breaks_.empty()) throw PreconditionError("piecewise polynomial needs at least one piece");
  if (degree_ < 0) throw PreconditionError("negative polynomial degree");
  if (coeffs_.size() != breaks_.size() * static_cast<std::size_t>(degree_ + 1)) {
    throw PreconditionError("coefficient table size mismatch");
  }
}

std::size_t PeriodicPiecewisePolynomial::locate(double t) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  if (it == breaks_.begin()) return 0;
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double PeriodicPiecewisePolynomial::operator()(double x) const {
  const double wraps = std::floor(x - breaks_.front());
  const double t = x - wraps;
  const std::size_t i = locate(t);
  const double s = t - breaks_[i];
  const double* c = &coeffs_[i * static_cast<std::size_t>(degree_ + 1)];
  double v = 0.0;
  for (int k = degree_; k >= 0; --k) v = v * s + c[k];
  return v + wraps * drift_;
}

Jet PeriodicPiecewisePolynomial::jet(double x, int order) const {
  const double wraps = std::floor(x - breaks_.front());
  const double t = x - wraps;
  const std::size_t i = locate(t);
  const double s = t - breaks_[i];
  const double* c = &coeffs_[i * static_cast<std::size_t>(degree_ + 1)];
  Jet j(order);
  // Re-expand the local polynomial around s: coefficient k of p(s + e) is
  // sum_{m>=k} C(m, k) c_m s^{m-k}.
  for (int k = 0; k <= std::min(order, degree_); ++k) {
    double acc = 0.0;
    for (int m = degree_; m >= k; --m) {
      double binom = 1.0;
      for (int q = 0; q < k; ++q) binom = binom * (m - q) / (q + 1);
      acc = acc * s + binom * c[m];
    }
    j.coeff(k) = acc;
  }
  j.coeff(0) += wraps * drift_;
  return j;
}

double PeriodicPiecewisePolynomial::integral() const {
  if (drift_ != 0.0) throw PreconditionError("integral of a lift with nonzero drift");
  double total = 0.0;
  const std::size_t m = breaks_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double len = (i + 1 < m ? breaks_[i + 1] : breaks_.front() + 1.0) - breaks_[i];
    const double* c = &coeffs_[i * static_cast<std::size_t>(degree_ + 1)];
    double v = 0.0;
    for (int k = degree_; k >= 0; --k) v = v * len + c[k] / (k + 1);
    total += v * len;
  }
  return total;
}

PeriodicPiecewisePolynomial PeriodicPiecewisePolynomial::antiderivative() const {
  if (drift_ != 0.0) throw PreconditionError("antiderivative of a lift with nonzero drift");
  const std::size_t m = breaks_.size();
  const int deg = degree_ + 1;
  std::vector<double> out(m * static_cast<std::size_t>(deg + 1), 0.0);
  double offset = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* c = &coeffs_[i * static_cast<std::size_t>(degree_ + 1)];
    double* o = &out[i * static_cast<std::size_t>(deg + 1)];
    o[0] = offset;
    for (int k = 0; k <= degree_; ++k) o[k + 1] = c[k] / (k + 1);
    const double len = (i + 1 < m ? breaks_[i + 1] : breaks_.front() + 1.0) - breaks_[i];
    double v = 0.0;
    for (int k = deg; k >= 1; --k) v = v * len + o[k];
    offset += v * len;
  }
  PeriodicPiecewisePolynomial a(breaks_, std::move(out), deg, offset);
  a.add_constant(-a(0.0));
  return a;
}

PeriodicPiecewisePolynomial& PeriodicPiecewisePolynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  drift_ *= s;
  return *this;
}

PeriodicPiecewisePolynomial& PeriodicPiecewisePolynomial::add_constant(double c) {
  for (std::size_t i = 0; i < breaks_.size(); ++i) coeffs_[i * static_cast<std::size_t>(degree_ + 1)] += c;
  return *this;
}

PeriodicPiecewisePolynomial PeriodicPiecewisePolynomial::minus_identity() const {
  int deg = std::max(degree_, 1);
  std::vector<double> out(breaks_.size() * static_cast<std::size_t>(deg + 1), 0.0);
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    for (int k = 0; k <= degree_; ++k) {
      out[i * static_cast<std::size_t>(deg + 1) + static_cast<std::size_t>(k)] =
          coeffs_[i * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(k)];
    }
    out[i * static_cast<std::size_t>(deg + 1)] -= breaks_[i];
    out[i * static_cast<std::size_t>(deg + 1) + 1] -= 1.0;
  }
  return PeriodicPiecewisePolynomial(breaks_, std::move(out), deg, drift_ - 1.0);
}

PeriodicPiecewisePolynomial periodic_spline(std::span<const double> nodes,
                                            std::span<const double> values, int degree) {
  const std::size_t m = nodes.size();
  if (values.size() != m) throw PreconditionError("spline nodes/values size mismatch");
  if (degree < 1 || degree % 2 == 0 || degree > kMaxSplineDegree) {
    throw PreconditionError("periodic spline degree must be odd in [1, 7]");
  }
  if (m <= static_cast<std::size_t>(degree)) {
    throw PreconditionError("periodic spline of degree " + std::to_string(degree) + " needs more than " +
                            std::to_string(degree) + " nodes");
  }
  check_nodes(nodes);
  const PeriodicKnots t{nodes};
  const int p = degree;
  const long mm = static_cast<long>(m);
  auto wrap = [mm](long j) { return static_cast<int>(((j % mm) + mm) % mm); };

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m * static_cast<std::size_t>(p));
  for (long i = 0; i < mm; ++i) {
    const Table d = basis_derivatives(t, i, t(i), p, 0);
    for (int r = 0; r < p; ++r) triplets.emplace_back(static_cast<int>(i), wrap(i - p + r), d[0][r]);
  }
  Eigen::SparseMatrix<double> a(static_cast<int>(m), static_cast<int>(m));
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NumericalError("periodic spline collocation matrix is singular");
  Eigen::VectorXd rhs(static_cast<int>(m));
  for (std::size_t i = 0; i < m; ++i) rhs[static_cast<int>(i)] = values[i];
  const Eigen::VectorXd c = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw NumericalError("periodic spline solve failed");

  std::vector<double> coeffs(m * static_cast<std::size_t>(p + 1));
  for (long i = 0; i < mm; ++i) {
    const Table d = basis_derivatives(t, i, t(i), p, p);
    for (int k = 0; k <= p; ++k) {
      double s = 0.0;
      for (int r = 0; r <= p; ++r) s += c[wrap(i - p + r)] * d[k][r];
      coeffs[static_cast<std::size_t>(i) * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(k)] =
          s / factorial(k);
    }
  }
  return PeriodicPiecewisePolynomial(std::vector<double>(nodes.begin(), nodes.end()), std::move(coeffs), p);
}

PeriodicPiecewisePolynomial periodic_cubic_uniform(std::span<const double> values) {
  std::vector<double> nodes(values.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<double>(i) / static_cast<double>(nodes.size());
  return periodic_spline(nodes, values, 3);
}

PeriodicPiecewisePolynomial monotone_periodic_cubic(std::span<const double> nodes,
                                                    std::span<const double> values) {
  const std::size_t m = nodes.size();
  if (values.size() != m || m == 0) throw PreconditionError("monotone interpolation size mismatch");
  check_nodes(nodes);
  auto x_at = [&](std::size_t i) { return i < m ? nodes[i] : nodes[i - m] + 1.0; };
  auto y_at = [&](std::size_t i) { return i < m ? values[i] : values[i - m] + 1.0; };
  std::vector<double> h(m), delta(m);
  for (std::size_t i = 0; i < m; ++i) {
    h[i] = x_at(i + 1) - x_at(i);
    delta[i] = (y_at(i + 1) - y_at(i)) / h[i];
    if (!(delta[i] > 0.0)) throw MonotonicityFailure("correspondence is not order preserving");
  }
  std::vector<double> slope(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = (i + m - 1) % m;
    const double w1 = 2.0 * h[i] + h[prev];
    const double w2 = h[i] + 2.0 * h[prev];
    slope[i] = (w1 + w2) / (w1 / delta[prev] + w2 / delta[i]);
  }
  std::vector<double> coeffs(m * 4);
  for (std::size_t i = 0; i < m; ++i) {
    const double m0 = slope[i];
    const double m1 = slope[(i + 1) % m];
    coeffs[i * 4 + 0] = values[i];
    coeffs[i * 4 + 1] = m0;
    coeffs[i * 4 + 2] = (3.0 * delta[i] - 2.0 * m0 - m1) / h[i];
    coeffs[i * 4 + 3] = (m0 + m1 - 2.0 * delta[i]) / (h[i] * h[i]);
  }
  return PeriodicPiecewisePolynomial(std::vector<double>(nodes.begin(), nodes.end()), std::move(coeffs), 3, 1.0);
}

}  // namespace srlab
