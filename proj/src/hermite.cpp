#include "hermiso/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace hermiso {

namespace {
constexpr double kCdDiagonalSwitch = 1e-6;
}

Eigen::VectorXd hermite_table(double x, int max_degree) {
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_table: x must be finite");
  if (max_degree < 0) throw std::invalid_argument("hermite_table: max_degree must be >= 0");
  Eigen::VectorXd t(max_degree + 1);
  const double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  t[0] = p0;
  if (max_degree >= 1) t[1] = std::sqrt(2.0) * x * p0;
  for (int j = 2; j <= max_degree; ++j) {
    t[j] = x * std::sqrt(2.0 / j) * t[j - 1] - std::sqrt((j - 1.0) / j) * t[j - 2];
  }
  return t;
}

Eigen::MatrixXd hermite_table(const Eigen::VectorXd& coords, int max_degree) {
  Eigen::MatrixXd t(coords.size(), max_degree + 1);
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    t.row(i) = hermite_table(coords[i], max_degree).transpose();
  }
  return t;
}

double hermite_product(const Point& x, const MultiIndex& k) {
  if (x.size() != k.degrees.size()) throw std::invalid_argument("hermite_product: dimension mismatch");
  double p = 1.0;
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    p *= hermite_table(x[a], k.degrees[a])[k.degrees[a]];
  }
  return p;
}

double christoffel_darboux(double x, double y, int n) {
  if (n < 1) throw std::invalid_argument("christoffel_darboux: n must be >= 1");
  if (std::abs(x - y) <= kCdDiagonalSwitch) {
    const Eigen::VectorXd tx = hermite_table(x, n - 1);
    const Eigen::VectorXd ty = hermite_table(y, n - 1);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += tx[j] * ty[j];
    return s;
  }
  const Eigen::VectorXd tx = hermite_table(x, n);
  const Eigen::VectorXd ty = hermite_table(y, n);
  return std::sqrt(0.5 * n) * (tx[n] * ty[n - 1] - ty[n] * tx[n - 1]) / (x - y);
}

double mehler_closed_form(const Point& y, const Point& z, double r) {
  if (y.size() != z.size()) throw std::invalid_argument("mehler_closed_form: dimension mismatch");
  if (!(std::abs(r) < 1.0)) throw std::invalid_argument("mehler_closed_form: requires |r| < 1");
  const double q = static_cast<double>(y.size());
  const double sq = y.squaredNorm() + z.squaredNorm();
  const double dot = y.dot(z);
  const double one_m_r2 = 1.0 - r * r;
  return std::pow(M_PI * one_m_r2, -0.5 * q) *
         std::exp((2.0 * dot * r - sq * r * r) / one_m_r2) * std::exp(-0.5 * sq);
}

}  // namespace hermiso
