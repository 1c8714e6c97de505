#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rncg::oracle {

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {normal(rng), normal(rng)};
  }
  return (m + m.adjoint()) / 2.0;
}

double double_loop_interaction(const std::vector<double>& l, double u11, double u13, double u22) {
  double sum = 0.0;
  for (double s : l) {
    for (double t : l) sum += u11 * s * t + u13 * s * t * t * t + u22 * s * s * t * t;
  }
  return sum;
}

double direct_action(const std::vector<double>& l, double v2, double v4, double u11, double u13, double u22) {
  const double n = static_cast<double>(l.size());
  double v = 0.0;
  for (double s : l) v += v2 * s * s + v4 * s * s * s * s;
  double logs = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i + 1; j < l.size(); ++j) logs += std::log(std::abs(l[i] - l[j]));
  }
  return n * v + double_loop_interaction(l, u11, u13, u22) - 2.0 * logs;
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

double simpson_sqrt_edges(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  return simpson([&](double t) { return f(mid + half * std::sin(t)) * half * std::cos(t); },
                 -std::numbers::pi / 2, std::numbers::pi / 2, panels);
}

std::complex<double> contour_residue(int alpha, double a, double b, std::complex<double> z, double radius,
                                     int nodes) {
  using cplx = std::complex<double>;
  cplx sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const cplx s = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.5) / nodes);
    // sqrt(s^2 - a^2) sqrt(s^2 - b^2) with each factor ~ s at infinity.
    const cplx ra = s * std::sqrt(1.0 - (a / s) * (a / s));
    const cplx rb = s * std::sqrt(1.0 - (b / s) * (b / s));
    cplx power = 1.0;
    for (int i = 0; i < alpha; ++i) power *= s;
    sum += power / (ra * rb * (s - z)) * s;
  }
  return sum / static_cast<double>(nodes);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  double flo = f(lo);
  if (flo * f(hi) > 0.0) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double semicircle_principal_value(double a, double x) { return -x / (2.0 * a * a); }

}  // namespace rncg::oracle
