#include "rncg/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rncg/errors.hpp"
#include "rncg/quadrature.hpp"

namespace rncg {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kBranchTolerance = 1e-12;

std::int64_t central_binomial(int k) {
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (k + i) / i;
  return c;
}

// binom(1/2, k)
double half_binomial(int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= (0.5 - i) / (i + 1.0);
  return c;
}

double distance_to_support(const EquilibriumMeasure& mu, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& cut : mu.support()) {
    const double dx = z.real() < cut.lo ? cut.lo - z.real() : (z.real() > cut.hi ? z.real() - cut.hi : 0.0);
    best = std::min(best, std::hypot(dx, z.imag()));
  }
  return best;
}

// Closed form evaluated with principal square roots; each product
// sqrt(z - c) sqrt(z + c) has its cut on [-c, c] and behaves like z at infinity.
cplx resolvent_closed_form(const EquilibriumMeasure& mu, cplx z) {
  if (mu.shape == CutShape::OneCut) {
    const double two_a = 2.0 * mu.a;
    const cplx root = std::sqrt(z - two_a) * std::sqrt(z + two_a);
    const cplx poly = z * (mu.A + mu.B * z * z);
    const cplx with_root = (mu.central_coefficient() + mu.B * z * z) * root;
    if (std::abs(z) <= 2.0 * mu.outer_edge()) return -(poly - with_root);
    // poly^2 - with_root^2 is a quadratic in z^2; dividing by poly + with_root
    // avoids cancelling the leading B z^3 terms far from the cut.
    const double alpha = mu.central_coefficient();
    const double a2 = mu.a * mu.a;
    const cplx difference_of_squares =
        (4.0 * mu.A * mu.B * a2 + 12.0 * mu.B * mu.B * a2 * a2) * z * z + 4.0 * a2 * alpha * alpha;
    return -difference_of_squares / (poly + with_root);
  }
  // Two cuts: W = -kappa z (P - R), P = z^2 - (a^2 + b^2)/2, kappa = pi * norm_coeff
  // (= B for the equilibrium solution), and P^2 - R^2 = (a^2 - b^2)^2 / 4.
  const double a = mu.a;
  const double b = mu.b;
  const cplx root = std::sqrt(z - a) * std::sqrt(z + a) * std::sqrt(z - b) * std::sqrt(z + b);
  const cplx P = z * z - 0.5 * (a * a + b * b);
  const double gap = a * a - b * b;
  const double kappa = kPi * mu.norm_coeff;
  return -kappa * z * (0.25 * gap * gap) / (P + root);
}

// Containing cut for x, or nullptr.
const Interval* find_cut(const std::vector<Interval>& cuts, double x) {
  for (const Interval& cut : cuts) {
    if (x > cut.lo && x < cut.hi) return &cut;
  }
  return nullptr;
}

struct HullMap {
  double center;
  double half;
};

HullMap hull_of(std::span<const Interval> support) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Interval& cut : support) {
    lo = std::min(lo, cut.lo);
    hi = std::max(hi, cut.hi);
  }
  if (!(hi > lo)) throw ValidationError("energy: empty support");
  return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

struct SpectralMoments {
  std::vector<double> chebyshev;      // c_n = int f(s) T_n((s - center)/half) ds
  std::array<double, 5> power{};      // int s^k f(s) ds, k = 0..4
};

// Integrates f against Chebyshev polynomials of the hull coordinate and against
// powers of s. Works in the angle phi with s = center + half cos(phi): panels
// of width <= pi / modes keep cos(n phi) resolved, and the sine substitution on
// every panel absorbs square-root behaviour at panel ends. `kinks` are extra
// panel boundaries (grid nodes of a piecewise-linear density).
SpectralMoments spectral_moments(const std::function<double(double)>& f, std::span<const Interval> support,
                                 std::span<const double> kinks, const HullMap& hull, int modes) {
  SpectralMoments out;
  out.chebyshev.assign(static_cast<std::size_t>(modes) + 1, 0.0);
  const quad::GaussRule& rule = quad::gauss_legendre(12);
  const double max_width = kPi / std::max(modes, 8);
  auto to_phi = [&](double s) { return std::acos(std::clamp((s - hull.center) / hull.half, -1.0, 1.0)); };

  std::vector<double> tn(out.chebyshev.size());
  for (const Interval& cut : support) {
    std::vector<double> breaks{to_phi(cut.hi), to_phi(cut.lo)};
    for (double s : kinks) {
      if (s > cut.lo && s < cut.hi) breaks.push_back(to_phi(s));
    }
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t p = 1; p < breaks.size(); ++p) {
      const double p0 = breaks[p - 1];
      const double p1 = breaks[p];
      if (!(p1 > p0)) continue;
      const int pieces = static_cast<int>(std::ceil((p1 - p0) / max_width));
      const double width = (p1 - p0) / pieces;
      for (int piece = 0; piece < pieces; ++piece) {
        const double lo = p0 + piece * width;
        const double mid = lo + 0.5 * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double theta = 0.5 * kPi * rule.nodes[i];
          const double phi = mid + half * std::sin(theta);
          const double jac = 0.5 * kPi * half * std::cos(theta) * hull.half * std::sin(phi);
          const double u = std::cos(phi);
          const double s = hull.center + hull.half * u;
          const double weight = rule.weights[i] * jac * f(s);
          if (weight == 0.0) continue;
          tn[0] = 1.0;
          if (tn.size() > 1) tn[1] = u;
          for (std::size_t n = 2; n < tn.size(); ++n) tn[n] = 2.0 * u * tn[n - 1] - tn[n - 2];
          for (std::size_t n = 0; n < tn.size(); ++n) out.chebyshev[n] += weight * tn[n];
          double sk = 1.0;
          for (double& m : out.power) {
            m += weight * sk;
            sk *= s;
          }
        }
      }
    }
  }
  return out;
}

// int int log|s - t| f f from log|u - v| = -log 2 - sum_n (2/n) T_n(u) T_n(v).
double log_energy_from(const SpectralMoments& sm, const HullMap& hull) {
  const double mass = sm.chebyshev[0];
  double tail = 0.0;
  for (std::size_t n = 1; n < sm.chebyshev.size(); ++n) {
    tail += 2.0 / static_cast<double>(n) * sm.chebyshev[n] * sm.chebyshev[n];
  }
  return mass * mass * std::log(0.5 * hull.half) - tail;
}

double assemble_energy(const SpectralMoments& sm, const HullMap& hull, const ActionCoefficients& c) {
  const auto& m = sm.power;
  const double potential = c.v2 * m[2] + c.v4 * m[4];
  const double interaction = c.interaction(m[1], m[2], m[3]);
  return potential + interaction - log_energy_from(sm, hull);
}

void check_mass(double mass) {
  if (std::abs(mass - 1.0) > 1e-6) {
    throw ValidationError("energy requires a normalized density (mass = " + std::to_string(mass) + ")");
  }
}

}  // namespace

SaddleCoefficients saddle_coefficients(const ModelSpec& spec, double m2) noexcept {
  const double c_sym = interaction_coefficient(spec.variant);
  return {2.0 * spec.g + c_sym * m2, 4.0, c_sym};
}

double ResiduePolynomial::operator()(double z) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> ResiduePolynomial::operator()(std::complex<double> z) const noexcept {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<ResidueTerm> residue_series_terms(int alpha) {
  if (alpha < 1 || alpha > 7) throw DomainError("residue_at_infinity: alpha must lie in 1..7");
  // s^{alpha-3} * sum_k c_k a^{2k} s^{-2k} * sum_j c_j b^{2j} s^{-2j} * sum_q z^q s^{-q};
  // the 1/s coefficient has q = alpha - 2 - 2k - 2j.
  std::vector<ResidueTerm> terms;
  for (int k = 0; 2 * k <= alpha - 2; ++k) {
    for (int j = 0; 2 * k + 2 * j <= alpha - 2; ++j) {
      ResidueTerm t;
      t.num = central_binomial(k) * central_binomial(j);
      t.den = std::int64_t{1} << (2 * (k + j));
      const std::int64_t common = std::gcd(t.num, t.den);
      t.num /= common;
      t.den /= common;
      t.k = k;
      t.j = j;
      t.q = alpha - 2 - 2 * k - 2 * j;
      terms.push_back(t);
    }
  }
  return terms;
}

ResiduePolynomial residue_at_infinity(int alpha, double a, double b) {
  ResiduePolynomial poly;
  for (const ResidueTerm& t : residue_series_terms(alpha)) {
    poly.coeffs[static_cast<std::size_t>(t.q)] +=
        static_cast<double>(t.num) / static_cast<double>(t.den) * std::pow(a, 2 * t.k) * std::pow(b, 2 * t.j);
  }
  return poly;
}

std::complex<double> residue_by_contour(int alpha, double a, double b, std::complex<double> z, double radius,
                                        int nodes) {
  if (!(radius > std::max(a, std::abs(z)))) throw DomainError("contour must enclose the cuts and z");
  if (nodes < 8) throw DomainError("contour needs at least 8 nodes");
  cplx sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * kPi * k / nodes;
    const cplx s = std::polar(radius, theta);
    const cplx w2 = 1.0 / (s * s);
    // Branch with sqrt(...) ~ s^2 at infinity; both factors stay near 1 for |s| > a.
    const cplx root = s * s * std::sqrt(1.0 - a * a * w2) * std::sqrt(1.0 - b * b * w2);
    sum += std::pow(s, alpha) / (root * (s - z)) * s;  // ds = i s dtheta
  }
  return sum / static_cast<double>(nodes);
}

double sqrt_product_coefficient(int n, double a, double b) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const int j = n - k;
    sum += half_binomial(k) * half_binomial(j) * ((k + j) % 2 == 0 ? 1.0 : -1.0) * std::pow(a, 2 * k) *
           std::pow(b, 2 * j);
  }
  return sum;
}

std::complex<double> stieltjes(const EquilibriumMeasure& mu, std::complex<double> z, Side side) {
  if (side == Side::None) {
    if (distance_to_support(mu, z) <= kBranchTolerance) {
      throw BranchAmbiguityError("resolvent evaluated on its branch cut; choose a side");
    }
    return resolvent_closed_form(mu, z);
  }
  // Boundary value from above; the lower value follows by Schwarz reflection.
  const cplx upper = resolvent_closed_form(mu, cplx(z.real(), 0.0));
  return side == Side::Upper ? upper : std::conj(upper);
}

std::complex<double> stieltjes_quadrature(const EquilibriumMeasure& mu, std::complex<double> z, int nodes) {
  double re = 0.0;
  double im = 0.0;
  for (const Interval& cut : mu.support()) {
    re += quad::integrate_sqrt_edges([&](double s) { return (1.0 / (s - z)).real() * density(mu, s); }, cut.lo,
                                     cut.hi, nodes);
    im += quad::integrate_sqrt_edges([&](double s) { return (1.0 / (s - z)).imag() * density(mu, s); }, cut.lo,
                                     cut.hi, nodes);
  }
  return {re, im};
}

double principal_value_transform(const EquilibriumMeasure& mu, double x, int nodes) {
  const std::vector<Interval> cuts = mu.support();
  const Interval* home = find_cut(cuts, x);
  if (home == nullptr) {
    throw DomainError("principal value transform needs x in the open interior of the support");
  }
  const double psi_x = density(mu, x);
  const quad::GaussRule& rule = quad::gauss_legendre(nodes);
  const double mid = 0.5 * (home->lo + home->hi);
  const double half = 0.5 * (home->hi - home->lo);
  const double quarter_turn = 0.5 * kPi;

  auto subtracted = [&](double s) {
    const double ds = s - x;
    if (std::abs(ds) < 1e-13 * half) {
      const double h = 1e-6 * half;
      return (density(mu, x + h) - density(mu, x - h)) / (2.0 * h);
    }
    return (density(mu, s) - psi_x) / ds;
  };
  // Pair symmetric nodes so the sum is exactly odd-symmetric about the cut centre.
  double sum = 0.0;
  const std::size_t n = rule.nodes.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t k = n - 1 - i;
    const double theta = quarter_turn * rule.nodes[k];
    const double weight = rule.weights[k] * std::cos(theta);
    const double offset = half * std::sin(theta);
    sum += weight * (subtracted(mid + offset) + subtracted(mid - offset));
  }
  if (n % 2 == 1) sum += rule.weights[n / 2] * subtracted(mid);
  double pv = quarter_turn * half * sum + psi_x * std::log((home->hi - x) / (x - home->lo));

  for (const Interval& cut : cuts) {
    if (&cut == home) continue;
    pv += quad::integrate_sqrt_edges([&](double s) { return density(mu, s) / (s - x); }, cut.lo, cut.hi, nodes);
  }
  return pv;
}

double saddle_residual(const EquilibriumMeasure& mu, const ModelSpec& spec, double x) {
  const SaddleCoefficients c = saddle_coefficients(spec, moment(mu, 2));
  return -principal_value_transform(mu, x) - (c.A * x + c.B * x * x * x);
}

ConditionResiduals condition_residuals(double a, double b, const SaddleCoefficients& coeffs) {
  if (!(b >= 0.0) || !(b < a)) throw DomainError("condition_residuals needs 0 <= b < a");
  const double A = coeffs.A;
  const double B = coeffs.B;
  // J'(s) s^j = A s^{1+j} + B s^{3+j}; the conditions read off the residues at z = 0.
  ConditionResiduals r;
  r.r0 = A * residue_at_infinity(1, a, b)(0.0) + B * residue_at_infinity(3, a, b)(0.0);
  const double odd = A * residue_at_infinity(2, a, b)(0.0) + B * residue_at_infinity(4, a, b)(0.0);
  r.r1 = 2.0 * odd / B;
  // Normalization through the w-expansion of sqrt((1 - a^2 w^2)(1 - b^2 w^2)),
  // with 2B in place of B so that it matches the unit-mass density.
  r.r2 = -B * sqrt_product_coefficient(2, a, b) - 1.0;
  return r;
}

double two_cut_second_moment_residue(double a, double b, double B) {
  return -B * sqrt_product_coefficient(3, a, b);
}

double log_self_energy(const std::function<double(double)>& density_fn, std::span<const Interval> support,
                       int modes) {
  const HullMap hull = hull_of(support);
  return log_energy_from(spectral_moments(density_fn, support, {}, hull, modes), hull);
}

double energy(const std::function<double(double)>& density_fn, std::span<const Interval> support,
              const ActionCoefficients& coeffs, int modes) {
  if (modes < 1) throw ValidationError("energy needs at least one Chebyshev mode");
  const HullMap hull = hull_of(support);
  const SpectralMoments sm = spectral_moments(density_fn, support, {}, hull, modes);
  check_mass(sm.power[0]);
  return assemble_energy(sm, hull, coeffs);
}

double energy(const DensityGrid& grid, const ActionCoefficients& coeffs, int modes) {
  if (modes < 1) throw ValidationError("energy needs at least one Chebyshev mode");
  grid.validate();
  check_mass(grid.trapezoid_mass());
  // Support: maximal runs of positive values, closed by their zero neighbours.
  std::vector<Interval> support;
  const std::size_t n = grid.xs.size();
  std::size_t i = 0;
  while (i < n) {
    if (grid.values[i] <= 0.0) {
      ++i;
      continue;
    }
    const std::size_t start = i == 0 ? 0 : i - 1;
    while (i < n && grid.values[i] > 0.0) ++i;
    const std::size_t stop = i == n ? n - 1 : i;
    support.push_back({grid.xs[start], grid.xs[stop]});
  }
  if (support.empty()) throw ValidationError("energy: density grid is identically zero");
  const HullMap hull = hull_of(support);
  const SpectralMoments sm =
      spectral_moments([&grid](double x) { return grid.interpolate(x); }, support, grid.xs, hull, modes);
  return assemble_energy(sm, hull, coeffs);
}

double energy(const DensityGrid& grid, const ModelSpec& spec, int modes) {
  return energy(grid, ActionCoefficients::from_spec(spec), modes);
}

}  // namespace rncg
