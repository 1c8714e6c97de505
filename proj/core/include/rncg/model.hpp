#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rncg {

/// Which random finite geometry is being sampled. Both reduce to a single
/// N x N Hermitian matrix H; they differ in the sign of the odd bitrace terms.
enum class ModelKind { TypeOneZero, TypeZeroOne };

/// How the bitrace interaction enters the saddle-point equation.
/// PaperSaddle:      A = 2g + 6 m2 (half the x-derivative of the interaction)
/// SymmetrizedSaddle: A = 2g + 12 m2 (full functional derivative of the double integral)
enum class SaddleVariant { PaperSaddle, SymmetrizedSaddle };

struct ModelSpec {
  ModelKind kind = ModelKind::TypeOneZero;
  double g = 0.0;
  SaddleVariant variant = SaddleVariant::PaperSaddle;

  /// Throws ValidationError if g is not finite.
  void validate() const;
};

/// Coefficient multiplying m2 in the linear saddle coefficient A = 2g + c_sym * m2.
double interaction_coefficient(SaddleVariant variant) noexcept;

const char* to_string(ModelKind kind) noexcept;
const char* to_string(SaddleVariant variant) noexcept;
ModelKind parse_model_kind(const std::string& text);
SaddleVariant parse_variant(const std::string& text);

/// Polynomial potentials of the eigenvalue action
///   N * sum_i V(l_i) + sum_{i,j} U(l_i, l_j)
/// with V(s) = v2 s^2 + v4 s^4 and U(s,t) = u11 s t + u13 s t^3 + u22 s^2 t^2.
/// The model actions are one point of this family; the Gaussian ensemble
/// (V = s^2, U = 0) is another and serves as an oracle for the sampler.
struct ActionCoefficients {
  double v2 = 0.0;
  double v4 = 0.0;
  double u11 = 0.0;
  double u13 = 0.0;
  double u22 = 0.0;

  static ActionCoefficients from_spec(const ModelSpec& spec) noexcept;
  static ActionCoefficients gaussian() noexcept { return {1.0, 0.0, 0.0, 0.0, 0.0}; }

  double V(double s) const noexcept { return s * s * (v2 + v4 * s * s); }
  double U(double s, double t) const noexcept { return s * t * (u11 + u13 * t * t) + u22 * s * s * t * t; }

  /// sum_{i,j} U(l_i, l_j) from the power sums p1, p2, p3.
  double interaction(double p1, double p2, double p3) const noexcept {
    return u11 * p1 * p1 + u13 * p1 * p3 + u22 * p2 * p2;
  }
};

/// Power sums p_m = sum_i l_i^m for m = 1..4 (index 0 holds p_1).
using PowerSums = std::array<double, 4>;
PowerSums power_sums(std::span<const double> lambdas) noexcept;

/// Eigenvalues of H for a single N x N matrix; N >= 2.
struct EigenvalueConfig {
  std::vector<double> lambdas;

  explicit EigenvalueConfig(std::vector<double> values);
  std::size_t N() const noexcept { return lambdas.size(); }
};

double potential_V(double s, const ModelSpec& spec) noexcept;
double kernel_U(double s, double t, const ModelSpec& spec) noexcept;

/// N sum V + sum_{i,j} U, the polynomial part of the negative log-density.
double trace_action(std::span<const double> lambdas, const ActionCoefficients& coeffs) noexcept;

/// Negative log of the joint eigenvalue density up to its normalizing constant:
///   N sum_i V(l_i) + sum_{i,j} U(l_i, l_j) - 2 sum_{i<j} log|l_i - l_j|.
/// Throws DegenerateConfigurationError on coincident eigenvalues.
double action_eigenvalues(const EigenvalueConfig& cfg, const ModelSpec& spec);
double action_eigenvalues(std::span<const double> lambdas, const ActionCoefficients& coeffs);

/// Matrix-trace form of the Dirac action written in terms of H,
///   2N(g tr H^2 + tr H^4) +- 2g (tr H)^2 +- 8 tr H tr H^3 + 6 (tr H^2)^2.
/// Throws ValidationError if H deviates from Hermitian by more than 1e-12.
double dirac_action_matrix(const Eigen::MatrixXcd& H, const ModelSpec& spec);

}  // namespace rncg
