#include "rncg/model.hpp"

#include <cmath>
#include <string>

#include "rncg/errors.hpp"

namespace rncg {

void ModelSpec::validate() const {
  if (!std::isfinite(g)) throw ValidationError("coupling g must be finite");
}

double interaction_coefficient(SaddleVariant variant) noexcept {
  return variant == SaddleVariant::PaperSaddle ? 6.0 : 12.0;
}

const char* to_string(ModelKind kind) noexcept {
  return kind == ModelKind::TypeOneZero ? "(1,0)" : "(0,1)";
}

const char* to_string(SaddleVariant variant) noexcept {
  return variant == SaddleVariant::PaperSaddle ? "paper" : "symmetrized";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "10" || text == "(1,0)" || text == "1,0") return ModelKind::TypeOneZero;
  if (text == "01" || text == "(0,1)" || text == "0,1") return ModelKind::TypeZeroOne;
  throw ValidationError("unknown model kind '" + text + "' (expected 10 or 01)");
}

SaddleVariant parse_variant(const std::string& text) {
  if (text == "paper") return SaddleVariant::PaperSaddle;
  if (text == "symmetrized") return SaddleVariant::SymmetrizedSaddle;
  throw ValidationError("unknown saddle variant '" + text + "' (expected paper or symmetrized)");
}

ActionCoefficients ActionCoefficients::from_spec(const ModelSpec& spec) noexcept {
  const double sign = spec.kind == ModelKind::TypeOneZero ? 1.0 : -1.0;
  return {2.0 * spec.g, 2.0, sign * 2.0 * spec.g, sign * 8.0, 6.0};
}

PowerSums power_sums(std::span<const double> lambdas) noexcept {
  PowerSums p{0.0, 0.0, 0.0, 0.0};
  for (double x : lambdas) {
    const double x2 = x * x;
    p[0] += x;
    p[1] += x2;
    p[2] += x2 * x;
    p[3] += x2 * x2;
  }
  return p;
}

EigenvalueConfig::EigenvalueConfig(std::vector<double> values) : lambdas(std::move(values)) {
  if (lambdas.size() < 2) throw ValidationError("eigenvalue configuration needs N >= 2");
}

double potential_V(double s, const ModelSpec& spec) noexcept {
  return 2.0 * spec.g * s * s + 2.0 * s * s * s * s;
}

double kernel_U(double s, double t, const ModelSpec& spec) noexcept {
  return ActionCoefficients::from_spec(spec).U(s, t);
}

double trace_action(std::span<const double> lambdas, const ActionCoefficients& coeffs) noexcept {
  const PowerSums p = power_sums(lambdas);
  const double n = static_cast<double>(lambdas.size());
  return n * (coeffs.v2 * p[1] + coeffs.v4 * p[3]) + coeffs.interaction(p[0], p[1], p[2]);
}

double action_eigenvalues(std::span<const double> lambdas, const ActionCoefficients& coeffs) {
  if (lambdas.size() < 2) throw ValidationError("eigenvalue configuration needs N >= 2");
  double log_vandermonde = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      const double d = std::abs(lambdas[i] - lambdas[j]);
      if (d == 0.0) throw DegenerateConfigurationError("coincident eigenvalues: joint density vanishes");
      log_vandermonde += std::log(d);
    }
  }
  return trace_action(lambdas, coeffs) - 2.0 * log_vandermonde;
}

double action_eigenvalues(const EigenvalueConfig& cfg, const ModelSpec& spec) {
  return action_eigenvalues(cfg.lambdas, ActionCoefficients::from_spec(spec));
}

double dirac_action_matrix(const Eigen::MatrixXcd& H, const ModelSpec& spec) {
  if (H.rows() != H.cols() || H.rows() == 0) throw ValidationError("H must be a non-empty square matrix");
  const double deviation = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > 1e-12) {
    throw ValidationError("H is not Hermitian (max |H - H*| = " + std::to_string(deviation) + ")");
  }
  const Eigen::MatrixXcd H2 = H * H;
  const double t1 = H.trace().real();
  const double t2 = H2.trace().real();
  const double t3 = (H2 * H).trace().real();
  const double t4 = (H2 * H2).trace().real();
  const double n = static_cast<double>(H.rows());
  const ActionCoefficients c = ActionCoefficients::from_spec(spec);
  return n * (c.v2 * t2 + c.v4 * t4) + c.interaction(t1, t2, t3);
}

}  // namespace rncg
