#pragma once

// Decoherence channels on two qubits, each available both as a Kraus set and as
// the equivalent closed-form map on X-state parameters.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xip/qmat.hpp"
#include "xip/states.hpp"

namespace xip {

inline constexpr double kCompletenessTolerance = 1e-10;

class KrausChannel {
 public:
  // Throws NotCPTP when max|sum K^H K - 1| exceeds kCompletenessTolerance.
  KrausChannel(std::string name, std::vector<Matrix4> operators);

  const std::string& name() const { return name_; }
  const std::vector<Matrix4>& operators() const { return ops_; }

  double completeness_error() const;

 private:
  std::string name_;
  std::vector<Matrix4> ops_;
};

Matrix4 apply(const KrausChannel& ch, const Matrix4& rho);

// Lifts single-qubit Kraus factors to the two-qubit space (K x 1 or 1 x K).
KrausChannel local_channel(std::string name, std::span<const Matrix2> factors, Qubit side);

// Single-qubit Kraus factors of the one-sided channels.
std::vector<Matrix2> amplitude_factors(double eta);
std::vector<Matrix2> phase_factors(double gamma);
std::vector<Matrix2> depolarizing_factors(double p);

// Amplitude damping towards |1>: K1 = diag(eta, 1), K2 = [[0, 0], [sqrt(1 - eta^2), 0]].
KrausChannel amplitude_channel(double eta, Qubit side = Qubit::A);
// K1 = sqrt(alpha) 1, K2 = sqrt(1 - alpha) sz with alpha = (1 + gamma) / 2, so the
// coherences of the acted-on qubit are multiplied by gamma.
KrausChannel phase_channel(double gamma, Qubit side = Qubit::A);
KrausChannel depolarizing_channel(double p, Qubit side = Qubit::A);

// Lambda(nu) = e^{-nu} [cos(mu nu) + sin(mu nu) / mu], mu = sqrt((4 a tau)^2 - 1),
// continued analytically (cosh/sinh) for 4 a tau < 1.
double colored_dephasing_lambda(double nu, double a, double tau);
// Identical colored dephasing on both qubits: operators M_i x M_j with
// M1 = sqrt(beta) 1, M2 = sqrt(1 - beta) sz, beta = (1 + Lambda) / 2.
KrausChannel colored_dephasing_channel(double nu, double a, double tau);
KrausChannel colored_dephasing_channel_from_lambda(double lambda);

// Decoherence function of the common bosonic bath with spectral density
// J(w) = w^s / wc^(s-1) e^{-w/wc}. Closed form for s = 4, wc = 1; adaptive
// Gauss-Kronrod quadrature otherwise (or when force_quadrature is set).
double bath_gamma(double t, double bath_exponent, double omega_c, bool force_quadrature = false);
// lim_{t->inf} Gamma(t) = Gamma_fn(s - 1).
double bath_gamma_limit(double bath_exponent);
KrausChannel common_bath_channel(double t, double bath_exponent, double omega_c);
KrausChannel common_bath_channel_from_xi4(double xi4);

// Closed-form coefficient maps (parameter level), valid for any X state input.
XState amplitude_map(const XState& s, double eta);
XState phase_map(const XState& s, double gamma);
XState depolarizing_map(const XState& s, double p);
XState colored_dephasing_map(const XState& s, double lambda);
XState common_bath_map(const XState& s, double xi4);

enum class ChannelKind { Amplitude, Phase, Depolarizing, Colored, Bath };

// Parameters derived for one channel family at one time. Fields that do not
// apply to the family stay at their identity values.
struct ChannelParams {
  double t = 0.0;        // physical time (nu for the colored family)
  double eta = 1.0;      // amplitude: e^{-tau t / 2}
  double gamma = 1.0;    // phase: e^{-tau t / 2}
  double alpha = 1.0;    // phase Kraus weight (1 + gamma) / 2
  double p = 0.0;        // depolarizing: 1 - e^{-tau t}
  double nu = 0.0;       // colored: dimensionless time
  double mu = 0.0;       // colored: sqrt(|(4 a tau)^2 - 1|)
  double lambda_nu = 1.0;
  double beta = 1.0;     // colored Kraus weight (1 + Lambda) / 2
  double gamma_t = 0.0;  // bath decoherence function
  double xi4 = 1.0;      // e^{-4 Gamma}
  double chi = 1.0;      // (xi4 + 1) / 2
};

// A parametric channel family, parsed from specs such as "amplitude:tau=1",
// "phase:tau=1", "depolarizing:tau=1", "colored:a=1,tau=0.5", "bath:s=4,wc=1".
struct ChannelFamily {
  ChannelKind kind = ChannelKind::Amplitude;
  double tau = 1.0;
  double a = 1.0;
  double bath_exponent = 4.0;
  double omega_c = 1.0;

  // Throws UnknownChannel for an unrecognized family and ChannelSpecError for bad keys/values.
  static ChannelFamily parse(std::string_view spec);
  std::string spec() const;
  std::string name() const;

  ChannelParams params(double t) const;
  KrausChannel kraus(double t) const;
  XState map(const XState& s, double t) const;
  bool preserves_bell_diagonal() const { return kind != ChannelKind::Amplitude; }
  // Upper end of the default evolution grid.
  double default_horizon() const;
};

}  // namespace xip
