#include "xip/channels.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include "xip/csv.hpp"
#include "xip/errors.hpp"

namespace xip {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParamOutOfRange(std::string(what) + " must lie in [0, 1], got " + format_number(v));
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParamOutOfRange(std::string(what) + " must be positive, got " + format_number(v));
  }
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ParamOutOfRange(std::string(what) + " must be non-negative, got " + format_number(v));
  }
}

}  // namespace

KrausChannel::KrausChannel(std::string name, std::vector<Matrix4> operators)
    : name_(std::move(name)), ops_(std::move(operators)) {
  const double err = completeness_error();
  if (!(err <= kCompletenessTolerance)) {
    throw NotCPTP("channel '" + name_ + "' violates completeness by " + format_number(err));
  }
}

double KrausChannel::completeness_error() const {
  Matrix4 sum;
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return max_abs_diff(sum, Matrix4::identity());
}

Matrix4 apply(const KrausChannel& ch, const Matrix4& rho) {
  Matrix4 out;
  for (const auto& k : ch.operators()) out += sandwich(k, rho);
  return out;
}

KrausChannel local_channel(std::string name, std::span<const Matrix2> factors, Qubit side) {
  std::vector<Matrix4> ops;
  ops.reserve(factors.size());
  for (const auto& f : factors) {
    ops.push_back(side == Qubit::A ? kron2(f, pauli::id()) : kron2(pauli::id(), f));
  }
  return KrausChannel(std::move(name), std::move(ops));
}

std::vector<Matrix2> amplitude_factors(double eta) {
  require_unit_interval(eta, "eta");
  return {Matrix2{eta, 0.0, 0.0, 1.0}, Matrix2{0.0, 0.0, std::sqrt(1.0 - eta * eta), 0.0}};
}

std::vector<Matrix2> phase_factors(double gamma) {
  require_unit_interval(gamma, "gamma");
  const double alpha = 0.5 * (1.0 + gamma);
  return {std::sqrt(alpha) * pauli::id(), std::sqrt(1.0 - alpha) * pauli::z()};
}

std::vector<Matrix2> depolarizing_factors(double p) {
  require_unit_interval(p, "p");
  const double w = 0.5 * std::sqrt(p);
  return {std::sqrt(1.0 - 0.75 * p) * pauli::id(), w * pauli::x(), w * pauli::y(), w * pauli::z()};
}

KrausChannel amplitude_channel(double eta, Qubit side) {
  const auto f = amplitude_factors(eta);
  return local_channel("amplitude", f, side);
}

KrausChannel phase_channel(double gamma, Qubit side) {
  const auto f = phase_factors(gamma);
  return local_channel("phase", f, side);
}

KrausChannel depolarizing_channel(double p, Qubit side) {
  const auto f = depolarizing_factors(p);
  return local_channel("depolarizing", f, side);
}

double colored_dephasing_lambda(double nu, double a, double tau) {
  require_nonnegative(nu, "nu");
  require_positive(a, "a");
  require_positive(tau, "tau");
  const double k = 4.0 * a * tau;
  const double envelope = std::exp(-nu);
  if (k > 1.0) {
    const double mu = std::sqrt(k * k - 1.0);
    return envelope * (std::cos(mu * nu) + std::sin(mu * nu) / mu);
  }
  if (k < 1.0) {
    const double m = std::sqrt(1.0 - k * k);
    return envelope * (std::cosh(m * nu) + std::sinh(m * nu) / m);
  }
  return envelope * (1.0 + nu);
}

KrausChannel colored_dephasing_channel_from_lambda(double lambda) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) {
    throw ParamOutOfRange("Lambda must lie in [-1, 1], got " + format_number(lambda));
  }
  const double beta = 0.5 * (1.0 + lambda);
  const Matrix2 m[2] = {std::sqrt(beta) * pauli::id(), std::sqrt(1.0 - beta) * pauli::z()};
  std::vector<Matrix4> ops;
  for (const auto& mi : m)
    for (const auto& mj : m) ops.push_back(kron2(mi, mj));
  return KrausChannel("colored", std::move(ops));
}

KrausChannel colored_dephasing_channel(double nu, double a, double tau) {
  return colored_dephasing_channel_from_lambda(colored_dephasing_lambda(nu, a, tau));
}

double bath_gamma_limit(double bath_exponent) {
  require_positive(bath_exponent - 1.0, "bath exponent - 1");
  return std::tgamma(bath_exponent - 1.0);
}

double bath_gamma(double t, double bath_exponent, double omega_c, bool force_quadrature) {
  require_nonnegative(t, "t");
  require_positive(bath_exponent - 1.0, "bath exponent - 1");
  require_positive(omega_c, "omega_c");
  if (t == 0.0) return 0.0;
  if (!force_quadrature && bath_exponent == 4.0 && omega_c == 1.0) {
    const double t2 = t * t;
    const double q = 1.0 + t2;
    return 2.0 - 2.0 * (1.0 - 3.0 * t2) / (q * q * q);
  }
  // (1 - cos wt) / w^2 J(w), with 1 - cos written as 2 sin^2 to keep small w exact.
  const double scale = std::pow(omega_c, 1.0 - bath_exponent);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double h = std::sin(0.5 * w * t);
    return 2.0 * h * h * std::pow(w, bath_exponent - 2.0) * scale * std::exp(-w / omega_c);
  };
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 30, 1e-12, &err, &l1);
  if (!std::isfinite(value) || err > 1e-10 * std::max(1.0, std::abs(value))) {
    throw QuadratureFailure("bath decoherence integral did not reach tolerance at t=" +
                            format_number(t) + " (error estimate " + format_number(err) + ")");
  }
  return value;
}

KrausChannel common_bath_channel_from_xi4(double xi4) {
  require_unit_interval(xi4, "xi^4");
  const double chi = 0.5 * (xi4 + 1.0);
  const double h = 1.0 / std::sqrt(2.0);
  const double a = std::sqrt(chi);
  const double b = std::sqrt(1.0 - chi);
  return KrausChannel("bath", {Matrix4::diagonal({a, h, h, a}), Matrix4::diagonal({b, h, h, -b})});
}

KrausChannel common_bath_channel(double t, double bath_exponent, double omega_c) {
  return common_bath_channel_from_xi4(std::exp(-4.0 * bath_gamma(t, bath_exponent, omega_c)));
}

XState amplitude_map(const XState& s, double eta) {
  require_unit_interval(eta, "eta");
  const double e2 = eta * eta;
  return {e2 * (1.0 + s.r) - 1.0, s.sB, eta * s.c1, eta * s.c2, e2 * s.c3 + (e2 - 1.0) * s.sB};
}

XState phase_map(const XState& s, double gamma) {
  require_unit_interval(gamma, "gamma");
  return {s.r, s.sB, gamma * s.c1, gamma * s.c2, s.c3};
}

XState depolarizing_map(const XState& s, double p) {
  require_unit_interval(p, "p");
  const double k = 1.0 - p;
  return {k * s.r, s.sB, k * s.c1, k * s.c2, k * s.c3};
}

XState colored_dephasing_map(const XState& s, double lambda) {
  const double l2 = lambda * lambda;
  return {s.r, s.sB, l2 * s.c1, l2 * s.c2, s.c3};
}

XState common_bath_map(const XState& s, double xi4) {
  require_unit_interval(xi4, "xi^4");
  return {s.r, s.sB, 0.5 * ((1.0 + xi4) * s.c1 + (1.0 - xi4) * s.c2),
          0.5 * ((1.0 - xi4) * s.c1 + (1.0 + xi4) * s.c2), s.c3};
}

// ---------------------------------------------------------------------------
// Channel families

ChannelFamily ChannelFamily::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string kind_name(split_fields(spec.substr(0, colon), ',').front());
  ChannelFamily f;
  static const std::map<std::string, ChannelKind> kinds = {
      {"amplitude", ChannelKind::Amplitude}, {"phase", ChannelKind::Phase},
      {"depolarizing", ChannelKind::Depolarizing}, {"colored", ChannelKind::Colored},
      {"bath", ChannelKind::Bath}};
  const auto it = kinds.find(kind_name);
  if (it == kinds.end()) throw UnknownChannel("unknown channel '" + kind_name + "'");
  f.kind = it->second;

  if (colon != std::string_view::npos) {
    for (const auto& kv : split_fields(spec.substr(colon + 1), ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ChannelSpecError("channel parameter '" + kv + "' lacks '='");
      const auto key = split_fields(std::string_view(kv).substr(0, eq), ',').front();
      const auto value = parse_double(split_fields(std::string_view(kv).substr(eq + 1), ',').front());
      if (!value) throw ChannelSpecError("channel parameter '" + kv + "' has a non-numeric value");
      double* slot = nullptr;
      switch (f.kind) {
        case ChannelKind::Amplitude:
        case ChannelKind::Phase:
        case ChannelKind::Depolarizing:
          if (key == "tau") slot = &f.tau;
          break;
        case ChannelKind::Colored:
          if (key == "tau") slot = &f.tau;
          if (key == "a") slot = &f.a;
          break;
        case ChannelKind::Bath:
          if (key == "s") slot = &f.bath_exponent;
          if (key == "wc") slot = &f.omega_c;
          break;
      }
      if (!slot) throw ChannelSpecError("channel '" + kind_name + "' has no parameter '" + key + "'");
      *slot = *value;
    }
  }
  if (!(f.tau > 0.0)) throw ChannelSpecError("tau must be positive");
  if (!(f.a > 0.0)) throw ChannelSpecError("a must be positive");
  if (!(f.bath_exponent > 1.0)) throw ChannelSpecError("bath exponent s must exceed 1");
  if (!(f.omega_c > 0.0)) throw ChannelSpecError("wc must be positive");
  return f;
}

std::string ChannelFamily::name() const {
  switch (kind) {
    case ChannelKind::Amplitude: return "amplitude";
    case ChannelKind::Phase: return "phase";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::Colored: return "colored";
    case ChannelKind::Bath: return "bath";
  }
  return "unknown";
}

std::string ChannelFamily::spec() const {
  switch (kind) {
    case ChannelKind::Amplitude:
    case ChannelKind::Phase:
    case ChannelKind::Depolarizing: return name() + ":tau=" + format_number(tau);
    case ChannelKind::Colored: return name() + ":a=" + format_number(a) + ",tau=" + format_number(tau);
    case ChannelKind::Bath:
      return name() + ":s=" + format_number(bath_exponent) + ",wc=" + format_number(omega_c);
  }
  return name();
}

ChannelParams ChannelFamily::params(double t) const {
  require_nonnegative(t, "t");
  ChannelParams p;
  p.t = t;
  switch (kind) {
    case ChannelKind::Amplitude: p.eta = std::exp(-0.5 * tau * t); break;
    case ChannelKind::Phase:
      p.gamma = std::exp(-0.5 * tau * t);
      p.alpha = 0.5 * (1.0 + p.gamma);
      break;
    case ChannelKind::Depolarizing: p.p = -std::expm1(-tau * t); break;
    case ChannelKind::Colored: {
      const double k = 4.0 * a * tau;
      p.nu = t;
      p.mu = std::sqrt(std::abs(k * k - 1.0));
      p.lambda_nu = colored_dephasing_lambda(t, a, tau);
      p.beta = 0.5 * (1.0 + p.lambda_nu);
      break;
    }
    case ChannelKind::Bath:
      p.gamma_t = bath_gamma(t, bath_exponent, omega_c);
      p.xi4 = std::exp(-4.0 * p.gamma_t);
      p.chi = 0.5 * (p.xi4 + 1.0);
      break;
  }
  return p;
}

KrausChannel ChannelFamily::kraus(double t) const {
  const auto p = params(t);
  switch (kind) {
    case ChannelKind::Amplitude: return amplitude_channel(p.eta);
    case ChannelKind::Phase: return phase_channel(p.gamma);
    case ChannelKind::Depolarizing: return depolarizing_channel(p.p);
    case ChannelKind::Colored: return colored_dephasing_channel_from_lambda(p.lambda_nu);
    case ChannelKind::Bath: return common_bath_channel_from_xi4(p.xi4);
  }
  throw UnknownChannel("unknown channel kind");
}

XState ChannelFamily::map(const XState& s, double t) const {
  const auto p = params(t);
  switch (kind) {
    case ChannelKind::Amplitude: return amplitude_map(s, p.eta);
    case ChannelKind::Phase: return phase_map(s, p.gamma);
    case ChannelKind::Depolarizing: return depolarizing_map(s, p.p);
    case ChannelKind::Colored: return colored_dephasing_map(s, p.lambda_nu);
    case ChannelKind::Bath: return common_bath_map(s, p.xi4);
  }
  throw UnknownChannel("unknown channel kind");
}

double ChannelFamily::default_horizon() const {
  switch (kind) {
    case ChannelKind::Colored: return 3.0;
    case ChannelKind::Bath: return 5.0;
    default: return 5.0 / tau;
  }
}

}  // namespace xip
