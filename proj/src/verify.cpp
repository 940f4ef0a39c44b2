#include "xip/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>

#include "xip/channels.hpp"
#include "xip/csv.hpp"
#include "xip/dynamics.hpp"
#include "xip/ip.hpp"
#include "xip/random.hpp"
#include "xip/states.hpp"

namespace xip {

namespace {

class Suite {
 public:
  Suite(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
  }

  void record(double discrepancy) {
    ++r_.checks;
    if (!(discrepancy <= r_.tolerance)) r_.passed = false;
    if (std::isnan(discrepancy)) {
      r_.worst = discrepancy;
    } else if (!std::isnan(r_.worst)) {
      r_.worst = std::max(r_.worst, discrepancy);
    }
  }
  void note(std::string text) { r_.note = std::move(text); }
  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

std::vector<ChannelFamily> all_families() {
  std::vector<ChannelFamily> out;
  for (const char* spec : {"amplitude:tau=1", "phase:tau=1", "depolarizing:tau=1", "colored:a=1,tau=0.5",
                           "bath:s=4,wc=1"}) {
    out.push_back(ChannelFamily::parse(spec));
  }
  return out;
}

// Random single-qubit channel: K_i = G_i S^{-1/2} with S = sum G_i^H G_i.
std::vector<Matrix2> random_qubit_channel(StateSampler& rng, int count) {
  std::vector<Matrix2> g;
  Matrix2 s;
  for (int i = 0; i < count; ++i) {
    g.push_back(rng.ginibre2());
    s += g.back().adjoint() * g.back();
  }
  const auto eig = hermitian_eigen(s);
  Matrix2 inv_sqrt;
  for (std::size_t k = 0; k < 2; ++k) {
    const Vector<2> v = eig.vector(k);
    const double w = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) inv_sqrt(i, j) += w * v[i] * std::conj(v[j]);
  }
  for (auto& k : g) k = k * inv_sqrt;
  return g;
}

Matrix4 random_diagonal_state(StateSampler& rng) {
  std::array<double, 4> d{};
  double sum = 0.0;
  for (auto& x : d) {
    x = rng.uniform(0.0, 1.0);
    sum += x;
  }
  for (auto& x : d) x /= sum;
  return Matrix4::diagonal(d);
}

double reduced_a_determinant(const Matrix4& rho) {
  const Complex a00 = rho(0, 0) + rho(1, 1);
  const Complex a11 = rho(2, 2) + rho(3, 3);
  const Complex a01 = rho(0, 2) + rho(1, 3);
  return (a00 * a11).real() - std::norm(a01);
}

SuiteResult route_agreement(const VerifyOptions& opts) {
  Suite suite("route agreement", 1e-7);
  StateSampler rng(opts.seed + 1);
  for (int i = 0; i < opts.samples; ++i) {
    const XState s = rng.x_state();
    const Matrix4 rho = to_density_matrix(s);
    const double closed = ip_xstate(s).value;
    const double general = ip_general(rho);
    const double brute = ip_bruteforce(rho).value;
    suite.record(std::max({std::abs(closed - general), std::abs(closed - brute), std::abs(general - brute)}));
  }
  // Bell-diagonal family: norm formula and corrected diagonal, tighter tolerance.
  const double sign = opts.canary ? -1.0 : 1.0;
  double bell_worst = 0.0;
  for (int i = 0; i < opts.samples; ++i) {
    const XState s = rng.bell_diagonal();
    const CorrelationMatrix c = CorrelationMatrix::from(s);
    if (c.op_norm_sq >= 1.0 - 1e-9) continue;
    const Matrix4 rho = to_density_matrix(s);
    const MMatrix m = m_matrix(rho);
    const IPBranches b = bell_branches(c);
    double d = std::abs(detail::bell_norm_formula(c, sign) - m.smallest_eigenvalue);
    d = std::max(d, std::abs(b.m11 - m.entries[0][0]));
    d = std::max(d, std::abs(b.m22 - m.entries[1][1]));
    d = std::max(d, std::abs(b.m33 - m.entries[2][2]));
    bell_worst = std::max(bell_worst, d);
    suite.record(d > 1e-9 ? std::max(d, 1.0) : d);
  }
  suite.note("bell-diagonal worst " + format_number(bell_worst, 3));
  return suite.result();
}

SuiteResult quadratic_form(const VerifyOptions& opts) {
  Suite suite("quadratic form", 1e-9);
  StateSampler rng(opts.seed + 2);
  for (int i = 0; i < opts.samples; ++i) {
    const Matrix4 rho = rng.density_matrix();
    const auto n = ProbeDirection::make(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1) + 1e-3);
    const MMatrix m = m_matrix(rho);
    double form = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) form += n.n[a] * m.entries[a][b] * n.n[b];
    suite.record(std::abs(qfi(rho, n) / 4.0 - form));
  }
  return suite.result();
}

SuiteResult cptp_completeness(const VerifyOptions& opts) {
  Suite suite("CPTP completeness", kCompletenessTolerance);
  StateSampler rng(opts.seed + 3);
  const auto families = all_families();
  std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
  for (int i = 0; i < std::min(opts.samples, 100); ++i) times.push_back(rng.uniform(0.0, 5.0));
  for (const auto& f : families) {
    for (double t : times) suite.record(f.kraus(t).completeness_error());
  }
  for (double t : times) {
    const double eta = std::exp(-t / 2.0);
    suite.record(amplitude_channel(eta, Qubit::B).completeness_error());
    suite.record(phase_channel(eta, Qubit::B).completeness_error());
    suite.record(depolarizing_channel(1.0 - std::exp(-t), Qubit::B).completeness_error());
  }
  return suite.result();
}

SuiteResult map_vs_kraus(const VerifyOptions& opts) {
  Suite suite("coefficient map vs Kraus", 1e-11);
  StateSampler rng(opts.seed + 4);
  for (const auto& f : all_families()) {
    for (int i = 0; i < opts.samples; ++i) {
      const XState s = rng.x_state();
      const double t = rng.uniform(0.0, f.default_horizon());
      const Matrix4 via_kraus = apply(f.kraus(t), to_density_matrix(s));
      suite.record(max_abs_diff(via_kraus, to_density_matrix(f.map(s, t))));
    }
  }
  return suite.result();
}

SuiteResult classical_states(const VerifyOptions& opts) {
  Suite suite("property (i) classical", 1e-10);
  StateSampler rng(opts.seed + 5);
  for (int i = 0; i < std::min(opts.samples, 200); ++i) {
    const Matrix4 rho = random_diagonal_state(rng);
    suite.record(std::abs(ip_general(rho)));
    const XState s = from_density_matrix(rho);
    suite.record(std::abs(interferometric_power(s).value));
  }
  return suite.result();
}

SuiteResult local_unitary(const VerifyOptions& opts) {
  Suite suite("property (ii) local unitary", 1e-9);
  StateSampler rng(opts.seed + 6);
  for (int i = 0; i < std::min(opts.samples, 200); ++i) {
    const Matrix4 rho = rng.density_matrix();
    const Matrix4 u = kron2(rng.unitary2(), rng.unitary2());
    suite.record(std::abs(ip_general(sandwich(u, rho)) - ip_general(rho)));
  }
  return suite.result();
}

SuiteResult b_side_monotonicity(const VerifyOptions& opts) {
  Suite suite("property (iii) B-side monotonicity", 1e-9);
  StateSampler rng(opts.seed + 7);
  for (int i = 0; i < std::min(opts.samples, 200); ++i) {
    const Matrix4 rho = rng.density_matrix();
    const auto factors = random_qubit_channel(rng, 2 + i % 3);
    const KrausChannel ch = local_channel("random", factors, Qubit::B);
    suite.record(std::max(0.0, ip_general(apply(ch, rho)) - ip_general(rho)));
  }
  return suite.result();
}

SuiteResult pure_states(const VerifyOptions& opts) {
  Suite suite("property (iv) pure states", 1e-9);
  const double s = 1.0 / std::sqrt(2.0);
  Matrix4 phi_plus;
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u}) phi_plus(i, j) = s * s;
  suite.record(std::abs(ip_general(phi_plus) - 1.0));

  StateSampler rng(opts.seed + 8);
  std::vector<std::pair<double, double>> points;  // (Schmidt product, IP)
  for (int i = 0; i < std::min(opts.samples, 200); ++i) {
    const Matrix4 rho = rng.pure_state();
    points.emplace_back(reduced_a_determinant(rho), ip_general(rho));
  }
  std::sort(points.begin(), points.end());
  for (std::size_t k = 1; k < points.size(); ++k) {
    suite.record(std::max(0.0, points[k - 1].second - points[k].second));
  }
  return suite.result();
}

SuiteResult branch_order(const VerifyOptions& opts) {
  Suite suite("branch order", 0.0);
  StateSampler rng(opts.seed + 9);
  for (int i = 0; i < opts.samples; ++i) {
    const XState s = rng.bell_diagonal();
    const CorrelationMatrix c = CorrelationMatrix::from(s);
    if (c.op_norm_sq >= 1.0 - 1e-9) continue;
    const IPBranches b = bell_branches(c);
    const bool m_order = b.m11 >= b.m22 - 1e-12;
    const bool c_order = std::abs(s.c1) <= std::abs(s.c2) + 1e-12;
    const bool near_tie = std::abs(std::abs(s.c1) - std::abs(s.c2)) <= 1e-9;
    suite.record(m_order == c_order || near_tie ? 0.0 : 1.0);
  }
  return suite.result();
}

SuiteResult value_range(const VerifyOptions& opts) {
  Suite suite("range", 1e-12);
  StateSampler rng(opts.seed + 10);
  for (int i = 0; i < opts.samples; ++i) {
    const double v = ip_general(i % 2 == 0 ? rng.density_matrix() : rng.pure_state());
    suite.record(std::max({0.0, -v, v - 1.0}));
  }
  return suite.result();
}

SuiteResult predictor_agreement(const VerifyOptions& opts) {
  Suite suite("predictor agreement", 1e-3);
  StateSampler rng(opts.seed + 11);
  const int runs = std::clamp(opts.samples / 50, 2, 20);
  double phase_worst = 0.0;

  const ChannelFamily phase = ChannelFamily::parse("phase:tau=1");
  for (int i = 0; i < runs; ++i) {
    const XState s = rng.bell_diagonal();
    const auto t0 = predict_phase_t0(CorrelationMatrix::from(s), phase.tau);
    const auto events = detect_kinks(evolve(phase, s, TimeGrid{phase.default_horizon(), 401}.times()));
    if (!t0 || *t0 > 0.95 * phase.default_horizon()) {
      if (!t0) suite.record(events.empty() ? 0.0 : 1.0);
      continue;
    }
    const double d = events.empty() ? 1.0 : std::abs(events.front().t_star - *t0);
    phase_worst = std::max(phase_worst, d);
    suite.record(d > 1e-6 ? std::max(d, 1.0) : d);
  }

  for (int i = 0; i < runs; ++i) {
    ChannelFamily colored = ChannelFamily::parse("colored:a=1,tau=0.5");
    colored.a = rng.uniform(0.2, 2.0);
    const XState s = rng.bell_diagonal();
    const auto nu = predict_colored_nu(CorrelationMatrix::from(s), colored.a, colored.tau);
    if (!nu || *nu > 0.95 * colored.default_horizon()) continue;
    const auto events = detect_kinks(evolve(colored, s, TimeGrid{colored.default_horizon(), 601}.times()));
    suite.record(events.empty() ? 1.0 : std::abs(events.front().t_star - *nu));
  }

  const ChannelFamily bath = ChannelFamily::parse("bath:s=4,wc=1");
  for (int i = 0; i < runs; ++i) {
    const XState s = rng.bell_diagonal();
    if (s.c1 == s.c2) continue;
    const auto t = predict_bath_kink(CorrelationMatrix::from(s), bath.bath_exponent, bath.omega_c);
    const auto events = detect_kinks(evolve(bath, s, TimeGrid{bath.default_horizon(), 501}.times()));
    if (!t) {
      suite.record(events.empty() ? 0.0 : 1.0);
    } else if (*t < 0.95 * bath.default_horizon()) {
      suite.record(events.empty() ? 1.0 : std::abs(events.front().t_star - *t));
    }
  }

  const ChannelFamily depolarizing = ChannelFamily::parse("depolarizing:tau=1");
  for (int i = 0; i < std::min(opts.samples, 50); ++i) {
    const XState s = rng.bell_diagonal();
    const auto events =
        detect_kinks(evolve(depolarizing, s, TimeGrid{depolarizing.default_horizon(), 501}.times()));
    suite.record(events.empty() ? 0.0 : 1.0);
  }
  suite.note("phase worst " + format_number(phase_worst, 3));
  return suite.result();
}

SuiteResult bath_quadrature(const VerifyOptions&) {
  Suite suite("bath quadrature", 1e-9);
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    suite.record(std::abs(bath_gamma(t, 4.0, 1.0, true) - bath_gamma(t, 4.0, 1.0, false)));
  }
  return suite.result();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport run_verification(const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  using SuiteFn = std::function<SuiteResult(const VerifyOptions&)>;
  const std::vector<SuiteFn> suites{route_agreement,    quadratic_form,  cptp_completeness, map_vs_kraus,
                                    classical_states,   local_unitary,   b_side_monotonicity, pure_states,
                                    branch_order,       value_range,     predictor_agreement, bath_quadrature};
  for (const auto& fn : suites) report.suites.push_back(fn(opts));
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  out << std::left << std::setw(36) << "suite" << std::setw(8) << "checks" << std::setw(14) << "worst"
      << std::setw(12) << "tolerance" << "result\n";
  for (const auto& s : report.suites) {
    out << std::left << std::setw(36) << s.name << std::setw(8) << s.checks << std::setw(14)
        << format_number(s.worst, 4) << std::setw(12) << format_number(s.tolerance, 3)
        << (s.passed ? "PASS" : "FAIL");
    if (!s.note.empty()) out << "  (" << s.note << ")";
    out << '\n';
  }
  for (const auto& s : report.suites) {
    if (!s.passed) out << "FAILED: " << s.name << '\n';
  }
  out << (report.passed() ? "all suites passed" : "verification failed") << " in "
      << format_number(report.seconds, 3) << " s\n";
}

}  // namespace xip
