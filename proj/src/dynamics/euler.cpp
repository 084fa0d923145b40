#include "qsym/dynamics/euler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qsym/rigid/rigid.hpp"

namespace qsym::dynamics {

namespace {

void reskew(std::vector<double>& P, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    P[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (P[i * n + j] - P[j * n + i]);
      P[i * n + j] = v;
      P[j * n + i] = -v;
    }
  }
}

std::vector<double> upper_of(const std::vector<double>& P, std::size_t n) {
  std::vector<double> u;
  u.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u.push_back(P[i * n + j]);
  return u;
}

void append_number(std::string& line, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

}  // namespace

FlowState FlowState::from_upper(std::vector<double> lambda, const std::vector<double>& upper) {
  FlowState s;
  s.n = lambda.size();
  if (upper.size() != s.n * (s.n - 1) / 2) throw std::invalid_argument("expected n(n-1)/2 momentum entries");
  s.lambda = std::move(lambda);
  s.P.assign(s.n * s.n, 0.0);
  std::size_t a = 0;
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j, ++a) {
      s.P[i * s.n + j] = upper[a];
      s.P[j * s.n + i] = -upper[a];
    }
  return s;
}

std::vector<double> FlowState::upper() const { return upper_of(P, n); }

std::vector<double> euler_rhs(const std::vector<double>& P, const std::vector<double>& lambda) {
  const std::size_t n = lambda.size();
  if (P.size() != n * n) throw std::invalid_argument("momentum matrix size does not match the moments");
  for (double l : lambda)
    if (!(l > 0.0)) throw std::invalid_argument("moments must be positive");
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        sum += P[i * n + k] * P[k * n + j] / ((lambda[i] + lambda[k]) * (lambda[k] + lambda[j]));
      }
      const double v = -(lambda[i] - lambda[j]) * sum;
      out[i * n + j] = v;
      out[j * n + i] = -v;
    }
  return out;
}

NonFiniteError::NonFiniteError(std::size_t step)
    : std::runtime_error("non-finite state at step " + std::to_string(step)), step_(step) {}

Trajectory integrate(const FlowState& initial, const IntegrateOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (opts.stride == 0) throw std::invalid_argument("stride must be positive");
  const std::size_t n = initial.n;
  const std::size_t m = n * n;
  std::vector<double> P = initial.P;
  reskew(P, n);
  Trajectory traj;
  traj.n = n;
  traj.times.push_back(initial.t);
  traj.upper.push_back(upper_of(P, n));

  const double dt = opts.dt;
  std::vector<double> tmp(m);
  for (std::size_t step = 1; step <= opts.steps; ++step) {
    auto k1 = euler_rhs(P, initial.lambda);
    for (std::size_t a = 0; a < m; ++a) tmp[a] = P[a] + 0.5 * dt * k1[a];
    auto k2 = euler_rhs(tmp, initial.lambda);
    for (std::size_t a = 0; a < m; ++a) tmp[a] = P[a] + 0.5 * dt * k2[a];
    auto k3 = euler_rhs(tmp, initial.lambda);
    for (std::size_t a = 0; a < m; ++a) tmp[a] = P[a] + dt * k3[a];
    auto k4 = euler_rhs(tmp, initial.lambda);
    for (std::size_t a = 0; a < m; ++a) P[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    reskew(P, n);
    if (!std::all_of(P.begin(), P.end(), [](double v) { return std::isfinite(v); })) throw NonFiniteError(step);
    if (step % opts.stride == 0 || step == opts.steps) {
      traj.times.push_back(initial.t + static_cast<double>(step) * dt);
      traj.upper.push_back(upper_of(P, n));
    }
  }
  return traj;
}

FloatInvariant::FloatInvariant(std::string label, const poisson::LiePoissonPoly<Rational>& poly)
    : label_(std::move(label)) {
  for (const auto& [e, c] : poly.terms()) terms_.emplace_back(e, c.to_double());
}

double FloatInvariant::operator()(const std::vector<double>& upper) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (std::size_t a = 0; a < upper.size(); ++a)
      for (unsigned k = 0; k < e[a]; ++k) term *= upper[a];
    sum += term;
  }
  return sum;
}

std::vector<DriftEntry> conservation_report(const Trajectory& traj, const std::vector<FloatInvariant>& invariants) {
  std::vector<DriftEntry> out;
  if (traj.upper.empty()) return out;
  for (const auto& inv : invariants) {
    DriftEntry d;
    d.label = inv.label();
    d.initial = inv(traj.upper.front());
    double worst = 0.0;
    for (const auto& u : traj.upper) worst = std::max(worst, std::abs(inv(u) - d.initial));
    d.drift = worst / std::max(1.0, std::abs(d.initial));
    out.push_back(d);
  }
  return out;
}

std::vector<FloatInvariant> rigid_invariants(const std::vector<Rational>& lambda) {
  const son::SoAlgebra g(lambda.size());
  const auto spec = son::MomentSpec::explicit_values(lambda);
  std::vector<FloatInvariant> out;
  out.emplace_back("H", rigid::hamiltonian<Rational>(g, spec));
  for (const auto& idx : rigid::manakov_indices(lambda.size()))
    out.emplace_back(idx.label(), rigid::manakov_integral<Rational>(g, idx, spec));
  return out;
}

void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<FloatInvariant>& observables) {
  const std::size_t n = traj.n;
  std::string line = "t";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) line += ",P_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  for (const auto& o : observables) line += "," + o.label();
  out << line << '\n';
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    line.clear();
    append_number(line, traj.times[s]);
    for (double v : traj.upper[s]) {
      line += ',';
      append_number(line, v);
    }
    for (const auto& o : observables) {
      line += ',';
      append_number(line, o(traj.upper[s]));
    }
    out << line << '\n';
  }
}

}  // namespace qsym::dynamics
