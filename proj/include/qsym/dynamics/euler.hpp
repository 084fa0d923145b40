#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsym/core/exponent.hpp"
#include "qsym/core/rational.hpp"
#include "qsym/poisson/lie_poisson.hpp"

namespace qsym::dynamics {

// Momentum matrix of the n-dimensional rigid body in binary64, dense row-major.
struct FlowState {
  std::size_t n = 0;
  std::vector<double> P;  // n * n, skew-symmetric
  double t = 0.0;
  std::vector<double> lambda;

  // Builds the skew matrix from its upper entries in pair order (1,2), (1,3), ..., (n-1,n).
  static FlowState from_upper(std::vector<double> lambda, const std::vector<double>& upper);
  std::vector<double> upper() const;
  double at(std::size_t i, std::size_t j) const { return P[i * n + j]; }
};

// dP_ij/dt = {P_ij, H} = -(l_i - l_j) sum_k P_ik P_kj / ((l_i + l_k)(l_k + l_j)), dense row-major.
// Requires every moment positive.
std::vector<double> euler_rhs(const std::vector<double>& P, const std::vector<double>& lambda);

class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(std::size_t step);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct IntegrateOptions {
  double dt = 1e-3;
  std::size_t steps = 0;
  // Record every stride-th step; step 0 and the last step are always recorded.
  std::size_t stride = 1;
};

struct Trajectory {
  std::size_t n = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> upper;  // upper entries per recorded sample
};

// Classical RK4 with re-skew-symmetrization after every step. Throws NonFiniteError carrying
// the first step whose state is not finite.
Trajectory integrate(const FlowState& initial, const IntegrateOptions& opts);

// Polynomial in the upper momentum entries with binary64 coefficients.
class FloatInvariant {
 public:
  FloatInvariant(std::string label, const poisson::LiePoissonPoly<Rational>& poly);
  const std::string& label() const { return label_; }
  double operator()(const std::vector<double>& upper) const;

 private:
  std::string label_;
  std::vector<std::pair<Exponent, double>> terms_;
};

struct DriftEntry {
  std::string label;
  double initial = 0.0;
  // max_t |I(t) - I(0)| / max(1, |I(0)|)
  double drift = 0.0;
};

std::vector<DriftEntry> conservation_report(const Trajectory& traj, const std::vector<FloatInvariant>& invariants);

// H and the Manakov integrals c_{k,k-2l}, k = 2..n, at explicit moments.
std::vector<FloatInvariant> rigid_invariants(const std::vector<Rational>& lambda);

// Header t,P_1_2,...,P_{n-1}_n, then one column per observable. Shortest round-trip decimals,
// independent of the locale.
void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<FloatInvariant>& observables);

}  // namespace qsym::dynamics
