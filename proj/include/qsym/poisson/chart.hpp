#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsym/core/matrix.hpp"
#include "qsym/core/sampler.hpp"
#include "qsym/poisson/lie_poisson.hpp"
#include "qsym/poisson/phase_poly.hpp"
#include "qsym/report/report.hpp"
#include "qsym/son/so_algebra.hpp"

namespace qsym::poisson {

// Point of T*SO(n) in the chart (S, P^L) with X = cayley(S) and P^R = X P^L X^T.
// Chart coordinates are ordered S_ab (pair order) then P^L_ab.
struct RigidPoint {
  son::SkewMatrix<Rational> s;
  son::SkewMatrix<Rational> left;
  Matrix<Rational> x;
  son::SkewMatrix<Rational> right;
  std::vector<son::SkewMatrix<Rational>> dright_ds;
  std::vector<son::SkewMatrix<Rational>> dright_dleft;
};

RigidPoint make_rigid_point(const son::SoAlgebra& g, son::SkewMatrix<Rational> s, son::SkewMatrix<Rational> left);
RigidPoint sample_rigid_point(const son::SoAlgebra& g, Sampler& sampler, long bound = kDefaultSampleBound);

std::vector<Rational> poly_gradient(const LiePoissonPoly<Rational>& f, const std::vector<Rational>& at);

// Gradient of f in the 2N chart coordinates.
std::vector<Rational> rigid_gradient(const son::SoAlgebra& g, const RigidFunction<Rational>& f, const RigidPoint& pt);

std::size_t jacobian_rank(const son::SoAlgebra& g, const std::vector<RigidFunction<Rational>>& fs, const RigidPoint& pt);
std::size_t jacobian_rank(const std::vector<PhasePoly>& fs, const PhasePoint& pt);

// Computes every bracket {a_i, b_j} (skipping i == j when same_list) and reports the nonzero
// ones. Elements are (label, value) pairs.
template <class F, class Bracket>
report::Check involution_check(const std::string& id, const std::string& claim,
                               const std::vector<std::pair<std::string, F>>& a,
                               const std::vector<std::pair<std::string, F>>& b, Bracket bracket,
                               bool same_list = false) {
  report::Stopwatch sw;
  std::string witness;
  std::size_t nonzero = 0, computed = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = same_list ? i + 1 : 0; j < b.size(); ++j) {
      auto v = bracket(a[i].second, b[j].second);
      ++computed;
      if (is_zero(v)) continue;
      ++nonzero;
      if (witness.size() < 4000) {
        std::string s = to_string(v);
        if (s.size() > 600) s = s.substr(0, 600) + "...";
        witness += "{" + a[i].first + ", " + b[j].first + "} = " + s + "; ";
      }
    }
  if (nonzero == 0) witness = std::to_string(computed) + " brackets, all zero";
  auto c = report::identity_check(id, claim, nonzero == 0, witness);
  c.elapsed_ms = sw.ms();
  return c;
}

}  // namespace qsym::poisson
