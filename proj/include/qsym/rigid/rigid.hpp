#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsym/core/ratfunc.hpp"
#include "qsym/core/sampler.hpp"
#include "qsym/poisson/chart.hpp"
#include "qsym/poisson/lie_poisson.hpp"
#include "qsym/report/report.hpp"
#include "qsym/son/moments.hpp"
#include "qsym/son/so_algebra.hpp"

namespace qsym::rigid {

using poisson::LiePoissonPoly;
using poisson::RigidFunction;
using son::MomentSpec;
using son::SoAlgebra;

// Coefficient c_{k, k-2l} of the trace generating polynomial; degree 2l in the momenta.
struct ManakovIndex {
  std::size_t k = 2;
  std::size_t l = 1;
  std::size_t j() const { return k - 2 * l; }
  std::string label() const;  // "c_5_1"
  friend bool operator==(const ManakovIndex& a, const ManakovIndex& b) { return a.k == b.k && a.l == b.l; }
};

// k = 2..n, l = 1..k/2, in lexicographic order.
std::vector<ManakovIndex> manakov_indices(std::size_t n);

// 1/2 sum_{i<j} P_ij^2 / (lambda_i + lambda_j)
template <class K>
LiePoissonPoly<K> hamiltonian(const SoAlgebra& g, const MomentSpec& spec);

// Closed form of {H, P_ij}: (l_i - l_j) sum_k P_ik P_kj / ((l_i + l_k)(l_k + l_j)).
template <class K>
LiePoissonPoly<K> euler_rhs(const SoAlgebra& g, const MomentSpec& spec, std::size_t i, std::size_t j);

// Complete homogeneous symmetric polynomial of degree k - 2l in the squares of the moments
// at the given indices.
template <class K>
K manakov_coefficient(const ManakovIndex& idx, const std::vector<std::size_t>& indices, const MomentSpec& spec);

// (1/4l) sum over index cycles of coefficient * P_{i1 i2} P_{i2 i3} ... P_{i2l i1}.
template <class K>
LiePoissonPoly<K> manakov_integral(const SoAlgebra& g, const ManakovIndex& idx, const MomentSpec& spec);

// Standard Casimirs of the full momentum matrix, then those of each diagonal block of
// equal moments (only when there is more than one block).
template <class K>
std::vector<RigidFunction<K>> z_lambda(const SoAlgebra& g, const MomentSpec& spec);

// Weights beta_2..beta_n with H = sum_k beta_k c_{k,k-2}; std::nullopt if no solution.
template <class K>
std::optional<std::vector<K>> hamiltonian_combination(const SoAlgebra& g, const MomentSpec& spec);

struct Counts {
  std::size_t rank = 0;  // rank of B^lambda
  std::size_t k = 0;     // centrality of B^lambda
  std::size_t r = 0;     // defect of integrability
  std::size_t kbar = 0;  // central elements of the full integrable set
  friend bool operator==(const Counts& a, const Counts& b) {
    return a.rank == b.rank && a.k == b.k && a.r == b.r && a.kbar == b.kbar;
  }
};
std::string to_string(const Counts& c);

// Closed forms in terms of the partition of equal moments.
Counts centrality_defect(const std::vector<std::size_t>& partition);
// Same counts from exact kernel dimensions of the adjoint maps at a random momentum.
Counts centrality_defect_from_kernels(const std::vector<std::size_t>& partition, Sampler& sampler);
// Same counts from the Jacobian of B^lambda and its bracket matrix at a random chart point.
Counts centrality_defect_from_jacobian(const std::vector<std::size_t>& partition, Sampler& sampler);

// Partitions of n in ascending parts, ordered by number of parts and then lexicographically.
std::vector<std::vector<std::size_t>> partitions(std::size_t n);

struct TableRow {
  std::size_t n = 0;
  std::vector<std::size_t> q;
  Counts counts;
};
// Every partition of every n in 3..max_n, closed forms.
std::vector<TableRow> rigid_table(std::size_t max_n = 6);
std::string partition_label(const std::vector<std::size_t>& q);  // "(1,2,3)"

struct RigidBodySet {
  std::vector<RigidFunction<Rational>> z;
  std::vector<RigidFunction<Rational>> manakov;  // central Manakov integrals
  std::vector<RigidFunction<Rational>> noncentral;
  Counts counts;
  std::vector<RigidFunction<Rational>> central() const;
  std::vector<RigidFunction<Rational>> all() const;
};

// Greedy selection by rank growth at the point: Manakov integrals in index order, then
// right momenta and block momenta in pair order. Needs explicit moments. Throws
// std::runtime_error when the target rank is not reached.
RigidBodySet assemble_integrable_set(const SoAlgebra& g, const MomentSpec& spec, const poisson::RigidPoint& pt);

// Bracket of functions on T*SO(n); left and right momenta commute.
template <class K>
LiePoissonPoly<K> rigid_bracket(const SoAlgebra& g, const RigidFunction<K>& a, const RigidFunction<K>& b);

enum class Mode { Symbolic, Sampled };

struct ClassicalRigidConfig {
  std::size_t n = 3;
  // Partition of equal moments; empty means pairwise distinct moments.
  std::vector<std::size_t> q;
  // Explicit moments; when set they override q and every check runs at these values.
  std::vector<Rational> lambda;
  Mode mode = Mode::Symbolic;
  std::size_t samples = 3;
  std::uint64_t seed = 1;
  // In symbolic mode, pairs of quartic or higher integrals are sampled from this n on.
  std::size_t sampled_from_n = 6;
};

report::VerificationReport verify_classical_rigid(const ClassicalRigidConfig& cfg);

// Closed forms against both kernel routes for every row, at `samples` random points.
report::VerificationReport verify_rigid_table(std::size_t max_n, std::size_t samples, std::uint64_t seed);

}  // namespace qsym::rigid
