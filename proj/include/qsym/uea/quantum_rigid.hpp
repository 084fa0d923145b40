#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qsym/core/ratfunc.hpp"
#include "qsym/report/report.hpp"
#include "qsym/rigid/rigid.hpp"
#include "qsym/son/moments.hpp"
#include "qsym/uea/pbw.hpp"

namespace qsym::uea {

using rigid::ManakovIndex;
using son::MomentSpec;

// Symmetrization of the classical Manakov integral.
template <class K>
PBWElement<K> manakov_operator(PbwEngine& eng, const ManakovIndex& idx, const MomentSpec& spec);

// 1/2 sum_{i<j} P_ij^2 / (lambda_i + lambda_j)
template <class K>
PBWElement<K> hamiltonian_operator(PbwEngine& eng, const MomentSpec& spec);

// (5/12) sum_{i<j} lambda_i^2 lambda_j^2 P_ij^2
template <class K>
PBWElement<K> c62_correction(PbwEngine& eng, const MomentSpec& spec);

// c_{6,2} operator plus the quadratic correction; needs n >= 4.
template <class K>
PBWElement<K> modified_c62(PbwEngine& eng, const MomentSpec& spec);

// Sym_3(P_ij, P_jk, P_ki)
PBWElement<Rational> sym3(PbwEngine& eng, std::size_t i, std::size_t j, std::size_t k);

// Coefficient a^{ij} of a quadratic operator -1/2 sum_{i<j} a^{ij} P_ij^2.
template <class K>
using QuadraticWeight = std::function<K(std::size_t, std::size_t)>;

// Manakov weight a^{ij}_{l,l-2} = h_{l-2}(lambda_i^2, lambda_j^2).
template <class K>
QuadraticWeight<K> manakov_weight(std::size_t l, const MomentSpec& spec);
// Weight 1/(lambda_i + lambda_j), so that H = -(operator with this weight).
template <class K>
QuadraticWeight<K> hamiltonian_weight(const MomentSpec& spec);

// Antisymmetrized coefficient b^{[ijk]} of Sym_3(P_ij, P_jk, P_ki) in the commutator of the
// quadratic operator with weight a and c_{h,h-4}, from the general a-coefficient formula.
template <class K>
K obstruction_b(const QuadraticWeight<K>& a, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j,
                std::size_t k);
// Same for c_{l,l-2}.
template <class K>
K obstruction_b(std::size_t l, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j, std::size_t k);
// Closed forms: zero for h = 5, the cyclic sum for h = 6. Throws for other h.
template <class K>
K obstruction_b_closed(std::size_t l, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j,
                       std::size_t k);
// Coefficient for [H, c_{6,2}]: -(5/6)[l_i (l_j^2 - l_k^2) + cyclic].
template <class K>
K hamiltonian_obstruction_closed(const MomentSpec& spec, std::size_t i, std::size_t j, std::size_t k);
// Coefficient for -1/4 sum_{ij} alpha^{ij} [c_{l,l-2}, P_ij^2] with symmetric alpha.
template <class K>
K alpha_obstruction(std::size_t l, const QuadraticWeight<K>& alpha, const MomentSpec& spec, std::size_t i,
                    std::size_t j, std::size_t k);

// sum_{i<j<k} coeff(i, j, k) Sym_3(P_ij, P_jk, P_ki)
template <class K>
PBWElement<K> sym3_expansion(PbwEngine& eng,
                             const std::function<K(std::size_t, std::size_t, std::size_t)>& coeff);

// -(5/6) sum_{h,l,m} l_l^4 l_m^2 ((5/3) Sym_3(P_hl, P_lm, P_mh)
//   + sum_{i,j} Sym_5(P_ij, P_jh, P_hl, P_lm, P_mi)), the expected value of
// [c_{5,1}, c62_correction].
template <class K>
PBWElement<K> c51_correction_expansion(PbwEngine& eng, const MomentSpec& spec);

struct QuantumRigidConfig {
  std::size_t n = 3;
  // Partition of equal moments; empty means pairwise distinct moments.
  std::vector<std::size_t> q;
  // Explicit moments; when set they override q and every check runs at these values.
  std::vector<Rational> lambda;
  // Unset: symbolic below sampled_from_n, otherwise quartic-by-quartic commutators are
  // certified at sampled moments.
  std::optional<rigid::Mode> mode;
  // Number of moment samples; the first sample with distinct moments is (1, 2, ..., n).
  std::size_t samples = 3;
  std::uint64_t seed = 1;
  std::size_t sampled_from_n = 6;
};

// Exact commutator identities for the quantum Manakov operators, Hamiltonian and modified
// c_{6,2}, plus the quantized integrable set at sampled moments. Needs 3 <= n <= 6.
report::VerificationReport verify_quantum_rigid(const QuantumRigidConfig& cfg);

}  // namespace qsym::uea
