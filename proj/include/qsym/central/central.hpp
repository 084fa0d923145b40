#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qsym/core/sampler.hpp"
#include "qsym/poisson/phase_poly.hpp"
#include "qsym/report/report.hpp"

namespace qsym::central {

using poisson::PhasePoly;
using Labeled = std::pair<std::string, PhasePoly>;

// P_ij = x_i p_j - x_j p_i (0-based, any i != j).
PhasePoly momentum(std::size_t n, std::size_t i, std::size_t j);
std::vector<PhasePoly> momenta(std::size_t n);
// Sum of P_ij^2 over pairs inside the index subset.
PhasePoly p_squared(std::size_t n, const std::vector<std::size_t>& subset);
PhasePoly p_squared(std::size_t n);
PhasePoly momentum_norm2(std::size_t n);  // p^2
PhasePoly radius_norm2(std::size_t n);    // x^2
PhasePoly x_dot_p(std::size_t n);
// 1/2 p^2 - alpha / r
PhasePoly kepler_hamiltonian(std::size_t n, const Rational& alpha);
// A_i = sum_j P_ij p_j - alpha x_i / r
PhasePoly runge_lenz(std::size_t n, std::size_t i, const Rational& alpha);

// "(123)" style label for an index subset, 1-based.
std::string subset_label(const std::vector<std::size_t>& subset);
std::string momentum_label(std::size_t i, std::size_t j);

struct IntegrableSet {
  std::size_t n = 0;
  std::string label;
  std::vector<Labeled> central;
  std::vector<Labeled> noncentral;
  std::size_t k() const { return central.size(); }
  std::size_t size() const { return central.size() + noncentral.size(); }
  std::vector<Labeled> all() const;
  // "(H, P^2; P_13, P_23)" style rendering.
  std::string render() const;
};

// Node of a coordinate-splitting tree. Nodes with at most two indices are leaves; larger
// nodes either stop (take momenta L') or split into two children partitioning the indices.
struct SplitNode {
  std::vector<std::size_t> indices;
  bool stop = true;
  std::vector<SplitNode> children;
  // Optional explicit L' for a stopped node, as index pairs; empty means the default
  // (P_{e1 e3}..P_{e1 em}, P_{e2 e3}..P_{e2 em}).
  std::vector<std::pair<std::size_t, std::size_t>> stop_momenta;

  static SplitNode leaf(std::vector<std::size_t> indices);
  static SplitNode stopped(std::vector<std::size_t> indices, std::vector<std::pair<std::size_t, std::size_t>> l = {});
  static SplitNode split(SplitNode a, SplitNode b);
  std::string describe() const;
  std::size_t depth() const;
};

struct RecursiveSets {
  std::vector<Labeled> z;
  std::vector<Labeled> l;
  // Coordinates behind each entry: a pair gives P_ab, three or more give P^2 of the subset.
  std::vector<std::vector<std::size_t>> z_support;
  std::vector<std::pair<std::size_t, std::size_t>> l_pairs;
};

// Throws std::invalid_argument for a malformed tree.
RecursiveSets build_recursive_sets(std::size_t n, const SplitNode& root);
IntegrableSet set_from_tree(std::size_t n, const SplitNode& root, const PhasePoly& hamiltonian, std::string label);

// All trees over {0..n-1} with at most max_depth nested splits (children unordered).
std::vector<SplitNode> enumerate_split_trees(std::size_t n, std::size_t max_depth);

enum class Family { GenericF, Kepler, Oscillator, FOfP2 };
std::string to_string(Family f);
IntegrableSet catalog(std::size_t n, Family family, const Rational& alpha = Rational(1));

// Hamiltonian used when verifying sets built for an arbitrary central potential.
PhasePoly default_hamiltonian(std::size_t n);

struct TableRow {
  std::size_t n = 0;
  std::size_t row = 0;
  std::size_t k = 0;
  IntegrableSet set;
  SplitNode tree;
};
std::vector<TableRow> central_table(std::size_t n);

// Involution of central elements with the whole set, and Jacobian rank = |set| at
// `samples` random points.
report::VerificationReport verify_integrable_set(const IntegrableSet& set, Sampler& sampler, std::size_t samples,
                                                 const std::string& id);

report::VerificationReport runge_lenz_check(std::size_t n, const Rational& alpha);

struct ClassicalCentralConfig {
  std::size_t n = 3;
  Rational alpha = Rational(1);
  std::size_t samples = 3;
  std::uint64_t seed = 1;
  std::size_t max_tree_depth = 3;
};
report::VerificationReport verify_classical_central(const ClassicalCentralConfig& cfg);
report::VerificationReport verify_central_tables(std::size_t n, std::size_t samples, std::uint64_t seed);

}  // namespace qsym::central
