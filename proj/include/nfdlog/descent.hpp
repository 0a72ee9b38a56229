#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nfdlog/lattice.hpp"
#include "nfdlog/relations.hpp"

namespace nfdlog {

struct SmoothStep {
  /// phi in P with (phi) = P * prod Q^c over `cofactor`.
  FieldElement phi;
  std::vector<std::pair<PrimeIdeal, long>> cofactor;
  std::uint64_t candidates = 0;
};

/// Searches up to `effort` small elements of P for one whose cofactor (phi)/P
/// only has primes of norm <= target. Degree-1 primes (q, theta - v) use the
/// tuple lattice on (q, theta - v, ..., theta^k - v^k), other primes their HNF
/// lattice. A prime of the factor base returns phi = 1 with no cofactor.
SmoothStep smooth_step(const PrimeIdeal& p, const FactorBase& fb, const Int& target, std::uint64_t effort,
                       std::uint64_t seed);

struct DescentOptions {
  std::uint64_t seed = 0;
  /// Largest accepted input norm; |disc| when unset.
  std::optional<Int> norm_cap;
  std::uint64_t effort0 = 64;
  /// Effort doublings per node before DescentStuck.
  int retries = 6;
  int depth_slack = 3;
  /// Field shape for the norm-bound schedule; measured from T when unset.
  std::optional<double> kappa;
};

struct DescentNode {
  enum class Kind { FactorBase, Inert, Descended };
  PrimeIdeal prime;
  Kind kind = Kind::FactorBase;
  int level = 0;
  /// Exponent of this prime in the running product.
  Int multiplicity;
  Int target;
  std::optional<FieldElement> phi;
  std::vector<std::pair<PrimeIdeal, long>> children;
  std::vector<std::size_t> child_nodes;
};

struct DecompositionResult {
  /// I = prod_FB P^exponents[P] * prod_j (phi_j)^v_j.
  IntVec exponents;
  std::vector<std::pair<FieldElement, Int>> trace;
  int depth = 0;
  int depth_cap = 0;
  std::vector<DescentNode> nodes;
  /// Largest child exponent seen and whether every node kept it <= N(node)/2.
  long max_node_exponent = 0;
  bool exponent_bound_ok = true;
};

int descent_depth_cap(const NumberField& field, int slack = 3);

/// Writes I over the factor base, descending every prime outside it.
DecompositionResult decompose(const Ideal& i, const FactorBase& fb, const DescentOptions& opts = {});

/// v_P(I) = exponents[P] + sum_j v_j v_P(phi_j) at every factor-base prime.
bool check_valuations(const Ideal& i, const FactorBase& fb, const DecompositionResult& r);
/// The product identity, checked exactly with ideal multiplication.
bool check_reconstruction(const Ideal& i, const FactorBase& fb, const DecompositionResult& r);

}  // namespace nfdlog
