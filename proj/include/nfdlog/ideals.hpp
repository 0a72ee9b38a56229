#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nfdlog/field.hpp"
#include "nfdlog/linalg.hpp"

namespace nfdlog {

/// P = p O + g(theta) O for a monic irreducible factor g of T mod p.
struct PrimeIdeal {
  Int p;
  PolyModP g{2};
  int e = 1;
  int f = 1;
  Int norm;
  bool inert = false;
  /// Root of g mod p when f = 1.
  std::optional<Int> root;

  /// Hensel lift of `root` to Z/p^m as a root of t (requires f = 1, e = 1).
  Int lifted_root(const Poly& t, unsigned m) const;
  /// Generators p and g(theta) as elements.
  Poly generator() const { return g.lift(); }
  /// Key for ordered containers and output: (norm, p, g).
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b);
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p == b.p && a.g == b.g;
  }
  std::string to_string() const;
};

/// Integral ideal of Z[theta], stored as the n x n upper-triangular row HNF
/// of a Z-basis (coordinates on 1, theta, ..., theta^(n-1)).
class Ideal {
 public:
  Ideal(FieldPtr field, IntMatrix hnf);
  static Ideal unit(const FieldPtr& field);
  /// HNF of the Z-module spanned by the O-multiples of the generators.
  static Ideal generated_by(const FieldPtr& field, const std::vector<Poly>& gens);
  static Ideal from_prime(const FieldPtr& field, const PrimeIdeal& p);
  /// u O + w O.
  static Ideal two_element(const FieldPtr& field, const Int& u, const Poly& w);

  const FieldPtr& field() const { return field_; }
  const IntMatrix& hnf() const { return h_; }
  Int norm() const;
  bool is_unit() const;
  bool contains(const Poly& x) const;
  /// I is a subset of J.
  bool contained_in(const Ideal& j) const;
  /// Smallest positive rational integer in I.
  Int min_integer() const;

  /// Cached two-element form (u, w) with I = uO + wO, when known.
  std::optional<std::pair<Int, Poly>> two_elt;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.field_ == b.field_ && a.h_ == b.h_;
  }

 private:
  FieldPtr field_;
  IntMatrix h_;
};

/// Matrix of multiplication by gamma: row i holds the coordinates of theta^i gamma.
IntMatrix multiplication_matrix(const FieldPtr& field, const Poly& gamma);

/// Primes above p in canonical order (factor order of T mod p).
std::vector<PrimeIdeal> split_prime(const FieldPtr& field, const Int& p);

Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ideal& a, unsigned long e);
Ideal principal_ideal(const FieldElement& phi);

/// x in P, decided in O / P = F_p[X]/(g).
bool prime_contains(const PrimeIdeal& p, const Poly& x);

/// I / P when P divides I, otherwise nullopt. The candidate (I : P) is checked
/// by multiplying back.
std::optional<Ideal> ideal_divide(const Ideal& i, const FieldPtr& field, const PrimeIdeal& p);

/// v_P(phi), phi nonzero. Uses the Hensel-lifted root for f = e = 1 and
/// repeated exact division otherwise.
unsigned element_valuation(const FieldElement& phi, const PrimeIdeal& p);
/// Same, forcing repeated division.
unsigned element_valuation_by_division(const FieldElement& phi, const PrimeIdeal& p);
/// v_P(I) by repeated division.
unsigned ideal_valuation(const Ideal& i, const PrimeIdeal& p);

using IdealFactorization = std::map<PrimeIdeal, unsigned>;

/// Prime decomposition of a nonzero integral ideal. Throws Unfactored when
/// norm(I) cannot be split completely.
IdealFactorization factor_ideal(const Ideal& i, std::uint64_t limit = 1u << 16);
/// Valuations of phi at every prime above p, given v_p(|N(phi)|).
std::vector<unsigned> valuations_above(const FieldElement& phi, const std::vector<PrimeIdeal>& above,
                                       unsigned vp_norm);

/// Product of P^e over a factorization.
Ideal ideal_from_factorization(const FieldPtr& field, const IdealFactorization& fac);

}  // namespace nfdlog
