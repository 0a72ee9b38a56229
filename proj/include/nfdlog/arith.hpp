#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nfdlog {

using Int = mpz_class;
using Rat = mpq_class;

inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Dense univariate polynomial over Z, constant term first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Int> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly monomial(int degree, const Int& c = 1);
  static Poly constant(const Int& c);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Coefficient of X^i; zero beyond the degree.
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  const Int& lead() const { return c_.back(); }
  const std::vector<Int>& coeffs() const { return c_; }

  Int eval(const Int& x) const;
  Poly derivative() const;
  Int content() const;
  Poly primitive_part() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Int& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Int& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Remainder modulo a monic polynomial.
  Poly mod_monic(const Poly& m) const;
  /// Exact division by a scalar; throws if not exact.
  Poly div_exact(const Int& s) const;

  std::string to_string(const char* var = "X") const;

 private:
  void normalize();
  std::vector<Int> c_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
Poly pseudo_remainder(const Poly& a, const Poly& b);

/// Res(a, b) = lc(a)^deg(b) * prod b(alpha_i) over the roots alpha_i of a.
/// Computed by the subresultant PRS; this is the classical sign, so
/// resultant(b, a) = (-1)^(deg a * deg b) resultant(a, b).
Int resultant(const Poly& a, const Poly& b);

/// disc(T) = (-1)^(n(n-1)/2) Res(T, T') / lc(T).
Int discriminant(const Poly& t);

/// Polynomial over F_p, p < 2^62, coefficients in [0, p), constant term first.
class PolyModP {
 public:
  explicit PolyModP(std::uint64_t p) : p_(p) {}
  PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static PolyModP reduce(const Poly& f, std::uint64_t p);
  static PolyModP x(std::uint64_t p) { return PolyModP(p, {0, 1}); }
  static PolyModP one(std::uint64_t p) { return PolyModP(p, {1}); }

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t lead() const { return c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  /// Integer polynomial with the same coefficients in [0, p).
  Poly lift() const;
  PolyModP monic() const;
  PolyModP derivative() const;
  std::uint64_t eval(std::uint64_t x) const;

  PolyModP& operator+=(const PolyModP& o);
  PolyModP& operator-=(const PolyModP& o);
  friend PolyModP operator+(PolyModP a, const PolyModP& b) { return a += b; }
  friend PolyModP operator-(PolyModP a, const PolyModP& b) { return a -= b; }
  friend PolyModP operator*(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator*(PolyModP a, std::uint64_t s);
  friend bool operator==(const PolyModP& a, const PolyModP& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  /// Degree first, then coefficients lexicographically from the constant term.
  friend bool operator<(const PolyModP& a, const PolyModP& b);

  /// Quotient and remainder; b nonzero.
  static std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b);
  PolyModP operator%(const PolyModP& m) const { return divmod(*this, m).second; }
  PolyModP operator/(const PolyModP& m) const { return divmod(*this, m).first; }

  std::string to_string(const char* var = "X") const;

 private:
  void normalize();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

/// Monic gcd.
PolyModP gcd(PolyModP a, PolyModP b);
/// base^e mod m.
PolyModP powmod(const PolyModP& base, const Int& e, const PolyModP& m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

using Factorization = std::vector<std::pair<PolyModP, int>>;

/// Complete factorization of T mod p into monic irreducibles with multiplicity,
/// sorted by degree then coefficients. Randomized splitting draws from `rng`.
Factorization factor_mod_p(const Poly& t, const Int& p, std::mt19937_64& rng);
/// Same, with a generator seeded from p so results are reproducible.
Factorization factor_mod_p(const Poly& t, const Int& p);

/// Lifts a simple root v of T mod p to the unique root mod p^m congruent to v.
Int hensel_lift_root(const Poly& t, const Int& p, const Int& v, unsigned m);

// Rational integer utilities.

bool is_prime(const Int& n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
/// Largest e with p^e | n; n nonzero.
unsigned valuation(const Int& n, const Int& p);
Int ipow(const Int& base, unsigned long e);
/// Number of bits needed for |n|, i.e. ceil(log2(|n|+1)).
std::size_t bit_length(const Int& n);
double log2_abs(const Int& n);

/// Full factorization of |n| > 0: trial division up to `trial_limit`, then
/// Pollard-Brent rho. Returns nullopt when a composite cofactor resists
/// `rho_iterations` steps.
std::optional<std::map<Int, unsigned>> factor_integer(
    const Int& n, std::uint64_t trial_limit = 1u << 16,
    std::uint64_t rho_iterations = 1u << 22);

/// Canonical 64-bit mixing, used to derive named random streams from seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace nfdlog
