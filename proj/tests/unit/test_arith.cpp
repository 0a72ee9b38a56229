#include <doctest.h>

#include <random>

#include "nfdlog/arith.hpp"
#include "nfdlog/errors.hpp"

using namespace nfdlog;

namespace {

// Sylvester determinant over Q, independent of the subresultant code.
Int sylvester_resultant(const Poly& a, const Poly& b) {
  const int m = a.degree(), n = b.degree();
  const int size = m + n;
  std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = Rat(a.coeff(m - j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = Rat(b.coeff(n - j));
  Rat det = 1;
  for (int c = 0; c < size; ++c) {
    int piv = -1;
    for (int r = c; r < size; ++r)
      if (s[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(s[piv], s[c]);
      det = -det;
    }
    det *= s[c][c];
    for (int r = c + 1; r < size; ++r) {
      const Rat f = s[r][c] / s[c][c];
      for (int k = c; k < size; ++k) s[r][k] -= f * s[c][k];
    }
  }
  return det.get_num();
}

Poly random_monic(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Int> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(d(rng));
  c.emplace_back(1);
  return Poly(c);
}

PolyModP product(const Factorization& f, std::uint64_t p) {
  PolyModP acc = PolyModP::one(p);
  for (const auto& [g, e] : f)
    for (int i = 0; i < e; ++i) acc = acc * g;
  return acc;
}

}  // namespace

TEST_CASE("resultant examples") {
  CHECK(resultant(Poly{1, 0, 1}, Poly{0, 1}) == 1);
  CHECK(resultant(Poly{5, 0, 1}, Poly{-1, 1}) == 6);
  // lc(A)^deg B * prod B(alpha): prod (alpha - 3) = -T(3)
  CHECK(resultant(Poly{-2, 0, 0, 1}, Poly{-3, 1}) == -25);
  CHECK(abs(resultant(Poly{-2, 0, 0, 1}, Poly{-3, 1})) == 25);
  CHECK_THROWS_AS(resultant(Poly{}, Poly{1, 1}), Error);
}

TEST_CASE("discriminants") {
  CHECK(discriminant(Poly{-2, 0, 0, 1}) == -108);
  CHECK(discriminant(Poly{5, 0, 1}) == -20);
  CHECK(discriminant(Poly{-2, 0, 1}) == 8);
}

TEST_CASE("resultant matches the Sylvester determinant and is multiplicative") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    const Poly a = random_monic(rng, 1 + static_cast<int>(rng() % 6), 50);
    const Poly b = random_monic(rng, 1 + static_cast<int>(rng() % 6), 50);
    const Poly c = random_monic(rng, 1 + static_cast<int>(rng() % 3), 50);
    const Int rab = resultant(a, b);
    CHECK(rab == sylvester_resultant(a, b));
    const int sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
    CHECK(resultant(b, a) == sign * rab);
    CHECK(resultant(a, b * c) == rab * resultant(a, c));
  }
}

TEST_CASE("factor_mod_p examples") {
  const Poly t{-2, 0, 0, 1};
  auto f2 = factor_mod_p(t, 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == PolyModP(2, {0, 1}));
  CHECK(f2[0].second == 3);

  auto f5 = factor_mod_p(t, 5);
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].first == PolyModP(5, {2, 1}));
  CHECK(f5[1].first == PolyModP(5, {4, 3, 1}));
  CHECK(f5[0].second == 1);
  CHECK(f5[1].second == 1);

  auto f7 = factor_mod_p(t, 7);
  REQUIRE(f7.size() == 1);
  CHECK(f7[0].first == PolyModP(7, {5, 0, 0, 1}));

  CHECK_THROWS_AS(factor_mod_p(t, 9), Error);
}

TEST_CASE("factor_mod_p re-multiplies to T for random inputs") {
  std::mt19937_64 rng(11);
  const auto primes = primes_up_to(1000);
  for (int it = 0; it < 200; ++it) {
    const std::uint64_t p = primes[rng() % primes.size()];
    const Poly t = random_monic(rng, 2 + static_cast<int>(rng() % 5), 100);
    const auto fac = factor_mod_p(t, Int(static_cast<unsigned long>(p)));
    CHECK(product(fac, p) == PolyModP::reduce(t, p));
    for (std::size_t i = 0; i < fac.size(); ++i) {
      CHECK(fac[i].first.lead() == 1);
      if (i > 0) CHECK(fac[i - 1].first < fac[i].first);
      // Factors of degree 2 or 3 are irreducible iff rootless; check small p exhaustively.
      if (p < 60 && fac[i].first.degree() >= 2 && fac[i].first.degree() <= 3)
        for (std::uint64_t x = 0; x < p; ++x) CHECK(fac[i].first.eval(x) != 0);
    }
  }
}

TEST_CASE("hensel lifting") {
  const Poly t{-2, 0, 0, 1};
  CHECK(hensel_lift_root(t, 5, 3, 1) == 3);
  CHECK(hensel_lift_root(t, 5, 3, 2) == 3);
  CHECK(hensel_lift_root(t, 5, 3, 3) == 53);
  CHECK_THROWS_AS(hensel_lift_root(t, 5, 2, 3), Error);
  CHECK_THROWS_AS(hensel_lift_root(t, 3, 2, 3), Error);  // X^3 - 2 = (X + 1)^3 mod 3

  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    const Poly f = random_monic(rng, 3, 30);
    for (std::uint64_t p : {7ul, 11ul, 13ul, 101ul}) {
      for (std::uint64_t v = 0; v < p; ++v) {
        const Int vi(static_cast<unsigned long>(v));
        if (f.eval(vi) % static_cast<unsigned long>(p) != 0) continue;
        if (f.derivative().eval(vi) % static_cast<unsigned long>(p) == 0) continue;
        for (unsigned m = 1; m <= 8; ++m) {
          const Int pm = ipow(Int(static_cast<unsigned long>(p)), m);
          const Int r = hensel_lift_root(f, Int(static_cast<unsigned long>(p)), vi, m);
          CHECK(r >= 0);
          CHECK(r < pm);
          CHECK(f.eval(r) % pm == 0);
          CHECK((r - vi) % static_cast<unsigned long>(p) == 0);
        }
      }
    }
  }
}

TEST_CASE("integer utilities") {
  CHECK(is_prime(Int(1000000007)));
  CHECK_FALSE(is_prime(Int(1000000007) * 3));
  auto f = factor_integer(Int("1000000016000000063"));
  REQUIRE(f);
  CHECK(f->size() == 2);
  CHECK(f->at(Int(1000000007)) == 1);
  CHECK(valuation(Int(48), Int(2)) == 4);
  CHECK(bit_length(Int(255)) == 8);
  CHECK(derive_seed(1, "sieve") == derive_seed(1, "sieve"));
  CHECK(derive_seed(1, "sieve") != derive_seed(1, "descent"));
}
