#include <doctest.h>

#include <random>

#include "nfdlog/errors.hpp"
#include "nfdlog/ideals.hpp"

using namespace nfdlog;

TEST_CASE("split_prime in Q(cbrt 2)") {
  auto f = make_kummer_field(3, 2);
  auto p5 = split_prime(f, 5);
  REQUIRE(p5.size() == 2);
  CHECK(p5[0].g == PolyModP(5, {2, 1}));
  CHECK(p5[0].f == 1);
  CHECK(p5[0].e == 1);
  CHECK(p5[0].norm == 5);
  CHECK(p5[1].g == PolyModP(5, {4, 3, 1}));
  CHECK(p5[1].f == 2);
  CHECK(p5[1].norm == 25);

  auto p2 = split_prime(f, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 3);
  CHECK(p2[0].g == PolyModP(2, {0, 1}));

  auto p7 = split_prime(f, 7);
  REQUIRE(p7.size() == 1);
  CHECK(p7[0].f == 3);
  CHECK(p7[0].inert);
}

TEST_CASE("fundamental identity sum e f = n") {
  for (auto f : {make_kummer_field(3, 2), make_kummer_field(5, 3), make_field(Poly{14, 0, 1})}) {
    for (auto p : primes_up_to(200)) {
      int total = 0;
      for (const auto& q : split_prime(f, Int(static_cast<unsigned long>(p)))) total += q.e * q.f;
      CHECK(total == f->degree());
    }
  }
}

TEST_CASE("ideal multiplication") {
  auto f = make_kummer_field(3, 2);
  const Ideal o = Ideal::unit(f);
  const Ideal p5 = Ideal::from_prime(f, split_prime(f, 5)[0]);
  CHECK(ideal_mul(o, p5) == p5);
  const Ideal p2 = Ideal::from_prime(f, split_prime(f, 2)[0]);
  const Ideal cube = ideal_mul(ideal_mul(p2, p2), p2);
  CHECK(cube == principal_ideal(FieldElement::from_int(f, 2)));
  CHECK(cube.hnf() == [] {
    IntMatrix m = IntMatrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) m(i, i) = 2;
    return m;
  }());
  CHECK(ideal_pow(p2, 3) == cube);
  // norms are multiplicative
  const Ideal p5b = Ideal::from_prime(f, split_prime(f, 5)[1]);
  CHECK(ideal_mul(p5, p5b).norm() == 125);
  CHECK(ideal_mul(p5, p5b) == principal_ideal(FieldElement::from_int(f, 5)));
}

TEST_CASE("valuations") {
  auto f = make_kummer_field(3, 2);
  for (auto p : primes_up_to(30))
    for (const auto& q : split_prime(f, Int(static_cast<unsigned long>(p))))
      CHECK(element_valuation(FieldElement::one(f), q) == 0);

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> d(-40, 40);
  for (int it = 0; it < 60; ++it) {
    FieldElement phi(f, Poly{d(rng), d(rng), d(rng)});
    if (phi.is_zero()) continue;
    for (auto p : {2ul, 3ul, 5ul, 11ul, 31ul})
      for (const auto& q : split_prime(f, Int(p)))
        CHECK(element_valuation(phi, q) == element_valuation_by_division(phi, q));
  }
}

TEST_CASE("factor_ideal") {
  auto f = make_kummer_field(3, 2);
  CHECK(factor_ideal(principal_ideal(FieldElement(f, Poly{-1, 1}))).empty());
  CHECK(factor_ideal(Ideal::unit(f)).empty());
  const auto fac = factor_ideal(principal_ideal(FieldElement(f, Poly{2, 1})));
  REQUIRE(fac.size() == 2);
  CHECK(fac.at(split_prime(f, 2)[0]) == 1);
  CHECK(fac.at(split_prime(f, 5)[0]) == 1);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-25, 25);
  for (auto g : {f, make_field(Poly{14, 0, 1}), make_kummer_field(3, 5)}) {
    for (int it = 0; it < 25; ++it) {
      std::vector<Int> c;
      for (int i = 0; i < g->degree(); ++i) c.emplace_back(d(rng));
      FieldElement phi(g, Poly(c));
      if (phi.is_zero()) continue;
      const Ideal i = principal_ideal(phi);
      const auto fi = factor_ideal(i);
      CHECK(ideal_from_factorization(g, fi) == i);
      Int norm = 1;
      for (const auto& [p, e] : fi) norm *= ipow(p.norm, e);
      CHECK(norm == abs(element_norm(phi)));
      for (const auto& [p, e] : fi) CHECK(ideal_valuation(i, p) == e);
    }
  }
}

TEST_CASE("ideal division and containment") {
  auto f = make_field(Poly{14, 0, 1});
  const auto p3 = split_prime(f, 3);
  REQUIRE(p3.size() == 2);
  const Ideal a = Ideal::from_prime(f, p3[0]);
  const Ideal sq = ideal_pow(a, 2);
  auto q = ideal_divide(sq, f, p3[0]);
  REQUIRE(q);
  CHECK(*q == a);
  CHECK_FALSE(ideal_divide(a, f, p3[1]).has_value());
  CHECK(sq.contained_in(a));
  CHECK_FALSE(a.contained_in(sq));
  CHECK(a.min_integer() == 3);
}
