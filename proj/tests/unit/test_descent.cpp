#include <doctest.h>

#include "nfdlog/descent.hpp"
#include "nfdlog/errors.hpp"

using namespace nfdlog;

namespace {

std::vector<PrimeIdeal> degree_one_primes(const FieldPtr& f, Int q, std::size_t count) {
  std::vector<PrimeIdeal> out;
  while (out.size() < count) {
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    for (const auto& p : split_prime(f, q))
      if (p.f == 1 && p.e == 1) {
        out.push_back(p);
        break;
      }
  }
  return out;
}

}  // namespace

TEST_CASE("decompose an element over the factor base") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 30);
  const Ideal i = principal_ideal(FieldElement(f, Poly{2, 1}));
  const auto r = decompose(i, fb);
  CHECK(r.depth == 0);
  for (std::size_t j = 0; j < fb.size(); ++j) {
    const bool hit = fb.primes[j].p == 2 || (fb.primes[j].p == 5 && fb.primes[j].f == 1);
    CHECK(r.exponents[j] == (hit ? 1 : 0));
  }
  CHECK(check_reconstruction(i, fb, r));
  CHECK(check_valuations(i, fb, r));
}

TEST_CASE("factor base primes decompose to unit vectors") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 30);
  for (std::size_t j = 0; j < fb.size(); ++j) {
    const auto r = decompose(Ideal::from_prime(f, fb.primes[j]), fb);
    CHECK(r.trace.empty());
    for (std::size_t t = 0; t < fb.size(); ++t) CHECK(r.exponents[t] == (t == j ? 1 : 0));
    const auto s = smooth_step(fb.primes[j], fb, 30, 10, 1);
    CHECK(s.phi == FieldElement::one(f));
    CHECK(s.cofactor.empty());
  }
}

TEST_CASE("descent of degree-1 primes") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 100);
  DescentOptions opts;
  opts.seed = 42;
  opts.norm_cap = Int(10000000);
  const int cap = descent_depth_cap(*f);
  for (const auto& p : degree_one_primes(f, 1000, 4)) {
    const Ideal i = Ideal::from_prime(f, p);
    const auto r = decompose(i, fb, opts);
    CHECK(r.depth >= 1);
    CHECK(r.depth <= cap);
    CHECK(r.exponent_bound_ok);
    CHECK(check_reconstruction(i, fb, r));
    for (const auto& n : r.nodes)
      if (n.kind == DescentNode::Kind::FactorBase) CHECK(n.prime.norm <= 100);
  }
  for (const auto& p : degree_one_primes(f, 900000, 3)) {
    const Ideal i = Ideal::from_prime(f, p);
    const auto r = decompose(i, fb, opts);
    CHECK(r.depth <= cap);
    CHECK(check_reconstruction(i, fb, r));
  }
}

TEST_CASE("descent of a composite ideal and determinism") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 60);
  DescentOptions opts;
  opts.seed = 3;
  opts.norm_cap = Int(1) << 40;
  const auto ps = degree_one_primes(f, 5000, 2);
  const Ideal i = ideal_mul(Ideal::from_prime(f, ps[0]), ideal_pow(Ideal::from_prime(f, ps[1]), 2));
  const auto r1 = decompose(i, fb, opts);
  const auto r2 = decompose(i, fb, opts);
  CHECK(check_reconstruction(i, fb, r1));
  CHECK(r1.exponents == r2.exponents);
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t j = 0; j < r1.trace.size(); ++j) CHECK(r1.trace[j] == r2.trace[j]);
}

TEST_CASE("smooth_step cofactor identity and failure path") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 100);
  const auto p = degree_one_primes(f, 20000, 1)[0];
  const auto s = smooth_step(p, fb, 1000, 200, 9);
  Ideal prod = Ideal::from_prime(f, p);
  for (const auto& [q, c] : s.cofactor) {
    CHECK(q.norm <= 1000);
    prod = ideal_mul(prod, ideal_pow(Ideal::from_prime(f, q), static_cast<unsigned long>(c)));
  }
  CHECK(prod == principal_ideal(s.phi));

  // a large prime, one candidate and a target of 2 almost never succeed
  bool threw = false;
  const auto big = degree_one_primes(f, Int(1) << 40, 1)[0];
  for (std::uint64_t seed = 0; seed < 50 && !threw; ++seed) {
    try {
      smooth_step(big, fb, 2, 1, seed);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoSmoothFound);
      threw = true;
    }
  }
  CHECK(threw);

  const Ideal huge = Ideal::from_prime(f, big);
  DescentOptions tight;
  tight.norm_cap = Int(1000);
  CHECK_THROWS_AS(decompose(huge, fb, tight), Error);
}
