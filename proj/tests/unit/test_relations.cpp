#include <doctest.h>

#include "nfdlog/errors.hpp"
#include "nfdlog/relations.hpp"

using namespace nfdlog;

namespace {

CollectOptions collect_opts(long a, long k, std::uint64_t seed) {
  CollectOptions o;
  o.sieve.a = a;
  o.sieve.k = k;
  o.sieve.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("factor base examples") {
  auto f = make_kummer_field(3, 2);
  auto fb4 = build_factor_base(f, 4);
  REQUIRE(fb4.size() == 2);
  CHECK(fb4.primes[0].p == 2);
  CHECK(fb4.primes[0].e == 3);
  CHECK(fb4.primes[1].p == 3);
  CHECK(fb4.primes[1].e == 3);
  CHECK(fb4.primes[1].g == PolyModP(3, {1, 1}));

  auto fb30 = build_factor_base(f, 30);
  bool has25 = false;
  for (const auto& p : fb30.primes) {
    CHECK(p.norm <= 30);
    CHECK_FALSE(p.inert);
    CHECK(p.p != 7);
    CHECK(p.p != 13);
    if (p.p == 5 && p.f == 2) has25 = true;
  }
  CHECK(has25);

  auto q5 = make_field(Poly{5, 0, 1});
  auto fb2 = build_factor_base(q5, 2);
  REQUIRE(fb2.size() == 1);
  CHECK(fb2.primes[0].e == 2);
  CHECK(fb2.primes[0].g == PolyModP(2, {1, 1}));
}

TEST_CASE("test_smooth") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 30);
  auto u = test_smooth(FieldElement(f, Poly{-1, 1}), fb);
  REQUIRE(u);
  for (auto x : *u) CHECK(x == 0);

  auto s = test_smooth(FieldElement(f, Poly{2, 1}), fb);
  REQUIRE(s);
  long total = 0;
  for (std::size_t i = 0; i < fb.size(); ++i) {
    total += (*s)[i];
    if ((*s)[i] != 0) CHECK((fb.primes[i].p == 2 || (fb.primes[i].p == 5 && fb.primes[i].f == 1)));
  }
  CHECK(total == 2);

  // 7 is inert: (7) has norm 343
  CHECK_FALSE(test_smooth(FieldElement::from_int(f, 7), fb).has_value());
  CHECK_FALSE(test_smooth(FieldElement::from_int(f, 7), build_factor_base(f, 342)).has_value());
}

TEST_CASE("empty search space") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 30);
  SieveOptions o;
  o.a = 0;
  o.k = 0;
  o.seed = 1;
  try {
    sieve_relations(fb, o, 5);
    FAIL("expected SearchSpaceExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SearchSpaceExhausted);
  }
}

TEST_CASE("assembled determinants match class numbers") {
  auto q5 = make_field(Poly{5, 0, 1});
  auto fb5 = build_factor_base(q5, 30);
  auto m5 = collect_relations(fb5, collect_opts(3, 1, 1));
  CHECK(assemble_and_check(m5, fb5.size()).hnf_det == 2);

  auto c2 = make_kummer_field(3, 2);
  auto fbc = build_factor_base(c2, 30);
  auto mc = collect_relations(fbc, collect_opts(2, 2, 1));
  CHECK(assemble_and_check(mc, fbc.size()).hnf_det == 1);

  RelationMatrix dup;
  dup.rows.push_back(m5.rows[0]);
  dup.rows.push_back(m5.rows[0]);
  try {
    assemble_and_check(dup, fb5.size());
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RankDeficient);
  }
}

TEST_CASE("relations verify and respect the entry bound") {
  for (auto [f, a, k] : {std::tuple{make_kummer_field(3, 2), 2L, 2L}, {make_field(Poly{14, 0, 1}), 3L, 1L},
                         {make_kummer_field(3, 5), 2L, 2L}}) {
    auto fb = build_factor_base(f, 40);
    SieveOptions o;
    o.a = a;
    o.k = k;
    o.seed = 3;
    auto m = sieve_relations(fb, o, 30);
    CHECK(m.rows.size() == 30);
    const Int bound = norm_bound(*f, a, k);
    for (const auto& r : m.rows) {
      CHECK(verify_relation(r, fb));
      CHECK(abs(element_norm(r.phi)) <= bound);
      for (std::size_t i = 0; i < fb.size(); ++i) CHECK(std::abs(r.e[i]) <= entry_bound(fb.primes[i].norm, bound));
      CHECK(static_cast<int>(r.logs.size()) == f->unit_rank());
    }
  }
}

TEST_CASE("sieving is deterministic across job counts") {
  auto f = make_field(Poly{14, 0, 1});
  auto fb = build_factor_base(f, 30);
  SieveOptions o;
  o.a = 4;
  o.k = 1;
  o.seed = 99;
  auto one = sieve_relations(fb, o, 40);
  o.jobs = 4;
  auto four = sieve_relations(fb, o, 40);
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].phi == four.rows[i].phi);
    CHECK(one.rows[i].e == four.rows[i].e);
  }
}

TEST_CASE("sieve statistics match a direct smoothness count") {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 50);
  SieveOptions o;
  o.a = 3;
  o.k = 2;
  o.seed = 5;
  const std::uint64_t trials = 500;
  const auto st = sieve_statistics(fb, o, trials);
  CHECK(st.trials == trials);
  Siever s(fb, o);
  std::uint64_t smooth = 0;
  std::uint64_t seen = 0;
  for (std::uint64_t i = 0; seen < trials && i < s.space_size(); ++i) {
    auto c = s.candidate(i);
    if (!c) continue;  // zero or the negative of a visited element
    ++seen;
    FieldElement phi(f, *c);
    // oracle: the norm is B-smooth and no inert prime divides phi
    Int n = abs(element_norm(phi));
    bool ok = true;
    for (auto p : primes_up_to(50)) {
      const Int pp(static_cast<unsigned long>(p));
      while (n % pp == 0) n /= pp;
    }
    if (n != 1) ok = false;
    if (ok) ok = test_smooth(phi, fb).has_value();
    smooth += ok;
  }
  CHECK(seen == trials);
  CHECK(st.smooth == smooth);
}
