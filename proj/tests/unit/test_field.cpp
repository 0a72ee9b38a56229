#include <doctest.h>

#include <cmath>
#include <random>

#include "nfdlog/errors.hpp"
#include "nfdlog/field.hpp"

using namespace nfdlog;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidInput;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("kummer fields") {
  auto k32 = make_kummer_field(3, 2);
  CHECK(abs(k32->disc()) == 108);
  CHECK(k32->real_places() == 1);
  CHECK(k32->complex_places() == 1);
  auto k35 = make_kummer_field(3, 5);
  CHECK(abs(k35->disc()) == 675);
  CHECK(code_of([] { make_kummer_field(3, 17); }) == Errc::MonogenicityUnknown);
  CHECK(code_of([] { make_kummer_field(4, 3); }) == Errc::NotPrime);
}

TEST_CASE("kummer discriminant closed form matches the resultant") {
  for (auto [n, k] : {std::pair{3L, 2L}, {3L, 5L}, {5L, 2L}, {5L, 3L}, {7L, 2L}}) {
    auto f = make_kummer_field(n, k);
    std::vector<Int> c(static_cast<std::size_t>(n) + 1, Int(0));
    c[0] = -k;
    c.back() = 1;
    const Poly t(c);
    const Int closed = ipow(Int(n), static_cast<unsigned long>(n)) * ipow(Int(k), static_cast<unsigned long>(n - 1));
    CHECK(abs(f->disc()) == closed);
    CHECK(abs(resultant(t, t.derivative())) == closed);
    CHECK(f->real_places() == (n % 2 ? 1 : 2));
  }
}

TEST_CASE("make_field") {
  auto q5 = make_field(Poly{5, 0, 1});
  CHECK(q5->disc() == -20);
  CHECK(q5->real_places() == 0);
  CHECK(q5->complex_places() == 1);
  CHECK(q5->unit_rank() == 0);
  auto r2 = make_field(Poly{-2, 0, 1});
  CHECK(r2->disc() == 8);
  CHECK(r2->real_places() == 2);
  CHECK(r2->unit_rank() == 1);
  CHECK(code_of([] { make_field(Poly{-4, 0, 1}); }) == Errc::Reducible);
  CHECK(code_of([] { make_field(Poly{1, 0, 2}); }) == Errc::NotMonic);
  CHECK(count_real_roots(Poly{-2, 0, 0, 1}) == 1);
  CHECK(count_real_roots(Poly{0, -1, 0, 1}) == 3);
}

TEST_CASE("element norms") {
  auto f = make_kummer_field(3, 2);
  CHECK(element_norm(FieldElement::one(f)) == 1);
  CHECK(element_norm(FieldElement::theta(f)) == 2);
  // N(theta - 1) = prod (alpha_i - 1) = -T(1) * (-1)^3 ... = +1 with the signed resultant
  CHECK(abs(element_norm(FieldElement(f, Poly{-1, 1}))) == 1);
  CHECK(element_norm(FieldElement(f, Poly{2, 1})) == 10);
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-20, 20);
  for (auto f : {make_kummer_field(3, 2), make_field(Poly{14, 0, 1}), make_kummer_field(5, 3)}) {
    const int n = f->degree();
    for (int it = 0; it < 30; ++it) {
      std::vector<Int> a, b;
      for (int i = 0; i < n; ++i) {
        a.emplace_back(d(rng));
        b.emplace_back(d(rng));
      }
      FieldElement x(f, Poly(a)), y(f, Poly(b));
      CHECK(element_norm(x * y) == element_norm(x) * element_norm(y));
    }
  }
}

TEST_CASE("log embeddings") {
  auto f = make_kummer_field(3, 2);
  for (const auto& v : log_embeddings(FieldElement::one(f), 64)) CHECK(std::abs(v.to_double()) < 1e-15);
  auto l = log_embeddings(FieldElement::theta(f), 64);
  REQUIRE(l.size() == 2);
  CHECK(l[0].to_double() == doctest::Approx(std::log(2.0) / 3).epsilon(1e-12));
  CHECK(l[1].to_double() == doctest::Approx(std::log(2.0) / 3).epsilon(1e-12));

  // sum_i d_i ln|sigma_i(phi)| = ln|N(phi)|
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-30, 30);
  for (auto g : {f, make_kummer_field(5, 2), make_field(Poly{-2, 0, 1})}) {
    for (int it = 0; it < 20; ++it) {
      std::vector<Int> c;
      for (int i = 0; i < g->degree(); ++i) c.emplace_back(d(rng));
      FieldElement phi(g, Poly(c));
      if (phi.is_zero()) continue;
      const auto logs = log_embeddings(phi, 128);
      double sum = 0;
      for (std::size_t i = 0; i < logs.size(); ++i)
        sum += (static_cast<int>(i) < g->real_places() ? 1 : 2) * logs[i].to_double();
      CHECK(sum == doctest::Approx(std::log(std::abs(element_norm(phi).get_d()))).epsilon(1e-9));
    }
  }
}

TEST_CASE("p-maximality") {
  CHECK(is_p_maximal(Poly{-2, 0, 0, 1}, 3));
  CHECK(is_p_maximal(Poly{-2, 0, 0, 1}, 2));
  CHECK_FALSE(is_p_maximal(Poly{-5, 0, 1}, 2));  // Z[sqrt 5] is not 2-maximal
  CHECK(certify_irreducible(Poly{-2, 0, 0, 1}));
  CHECK_FALSE(certify_irreducible(Poly{-1, 0, 0, 1}));
}
