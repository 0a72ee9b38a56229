#include <doctest.h>

#include <random>
#include <sstream>

#include "nfdlog/errors.hpp"
#include "nfdlog/linalg.hpp"

using namespace nfdlog;

namespace {

IntMatrix m_of(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> v;
  for (auto r : rows) {
    IntVec row;
    for (long x : r) row.emplace_back(x);
    v.push_back(row);
  }
  return IntMatrix::from_rows(v);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_hnf(const HnfResult& r) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t p = r.pivots[i];
    if (i > 0 && p <= last) return false;
    last = p;
    if (r.h(i, p) <= 0) return false;
    for (std::size_t j = 0; j < p; ++j)
      if (r.h(i, j) != 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (r.h(k, p) < 0 || r.h(k, p) >= r.h(i, p)) return false;
  }
  for (std::size_t i = r.rank; i < r.h.rows(); ++i)
    for (std::size_t j = 0; j < r.h.cols(); ++j)
      if (r.h(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto r = hnf(m_of({{1, 2}, {3, 4}}));
  CHECK(r.h == m_of({{1, 0}, {0, 2}}));
  CHECK(r.u * m_of({{1, 2}, {3, 4}}) == r.h);

  auto id = hnf(IntMatrix::identity(3));
  CHECK(id.h == IntMatrix::identity(3));
  CHECK(id.u == IntMatrix::identity(3));

  auto z = hnf(m_of({{2, 0}, {0, 0}, {0, 3}}));
  CHECK(z.h == m_of({{2, 0}, {0, 3}, {0, 0}}));
  CHECK(z.rank == 2);
}

TEST_CASE("hnf properties on random matrices") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    const std::size_t rows = 2 + rng() % 7, cols = 2 + rng() % 5;
    const IntMatrix m = random_matrix(rng, rows, cols, 20);
    const auto r = hnf(m);
    CHECK(is_hnf(r));
    CHECK(r.u * m == r.h);
    CHECK(abs(determinant(r.u)) == 1);
    // row lattices agree: every row of M has coordinates on H
    for (std::size_t i = 0; i < rows; ++i) CHECK(hnf_coordinates(r, m.row(i)).has_value());
  }
}

TEST_CASE("snf") {
  CHECK(snf(m_of({{2, 0}, {0, 6}})) == IntVec{2, 6});
  CHECK(snf(m_of({{2, 0}, {0, 3}})) == IntVec{1, 6});
  std::mt19937_64 rng(4);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng() % 5;
    const IntMatrix m = random_matrix(rng, n, n, 9);
    const auto d = snf(m);
    Int prod = 1;
    for (const auto& x : d) prod *= x;
    CHECK(prod == abs(determinant(m)));
    for (std::size_t i = 1; i < d.size(); ++i)
      if (d[i - 1] != 0) CHECK(d[i] % d[i - 1] == 0);
  }
}

TEST_CASE("determinant against cofactor expansion") {
  const auto m = m_of({{2, -1, 3}, {0, 4, 5}, {1, 1, -2}});
  // 2(-8-5) + 1(0-5) + 3(0-4)
  CHECK(determinant(m) == -43);
}

TEST_CASE("solve_left") {
  const IntVec b{3, -4, 7};
  auto s = solve_left(IntMatrix::identity(3), b);
  CHECK(s.integral);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s.x[i] == Rat(b[i]));

  auto h = solve_left(m_of({{2}}), IntVec{1});
  CHECK_FALSE(h.integral);
  CHECK(h.x[0] == Rat(1, 2));

  CHECK_THROWS_AS(solve_left(m_of({{1, 0}}), IntVec{0, 1}), Error);

  std::mt19937_64 rng(8);
  for (int it = 0; it < 30; ++it) {
    const std::size_t rows = 3 + rng() % 5, cols = 3;
    const IntMatrix m = random_matrix(rng, rows, cols, 15);
    std::uniform_int_distribution<long> d(-5, 5);
    IntVec y;
    for (std::size_t i = 0; i < rows; ++i) y.emplace_back(d(rng));
    const IntVec target = row_times(y, m);
    const auto sol = solve_left(m, target);
    CHECK(sol.integral);
    CHECK(row_times(sol.x, m) == RatVec(target.begin(), target.end()));
    for (const auto& k : sol.kernel) CHECK(row_times(k, m) == IntVec(cols, Int(0)));
    // a row of M solves to something mapping back onto that row
    const auto e = solve_left(m, m.row(0));
    const IntVec r0 = m.row(0);
    CHECK(row_times(e.x, m) == RatVec(r0.begin(), r0.end()));
  }
}

TEST_CASE("order modulo a lattice") {
  const auto r = hnf(m_of({{4, 0}, {0, 6}}));
  CHECK(order_modulo_lattice(r, IntVec{1, 0}) == 4);
  CHECK(order_modulo_lattice(r, IntVec{2, 3}) == 2);
  CHECK(order_modulo_lattice(r, IntVec{1, 1}) == 12);
  CHECK(order_modulo_lattice(r, IntVec{4, 6}) == 1);
}

TEST_CASE("lll keeps the lattice and shortens") {
  std::vector<IntVec> basis{{1, 0, 0, 12345}, {0, 1, 0, 54321}, {0, 0, 1, 99991}};
  auto red = lll_reduce(basis);
  IntMatrix a = IntMatrix::from_rows(basis), b = IntMatrix::from_rows(red);
  CHECK(hnf_basis(a) == hnf_basis(b));
  CHECK(b.max_abs() < a.max_abs());
}

TEST_CASE("matrix text round trip") {
  const auto m = m_of({{1, -2, 3}, {0, 0, 7}});
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
}
