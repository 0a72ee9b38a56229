#include "nfdlog/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include "nfdlog/errors.hpp"

namespace nfdlog {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
  if (v.size() != cols_) throw Error(Errc::InvalidInput, "row length mismatch");
  std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

void IntMatrix::append_row(const IntVec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw Error(Errc::InvalidInput, "row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) mpz_swap((*this)(i, c).get_mpz_t(), (*this)(j, c).get_mpz_t());
}

IntMatrix IntMatrix::top(std::size_t r) const {
  IntMatrix m(r, cols_);
  std::copy(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(r * cols_), m.a_.begin());
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Int IntMatrix::max_abs() const {
  Int best = 0;
  for (const auto& x : a_)
    if (cmpabs(x, best) > 0) best = abs(x);
  return best;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::InvalidInput, "dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

IntVec row_times(const IntVec& x, const IntMatrix& m) {
  IntVec out(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_addmul(out[j].get_mpz_t(), x[i].get_mpz_t(), m(i, j).get_mpz_t());
  }
  return out;
}

RatVec row_times(const RatVec& x, const IntMatrix& m) {
  RatVec out(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

// row_i -= q * row_r, starting at column `from`.
void sub_row(IntMatrix& m, std::size_t i, std::size_t r, const Int& q, std::size_t from = 0) {
  for (std::size_t c = from; c < m.cols(); ++c)
    if (m(r, c) != 0) mpz_submul(m(i, c).get_mpz_t(), q.get_mpz_t(), m(r, c).get_mpz_t());
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_neg(m(i, c).get_mpz_t(), m(i, c).get_mpz_t());
}

}  // namespace

HnfResult hnf(const IntMatrix& m, bool with_transform) {
  HnfResult res;
  res.h = m;
  IntMatrix& h = res.h;
  if (with_transform) res.u = IntMatrix::identity(m.rows());
  IntMatrix& u = res.u;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Int q;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    bool have_pivot = false;
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, j) != 0 && (best == rows || cmpabs(h(i, j), h(best, j)) < 0)) best = i;
      if (best == rows) break;
      have_pivot = true;
      h.swap_rows(best, r);
      if (with_transform) u.swap_rows(best, r);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(r, j).get_mpz_t());
        if (q != 0) {
          sub_row(h, i, r, q, j);
          if (with_transform) sub_row(u, i, r, q);
        }
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (h(r, j) < 0) {
      negate_row(h, r);
      if (with_transform) negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(r, j).get_mpz_t());
      if (q != 0) {
        sub_row(h, i, r, q, j);
        if (with_transform) sub_row(u, i, r, q);
      }
    }
    res.pivots.push_back(j);
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix hnf_basis(const IntMatrix& m) {
  HnfResult r = hnf(m, false);
  return r.h.top(r.rank);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

IntVec snf_dense(IntMatrix a) {
  const std::size_t m = a.rows(), n = a.cols(), d = std::min(m, n);
  IntVec diag;
  Int q;
  for (std::size_t t = 0; t < d; ++t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (bi == m || cmpabs(a(i, j), a(bi, bj)) < 0)) bi = i, bj = j;
    if (bi == m) break;
    a.swap_rows(t, bi);
    if (bj != t)
      for (std::size_t i = 0; i < m; ++i) mpz_swap(a(i, t).get_mpz_t(), a(i, bj).get_mpz_t());
    for (;;) {
      bool again = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        sub_row(a, i, t, q, t);
        if (a(i, t) != 0) again = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t i = t; i < m; ++i)
          if (a(i, t) != 0) mpz_submul(a(i, j).get_mpz_t(), q.get_mpz_t(), a(i, t).get_mpz_t());
        if (a(t, j) != 0) again = true;
      }
      if (again) {
        // Move the smallest leftover of row/column t into the pivot.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && cmpabs(a(i, t), a(si, sj)) < 0) si = i, sj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && cmpabs(a(t, j), a(si, sj)) < 0) si = t, sj = j;
        a.swap_rows(t, si);
        if (sj != t)
          for (std::size_t i = 0; i < m; ++i) mpz_swap(a(i, t).get_mpz_t(), a(i, sj).get_mpz_t());
        continue;
      }
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      for (std::size_t j = t; j < n; ++j) a(t, j) += a(bad, j);
    }
    diag.push_back(abs(a(t, t)));
  }
  diag.resize(d, Int(0));
  return diag;
}

}  // namespace

IntVec snf(const IntMatrix& m) {
  const std::size_t d = std::min(m.rows(), m.cols());
  HnfResult r = hnf(m, false);
  // A pivot equal to 1 spans a unit column of the HNF; such a row/column pair
  // splits off as a trivial invariant factor.
  std::vector<std::size_t> keep_rows, keep_cols;
  std::vector<bool> unit_col(m.cols(), false);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.h(i, r.pivots[i]) == 1) {
      unit_col[r.pivots[i]] = true;
      ++ones;
    } else {
      keep_rows.push_back(i);
    }
  }
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!unit_col[j]) keep_cols.push_back(j);
  IntMatrix rest(keep_rows.size(), keep_cols.size());
  for (std::size_t i = 0; i < keep_rows.size(); ++i)
    for (std::size_t j = 0; j < keep_cols.size(); ++j) rest(i, j) = r.h(keep_rows[i], keep_cols[j]);
  IntVec out(ones, Int(1));
  if (rest.rows() > 0 && rest.cols() > 0) {
    IntVec tail = snf_dense(rest);
    for (auto& x : tail)
      if (x != 0) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.resize(d, Int(0));
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Solving

std::optional<IntVec> hnf_coordinates(const HnfResult& r, const IntVec& b) {
  if (b.size() != r.h.cols()) throw Error(Errc::InvalidInput, "vector length mismatch");
  IntVec res = b, y(r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t p = r.pivots[i];
    if (!mpz_divisible_p(res[p].get_mpz_t(), r.h(i, p).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), res[p].get_mpz_t(), r.h(i, p).get_mpz_t());
    if (y[i] != 0)
      for (std::size_t c = p; c < res.size(); ++c)
        mpz_submul(res[c].get_mpz_t(), y[i].get_mpz_t(), r.h(i, c).get_mpz_t());
  }
  for (const auto& x : res)
    if (x != 0) return std::nullopt;
  return y;
}

namespace {

RatVec rational_coordinates(const HnfResult& r, const IntVec& b) {
  RatVec res(b.begin(), b.end()), y(r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t p = r.pivots[i];
    y[i] = res[p] / r.h(i, p);
    if (y[i] != 0)
      for (std::size_t c = p; c < res.size(); ++c) res[c] -= y[i] * r.h(i, c);
  }
  for (const auto& x : res)
    if (x != 0) throw Error(Errc::NoSolution, "vector outside the row span");
  return y;
}

}  // namespace

LeftSolution solve_left(const HnfResult& r, const IntVec& b) {
  if (r.u.rows() == 0 && r.h.rows() != 0) throw Error(Errc::InvalidInput, "HNF lacks transform");
  LeftSolution sol;
  const IntMatrix ut = r.u.top(r.rank);
  if (auto y = hnf_coordinates(r, b)) {
    const IntVec x = row_times(*y, ut);
    sol.x.assign(x.begin(), x.end());
    sol.integral = true;
  } else {
    sol.x = row_times(rational_coordinates(r, b), ut);
    sol.integral = false;
  }
  for (std::size_t i = r.rank; i < r.u.rows(); ++i) sol.kernel.push_back(r.u.row(i));
  return sol;
}

LeftSolution solve_left(const IntMatrix& m, const IntVec& b) { return solve_left(hnf(m, true), b); }

Int order_modulo_lattice(const HnfResult& r, const IntVec& b) {
  if (r.rank != r.h.cols()) throw Error(Errc::RankDeficient, "lattice is not of full rank");
  const RatVec y = rational_coordinates(r, b);
  Int l = 1;
  for (const auto& c : y) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------------------
// LLL (integral version, all quantities exact)

namespace {

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

}  // namespace

std::vector<IntVec> lll_reduce(std::vector<IntVec> b) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  // 1-based indices: d[0] = 1, d[i] = Gram determinant of the first i rows.
  std::vector<Int> d(n + 1);
  std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1));
  auto B = [&](std::size_t i) -> IntVec& { return b[i - 1]; };

  auto red = [&](std::size_t k, std::size_t l) {
    Int twice = 2 * lam[k][l];
    if (cmpabs(twice, d[l]) <= 0) return;
    // q = round(lam / d_l)
    Int q;
    Int num = 2 * lam[k][l] + d[l];
    Int den = 2 * d[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t c = 0; c < B(k).size(); ++c)
      mpz_submul(B(k)[c].get_mpz_t(), q.get_mpz_t(), B(l)[c].get_mpz_t());
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t k = 2, kmax = 1;
  d[0] = 1;
  d[1] = dot(B(1), B(1));
  if (d[1] == 0) throw Error(Errc::InvalidInput, "LLL basis is dependent");
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Int u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) {
          Int t = d[i] * u - lam[k][i] * lam[j][i];
          mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), d[i - 1].get_mpz_t());
        }
        if (j < k) lam[k][j] = u;
        else d[k] = u;
      }
      if (d[k] == 0) throw Error(Errc::InvalidInput, "LLL basis is dependent");
    }
    for (;;) {
      red(k, k - 1);
      // Lovasz: 4 d_k d_{k-2} < 3 d_{k-1}^2 - 4 lam^2 triggers a swap.
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
        std::swap(B(k), B(k - 1));
        for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        const Int l = lam[k][k - 1];
        Int bb = (d[k - 2] * d[k] + l * l);
        mpz_divexact(bb.get_mpz_t(), bb.get_mpz_t(), d[k - 1].get_mpz_t());
        for (std::size_t i = k + 1; i <= kmax; ++i) {
          const Int t = lam[i][k];
          Int x = d[k] * lam[i][k - 1] - l * t;
          mpz_divexact(lam[i][k].get_mpz_t(), x.get_mpz_t(), d[k - 1].get_mpz_t());
          Int y = bb * t + l * lam[i][k];
          mpz_divexact(lam[i][k - 1].get_mpz_t(), y.get_mpz_t(), d[k].get_mpz_t());
        }
        d[k - 1] = bb;
        if (k > 2) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
      break;
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Text format

void write_matrix(std::ostream& os, const IntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << '\n';
  }
}

IntMatrix read_matrix(std::istream& is) {
  std::size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw Error(Errc::InvalidInput, "bad matrix header");
  IntMatrix m(r, c);
  std::string tok;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (!(is >> tok)) throw Error(Errc::InvalidInput, "truncated matrix");
      m(i, j) = Int(tok);
    }
  return m;
}

void write_real_matrix(std::ostream& os, const std::vector<std::vector<double>>& m) {
  os << m.size() << ' ' << (m.empty() ? 0 : m[0].size()) << '\n';
  char buf[40];
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace nfdlog
