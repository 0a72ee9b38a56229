#include "nfdlog/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "nfdlog/errors.hpp"

namespace nfdlog {

namespace {

Int norm2(const IntVec& x) {
  Int s = 0;
  for (const auto& c : x) mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
  return s;
}

bool canonical(const IntVec& x) {
  for (const auto& c : x)
    if (c != 0) return c > 0;
  return false;
}

}  // namespace

ShortVectorStream::ShortVectorStream(std::vector<IntVec> basis, Int box) : box_(std::move(box)) {
  if (basis.empty()) throw Error(Errc::InvalidInput, "empty lattice basis");
  basis_ = lll_reduce(std::move(basis));
  const std::size_t d = basis_.size(), dim = basis_[0].size();
  mu_.assign(d, std::vector<long double>(d, 0));
  bstar_.assign(d, 0);
  std::vector<std::vector<long double>> bs(d, std::vector<long double>(dim));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t c = 0; c < dim; ++c) bs[i][c] = basis_[i][c].get_d();
    for (std::size_t j = 0; j < i; ++j) {
      long double dot = 0;
      for (std::size_t c = 0; c < dim; ++c) dot += basis_[i][c].get_d() * bs[j][c];
      mu_[i][j] = dot / bstar_[j];
      for (std::size_t c = 0; c < dim; ++c) bs[i][c] -= mu_[i][j] * bs[j][c];
    }
    long double n = 0;
    for (std::size_t c = 0; c < dim; ++c) n += bs[i][c] * bs[i][c];
    bstar_[i] = n;
  }
  radius2_ = norm2(basis_[0]);
  for (const auto& b : basis_) radius2_ = std::min(radius2_, norm2(b));
  radius2_max_ = box_ * box_ * static_cast<unsigned long>(dim);
  if (radius2_ > radius2_max_) radius2_ = radius2_max_;
}

void ShortVectorStream::enumerate(const Int& lo2, const Int& hi2, std::vector<IntVec>& out) const {
  const std::size_t d = basis_.size(), dim = basis_[0].size();
  const long double hi = hi2.get_d() * (1 + 1e-9L) + 1e-6L;
  std::vector<long long> u(d, 0);
  auto rec = [&](auto&& self, std::size_t i, long double partial) -> void {
    long double c = 0;
    for (std::size_t j = i + 1; j < d; ++j) c -= mu_[j][i] * static_cast<long double>(u[j]);
    const long double rem = (hi - partial) / bstar_[i];
    if (rem < 0) return;
    const long double w = std::sqrt(rem);
    const auto lo_u = static_cast<long long>(std::ceil(c - w));
    const auto hi_u = static_cast<long long>(std::floor(c + w));
    for (long long ui = lo_u; ui <= hi_u; ++ui) {
      const long double y = static_cast<long double>(ui) - c;
      const long double np = partial + y * y * bstar_[i];
      if (np > hi) continue;
      u[i] = ui;
      if (i > 0) {
        self(self, i - 1, np);
        continue;
      }
      IntVec x(dim, Int(0));
      bool zero = true;
      for (std::size_t r = 0; r < d; ++r) {
        if (u[r] == 0) continue;
        zero = false;
        const Int ur(static_cast<long>(u[r]));
        for (std::size_t c2 = 0; c2 < dim; ++c2)
          mpz_addmul(x[c2].get_mpz_t(), ur.get_mpz_t(), basis_[r][c2].get_mpz_t());
      }
      if (zero || !canonical(x)) continue;
      const Int n2 = norm2(x);
      if (n2 <= lo2 || n2 > hi2) continue;
      bool in_box = true;
      for (const auto& c2 : x)
        if (cmpabs(c2, box_) > 0) {
          in_box = false;
          break;
        }
      if (in_box) out.push_back(std::move(x));
    }
    u[i] = 0;
  };
  rec(rec, d - 1, 0);
}

void ShortVectorStream::fill_layer() {
  if (done_) return;
  std::vector<IntVec> layer;
  enumerate(radius2_prev_, radius2_, layer);
  std::sort(layer.begin(), layer.end(), [](const IntVec& a, const IntVec& b) {
    const Int na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  for (auto& x : layer) buffer_.push_back(std::move(x));
  radius2_prev_ = radius2_;
  if (radius2_ >= radius2_max_) {
    done_ = true;
  } else {
    radius2_ *= 4;
    if (radius2_ > radius2_max_) radius2_ = radius2_max_;
  }
}

std::optional<IntVec> ShortVectorStream::next() {
  while (buffer_.empty() && !done_) fill_layer();
  if (buffer_.empty()) return std::nullopt;
  IntVec x = std::move(buffer_.front());
  buffer_.pop_front();
  return x;
}

// ---------------------------------------------------------------------------

TupleStream::TupleStream(std::vector<Int> v, long D, long k, long z) {
  if (k < 1) throw Error(Errc::InvalidInput, "k must be at least 1");
  if (v.size() != static_cast<std::size_t>(k + 1)) throw Error(Errc::InvalidInput, "need k+1 values");
  const long e = D + k * z;
  if (e < 0) throw Error(Errc::BoundsUnsatisfiable, "D/k + z < 0");
  const Int limit = ipow(Int(2), static_cast<unsigned long>(std::max(D, 0L)));
  for (const auto& x : v)
    if (D < 0 ? x != 0 : cmpabs(x, limit) > 0) throw Error(Errc::InvalidInput, "log2|v_i| exceeds D");
  const Int p = ipow(Int(2), static_cast<unsigned long>(e));
  mpz_root(bound_.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  std::vector<IntVec> basis;
  for (std::size_t i = 0; i < v.size(); ++i) {
    IntVec row(v.size() + 1, Int(0));
    row[i] = 1;
    row.back() = v[i];
    basis.push_back(std::move(row));
  }
  lattice_.emplace(std::move(basis), bound_);
}

std::optional<IntVec> TupleStream::next() {
  auto x = lattice_->next();
  if (!x) return std::nullopt;
  x->pop_back();
  return x;
}

TupleStream small_tuples(const std::vector<Int>& v, long D, long k, long z) { return TupleStream(v, D, k, z); }

}  // namespace nfdlog
