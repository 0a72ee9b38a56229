#include "nfdlog/arith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nfdlog/errors.hpp"

namespace nfdlog {

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  normalize();
}

Poly Poly::monomial(int degree, const Int& c) {
  std::vector<Int> v(static_cast<std::size_t>(degree) + 1, Int(0));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::constant(const Int& c) { return Poly(std::vector<Int>{c}); }

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int Poly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Int> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(d));
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return {};
  Int g = content();
  if (lead() < 0) g = -g;
  return div_exact(g);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Int& s) {
  for (auto& c : c_) c *= s;
  normalize();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::mod_monic(const Poly& m) const {
  if (!m.is_monic()) throw Error(Errc::NotMonic, "mod_monic requires a monic modulus");
  const int dm = m.degree();
  std::vector<Int> r = c_;
  for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
    if (r[i] == 0) continue;
    const Int q = r[i];
    for (int j = 0; j <= dm; ++j) r[i - dm + j] -= q * m.c_[j];
  }
  if (static_cast<int>(r.size()) > dm) r.resize(std::max(dm, 0));
  return Poly(std::move(r));
}

Poly Poly::div_exact(const Int& s) const {
  std::vector<Int> r = c_;
  for (auto& c : r) {
    if (!mpz_divisible_p(c.get_mpz_t(), s.get_mpz_t()))
      throw Error(Errc::InvalidInput, "inexact scalar division");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  }
  return Poly(std::move(r));
}

std::string Poly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = c_[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

Poly pseudo_remainder(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::ZeroPolynomial, "pseudo-division by zero");
  std::vector<Int> r = a.coeffs();
  const int db = b.degree();
  const Int& lb = b.lead();
  int e = a.degree() - db + 1;
  if (e <= 0) return a;
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    const Int q = r.back();
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) r[dr - db + j] -= q * b.coeffs()[j];
    --e;
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  Poly rem(std::move(r));
  if (e > 0) rem *= ipow(lb, static_cast<unsigned long>(e));
  return rem;
}

Int resultant(const Poly& a_in, const Poly& b_in) {
  if (a_in.is_zero() || b_in.is_zero())
    throw Error(Errc::ZeroPolynomial, "resultant of the zero polynomial");
  Poly a = a_in, b = b_in;
  const Int ca = a.content(), cb = b.content();
  a = a.div_exact(ca);
  b = b.div_exact(cb);
  Int s = 1;
  Int t = ipow(ca, static_cast<unsigned long>(b.degree())) *
          ipow(cb, static_cast<unsigned long>(a.degree()));
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() * b.degree()) % 2 == 1) s = -1;
  }
  Int g = 1, h = 1;
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    Poly r = pseudo_remainder(a, b);
    a = b;
    if (r.is_zero()) return 0;
    b = r.div_exact(g * ipow(h, static_cast<unsigned long>(delta)));
    g = a.lead();
    // h <- h^(1-delta) g^delta, exact.
    if (delta == 0) {
      // unchanged
    } else {
      Int num = ipow(g, static_cast<unsigned long>(delta));
      Int den = ipow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
  // deg b == 0.
  const int da = a.degree();
  Int num = ipow(b.lead(), static_cast<unsigned long>(da));
  Int hh;
  if (da == 0) {
    hh = h * num;
  } else {
    Int den = ipow(h, static_cast<unsigned long>(da - 1));
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return s * t * hh;
}

Int discriminant(const Poly& t) {
  const int n = t.degree();
  if (n < 1) throw Error(Errc::InvalidInput, "discriminant needs degree >= 1");
  Int r = resultant(t, t.derivative());
  Int d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), t.lead().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

// ---------------------------------------------------------------------------
// Modular scalars

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(Errc::InvalidInput, "element not invertible mod p");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

// ---------------------------------------------------------------------------
// PolyModP

PolyModP::PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  normalize();
}

PolyModP PolyModP::reduce(const Poly& f, std::uint64_t p) {
  std::vector<std::uint64_t> c(f.coeffs().size());
  const Int pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), f.coeffs()[i].get_mpz_t(), pp.get_mpz_t());
    c[i] = r.get_ui();
  }
  return PolyModP(p, std::move(c));
}

void PolyModP::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly PolyModP::lift() const {
  std::vector<Int> v;
  v.reserve(c_.size());
  for (auto c : c_) v.emplace_back(static_cast<unsigned long>(c));
  return Poly(std::move(v));
}

PolyModP PolyModP::monic() const {
  if (is_zero() || lead() == 1) return *this;
  return *this * invmod(lead(), p_);
}

PolyModP PolyModP::derivative() const {
  if (c_.size() <= 1) return PolyModP(p_);
  std::vector<std::uint64_t> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mulmod(c_[i], i % p_, p_);
  return PolyModP(p_, std::move(d));
}

std::uint64_t PolyModP::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, x, p_) + *it) % p_;
  return acc;
}

PolyModP& PolyModP::operator+=(const PolyModP& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::uint64_t s = c_[i] + o.c_[i];
    c_[i] = s >= p_ ? s - p_ : s;
  }
  normalize();
  return *this;
}

PolyModP& PolyModP::operator-=(const PolyModP& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
  normalize();
  return *this;
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
  if (a.is_zero() || b.is_zero()) return PolyModP(a.p_);
  std::vector<unsigned __int128> acc(a.c_.size() + b.c_.size() - 1, 0);
  std::vector<std::uint64_t> r(acc.size());
  // Accumulate in 128 bits, reducing before overflow is possible.
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a.c_[i]) * b.c_[j];
      if (acc[i + j] >> 125) acc[i + j] %= a.p_;
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<std::uint64_t>(acc[k] % a.p_);
  return PolyModP(a.p_, std::move(r));
}

PolyModP operator*(PolyModP a, std::uint64_t s) {
  s %= a.p_;
  for (auto& c : a.c_) c = mulmod(c, s, a.p_);
  a.normalize();
  return a;
}

bool operator<(const PolyModP& a, const PolyModP& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.c_ < b.c_;
}

std::pair<PolyModP, PolyModP> PolyModP::divmod(const PolyModP& a, const PolyModP& b) {
  if (b.is_zero()) throw Error(Errc::ZeroPolynomial, "division by zero polynomial");
  const std::uint64_t p = a.p_;
  if (a.degree() < b.degree()) return {PolyModP(p), a};
  std::vector<std::uint64_t> r = a.c_;
  std::vector<std::uint64_t> q(a.c_.size() - b.c_.size() + 1, 0);
  const std::uint64_t inv = invmod(b.lead(), p);
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    const std::uint64_t f = mulmod(r[i], inv, p);
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) {
      const std::uint64_t t = mulmod(f, b.c_[j], p);
      r[i - db + j] = r[i - db + j] >= t ? r[i - db + j] - t : r[i - db + j] + p - t;
    }
  }
  r.resize(db);
  return {PolyModP(p, std::move(q)), PolyModP(p, std::move(r))};
}

std::string PolyModP::to_string(const char* var) const { return lift().to_string(var); }

PolyModP gcd(PolyModP a, PolyModP b) {
  while (!b.is_zero()) {
    PolyModP r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyModP powmod(const PolyModP& base, const Int& e, const PolyModP& m) {
  PolyModP result = PolyModP::one(m.modulus()) % m;
  PolyModP b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Factorization over F_p

namespace {

// f(X) = g(X^p) -> g(X), valid over F_p since a^p = a.
PolyModP pth_root(const PolyModP& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return PolyModP(p, std::move(c));
}

// Squarefree decomposition of a monic polynomial.
void squarefree(const PolyModP& f, int mult, std::vector<std::pair<PolyModP, int>>& out) {
  if (f.degree() <= 0) return;
  const std::uint64_t p = f.modulus();
  PolyModP d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f).monic(), mult * static_cast<int>(p), out);
    return;
  }
  PolyModP c = gcd(f, d);
  PolyModP w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    PolyModP y = gcd(w, c);
    PolyModP z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(pth_root(c).monic(), mult * static_cast<int>(p), out);
}

// Equal-degree splitting of a squarefree monic product of degree-d irreducibles.
void equal_degree(const PolyModP& f, int d, std::mt19937_64& rng, std::vector<PolyModP>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const std::uint64_t p = f.modulus();
  const int n = f.degree();
  std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
  for (;;) {
    std::vector<std::uint64_t> rc(static_cast<std::size_t>(n));
    for (auto& c : rc) c = coin(rng);
    PolyModP a(p, std::move(rc));
    if (a.degree() <= 0) continue;
    PolyModP b(p);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      PolyModP t = a % f;
      b = t;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % f;
        b += t;
      }
    } else {
      Int e = (ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
      b = powmod(a, e, f) - PolyModP::one(p);
    }
    PolyModP g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor_mod_p(const Poly& t, const Int& p_in, std::mt19937_64& rng) {
  if (!is_prime(p_in)) throw Error(Errc::NotPrime, p_in.get_str() + " is not prime");
  if (!p_in.fits_ulong_p() || p_in.get_ui() >= (1ull << 62))
    throw Error(Errc::InvalidInput, "prime too large for word-size arithmetic");
  const std::uint64_t p = p_in.get_ui();
  PolyModP f = PolyModP::reduce(t, p);
  if (f.is_zero()) throw Error(Errc::InvalidInput, "polynomial vanishes mod p");
  f = f.monic();

  std::vector<std::pair<PolyModP, int>> sqf;
  squarefree(f, 1, sqf);

  Factorization result;
  for (auto& [g, mult] : sqf) {
    // Distinct-degree factorization.
    PolyModP rest = g;
    PolyModP h = PolyModP::x(p) % rest;
    const Int pp(static_cast<unsigned long>(p));
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      h = powmod(h, pp, rest);
      PolyModP part = gcd(rest, h - PolyModP::x(p));
      if (part.degree() > 0) {
        std::vector<PolyModP> pieces;
        equal_degree(part, d, rng, pieces);
        for (auto& q : pieces) result.emplace_back(q, mult);
        rest = rest / part;
        h = h % rest;
      }
    }
    if (rest.degree() > 0) result.emplace_back(rest.monic(), mult);
  }
  // Merge equal factors (possible across squarefree layers only in theory).
  std::sort(result.begin(), result.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Factorization merged;
  for (auto& fm : result) {
    if (!merged.empty() && merged.back().first == fm.first) merged.back().second += fm.second;
    else merged.push_back(fm);
  }
  return merged;
}

Factorization factor_mod_p(const Poly& t, const Int& p) {
  std::mt19937_64 rng(derive_seed(p.fits_ulong_p() ? p.get_ui() : 0, "factor_mod_p"));
  return factor_mod_p(t, p, rng);
}

Int hensel_lift_root(const Poly& t, const Int& p, const Int& v, unsigned m) {
  if (m == 0) throw Error(Errc::InvalidInput, "lift precision must be >= 1");
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), t.eval(v).get_mpz_t(), p.get_mpz_t());
  if (r != 0) throw Error(Errc::NotRoot, "T(v) is not 0 mod p");
  const Poly dt = t.derivative();
  Int d;
  mpz_fdiv_r(d.get_mpz_t(), dt.eval(v).get_mpz_t(), p.get_mpz_t());
  if (d == 0) throw Error(Errc::NotSimpleRoot, "T'(v) is 0 mod p");

  Int root;
  mpz_fdiv_r(root.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  // Newton iteration doubling the precision each step.
  unsigned prec = 1;
  while (prec < m) {
    prec = std::min(2 * prec, m);
    const Int mod = ipow(p, prec);
    Int fv = t.eval(root), dv = dt.eval(root), inv;
    mpz_fdiv_r(dv.get_mpz_t(), dv.get_mpz_t(), mod.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), mod.get_mpz_t());
    root -= fv * inv;
    mpz_fdiv_r(root.get_mpz_t(), root.get_mpz_t(), mod.get_mpz_t());
  }
  return root;
}

// ---------------------------------------------------------------------------
// Integers

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error(Errc::InvalidInput, "valuation of zero");
  Int m = n;
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::size_t bit_length(const Int& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

double log2_abs(const Int& n) {
  if (n == 0) return -HUGE_VAL;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

namespace {

std::optional<Int> pollard_brent(const Int& n, std::uint64_t budget, std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8 && budget > 0; ++attempt) {
    Int y = Int(static_cast<unsigned long>(rng() % 1000003)) % n;
    Int c = Int(static_cast<unsigned long>(rng() % 1000003 + 1)) % n;
    const std::uint64_t block = 128;
    Int g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Int& v) {
      Int t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (g == 1 && budget > 0) {
      x = y;
      for (Int i = 0; i < r; ++i) y = f(y);
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        const Int lim = std::min(Int(static_cast<unsigned long>(block)), Int(r - k));
        for (Int i = 0; i < lim; ++i) {
          y = f(y);
          Int diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        budget = budget > lim.get_ui() ? budget - lim.get_ui() : 0;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Int diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

bool split_into(const Int& n, std::map<Int, unsigned>& out, std::uint64_t budget) {
  if (n == 1) return true;
  if (is_prime(n)) {
    out[n] += 1;
    return true;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return split_into(s, out, budget) && split_into(s, out, budget);
  }
  auto d = pollard_brent(n, budget, derive_seed(budget, n.get_str()));
  if (!d) return false;
  return split_into(*d, out, budget) && split_into(Int(n / *d), out, budget);
}

}  // namespace

std::optional<std::map<Int, unsigned>> factor_integer(const Int& n_in, std::uint64_t trial_limit,
                                                       std::uint64_t rho_iterations) {
  Int n = abs(n_in);
  if (n == 0) throw Error(Errc::InvalidInput, "cannot factor zero");
  std::map<Int, unsigned> out;
  for (std::uint64_t p = 2; p <= trial_limit; p += (p == 2 ? 1 : 2)) {
    const unsigned long pl = static_cast<unsigned long>(p);
    if (Int(pl) * Int(pl) > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), pl)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), pl);
      ++e;
    }
    if (e) out[Int(pl)] += e;
  }
  if (n == 1) return out;
  if (!split_into(n, out, rho_iterations)) return std::nullopt;
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  // FNV-1a over the stream name, mixed with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : stream) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return splitmix64(seed ^ splitmix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

}  // namespace nfdlog
