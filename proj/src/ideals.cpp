#include "nfdlog/ideals.hpp"

#include <cmath>
#include <sstream>

#include "nfdlog/errors.hpp"

namespace nfdlog {

namespace {

std::vector<Int> coords_of(const Poly& x, int n) {
  std::vector<Int> v(static_cast<std::size_t>(n), Int(0));
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) v[i] = x.coeffs()[i];
  return v;
}

Poly poly_of(const IntVec& v) { return Poly(v); }

Poly reduce_mod(const Poly& x, const Poly& t) {
  return x.degree() >= t.degree() ? x.mod_monic(t) : x;
}

// Square HNF of the lattice spanned by `rows`, which must contain d Z^n when d > 0.
IntMatrix square_hnf(std::vector<IntVec> rows, int n, const Int& d) {
  if (d > 0) {
    for (auto& r : rows)
      for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    for (int i = 0; i < n; ++i) {
      IntVec r(static_cast<std::size_t>(n), Int(0));
      r[i] = d;
      rows.push_back(std::move(r));
    }
  }
  HnfResult r = hnf(IntMatrix::from_rows(rows, static_cast<std::size_t>(n)), false);
  if (r.rank != static_cast<std::size_t>(n)) throw Error(Errc::InvalidInput, "ideal is not of full rank");
  return r.h.top(static_cast<std::size_t>(n));
}

std::vector<IntVec> multiples(const FieldPtr& field, const Poly& g) {
  const int n = field->degree();
  std::vector<IntVec> rows;
  Poly cur = reduce_mod(g, field->polynomial());
  for (int i = 0; i < n; ++i) {
    rows.push_back(coords_of(cur, n));
    cur = reduce_mod(cur * Poly::monomial(1), field->polynomial());
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Prime ideals

Int PrimeIdeal::lifted_root(const Poly& t, unsigned m) const {
  if (!root || e != 1) throw Error(Errc::InvalidInput, "lift needs an unramified degree-one prime");
  return hensel_lift_root(t, p, *root, m);
}

bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.p != b.p) return a.p < b.p;
  return a.g < b.g;
}

std::string PrimeIdeal::to_string() const {
  std::ostringstream os;
  os << "(" << p.get_str() << ", " << g.lift().to_string("t") << ")";
  return os.str();
}

std::vector<PrimeIdeal> split_prime(const FieldPtr& field, const Int& p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, p.get_str() + " is not prime");
  const Factorization fac = factor_mod_p(field->polynomial(), p);
  std::vector<PrimeIdeal> out;
  for (const auto& [g, e] : fac) {
    PrimeIdeal P;
    P.p = p;
    P.g = g;
    P.e = e;
    P.f = g.degree();
    P.norm = ipow(p, static_cast<unsigned long>(P.f));
    P.inert = fac.size() == 1 && e == 1 && P.f == field->degree();
    if (P.f == 1) P.root = Int((p.get_ui() - g.coeff(0)) % p.get_ui());
    out.push_back(std::move(P));
  }
  return out;
}

bool prime_contains(const PrimeIdeal& P, const Poly& x) {
  const PolyModP r = PolyModP::reduce(x, P.p.get_ui()) % P.g;
  return r.is_zero();
}

// ---------------------------------------------------------------------------
// Ideals

Ideal::Ideal(FieldPtr field, IntMatrix hnf) : field_(std::move(field)), h_(std::move(hnf)) {
  const auto n = static_cast<std::size_t>(field_->degree());
  if (h_.rows() != n || h_.cols() != n) throw Error(Errc::InvalidInput, "ideal HNF must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    if (h_(i, i) <= 0) throw Error(Errc::InvalidInput, "ideal HNF must have a positive diagonal");
}

Ideal Ideal::unit(const FieldPtr& field) {
  return Ideal(field, IntMatrix::identity(static_cast<std::size_t>(field->degree())));
}

Ideal Ideal::generated_by(const FieldPtr& field, const std::vector<Poly>& gens) {
  std::vector<IntVec> rows;
  for (const auto& g : gens) {
    auto m = multiples(field, g);
    rows.insert(rows.end(), m.begin(), m.end());
  }
  return Ideal(field, square_hnf(std::move(rows), field->degree(), Int(0)));
}

Ideal Ideal::two_element(const FieldPtr& field, const Int& u, const Poly& w) {
  if (u == 0) throw Error(Errc::InvalidInput, "two-element form needs u != 0");
  std::vector<IntVec> rows = multiples(field, w);
  Ideal I(field, square_hnf(std::move(rows), field->degree(), abs(u)));
  I.two_elt = std::make_pair(abs(u), reduce_mod(w, field->polynomial()));
  return I;
}

Ideal Ideal::from_prime(const FieldPtr& field, const PrimeIdeal& p) {
  return two_element(field, p.p, p.generator());
}

Int Ideal::norm() const {
  Int d = 1;
  for (std::size_t i = 0; i < h_.rows(); ++i) d *= h_(i, i);
  return d;
}

bool Ideal::is_unit() const { return norm() == 1; }

bool Ideal::contains(const Poly& x) const {
  const int n = field_->degree();
  IntVec c = coords_of(reduce_mod(x, field_->polynomial()), n);
  Int y;
  for (int i = 0; i < n; ++i) {
    if (!mpz_divisible_p(c[i].get_mpz_t(), h_(i, i).get_mpz_t())) return false;
    mpz_divexact(y.get_mpz_t(), c[i].get_mpz_t(), h_(i, i).get_mpz_t());
    if (y != 0)
      for (int j = i; j < n; ++j) mpz_submul(c[j].get_mpz_t(), y.get_mpz_t(), h_(i, j).get_mpz_t());
  }
  return true;
}

bool Ideal::contained_in(const Ideal& j) const {
  for (std::size_t i = 0; i < h_.rows(); ++i)
    if (!j.contains(poly_of(h_.row(i)))) return false;
  return true;
}

Int Ideal::min_integer() const {
  const int n = field_->degree();
  // Solve y H = e_0 over Q; the answer is the lcm of the denominators of y.
  RatVec c(static_cast<std::size_t>(n), Rat(0));
  c[0] = 1;
  Int l = 1;
  for (int i = 0; i < n; ++i) {
    Rat y = c[i] / h_(i, i);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), y.get_den_mpz_t());
    if (y != 0)
      for (int j = i; j < n; ++j) c[j] -= y * h_(i, j);
  }
  return l;
}

IntMatrix multiplication_matrix(const FieldPtr& field, const Poly& gamma) {
  return IntMatrix::from_rows(multiples(field, gamma), static_cast<std::size_t>(field->degree()));
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "ideals from different fields");
  const FieldPtr& F = a.field();
  const int n = F->degree();
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  std::vector<IntVec> rows;
  if (a.two_elt && b.two_elt) {
    // (u1, w1)(u2, w2) is generated by u1u2, u1w2, u2w1, w1w2.
    const auto& [u1, w1] = *a.two_elt;
    const auto& [u2, w2] = *b.two_elt;
    for (const Poly& g : {w2 * u1, w1 * u2, w1 * w2}) {
      auto m = multiples(F, g);
      rows.insert(rows.end(), m.begin(), m.end());
    }
    return Ideal(F, square_hnf(std::move(rows), n, u1 * u2));
  }
  const Poly& t = F->polynomial();
  for (std::size_t i = 0; i < a.hnf().rows(); ++i) {
    const Poly x = poly_of(a.hnf().row(i));
    for (std::size_t j = 0; j < b.hnf().rows(); ++j)
      rows.push_back(coords_of(reduce_mod(x * poly_of(b.hnf().row(j)), t), n));
  }
  return Ideal(F, square_hnf(std::move(rows), n, a.min_integer() * b.min_integer()));
}

Ideal ideal_pow(const Ideal& a, unsigned long e) {
  Ideal result = Ideal::unit(a.field()), base = a;
  while (e) {
    if (e & 1) result = ideal_mul(result, base);
    e >>= 1;
    if (e) base = ideal_mul(base, base);
  }
  return result;
}

Ideal principal_ideal(const FieldElement& phi) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "principal ideal of zero");
  const Int n = abs(element_norm(phi));
  Ideal I(phi.field(), square_hnf(multiples(phi.field(), phi.rep()), phi.field()->degree(), n));
  I.two_elt = std::make_pair(n, phi.rep());
  return I;
}

// ---------------------------------------------------------------------------
// Division and valuations

namespace {

// det(H) H^-1 for an upper-triangular H.
IntMatrix adjugate_upper(const IntMatrix& h, const Int& det) {
  const std::size_t n = h.rows();
  IntMatrix adj(n, n);
  // Solve H X = det I column by column via back substitution.
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = n; i-- > 0;) {
      Rat s = (i == c) ? Rat(det) : Rat(0);
      for (std::size_t j = i + 1; j < n; ++j) s -= Rat(h(i, j)) * x[j];
      x[i] = s / h(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].get_den() != 1) throw Error(Errc::InvalidInput, "adjugate is not integral");
      adj(i, c) = x[i].get_num();
    }
  }
  return adj;
}

}  // namespace

std::optional<Ideal> ideal_divide(const Ideal& I, const FieldPtr& field, const PrimeIdeal& P) {
  const int n = field->degree();
  for (std::size_t i = 0; i < I.hnf().rows(); ++i)
    if (!prime_contains(P, poly_of(I.hnf().row(i)))) return std::nullopt;
  const Int m = I.norm();
  const IntMatrix adj = adjugate_upper(I.hnf(), m);
  // x in (I : P) iff x p adj(H) and x g adj(H) vanish mod m.
  const IntMatrix a1 = multiplication_matrix(field, Poly::constant(P.p)) * adj;
  const IntMatrix a2 = multiplication_matrix(field, P.generator()) * adj;
  const std::size_t N = static_cast<std::size_t>(n);
  IntMatrix big(3 * N, 3 * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      mpz_mod(big(i, j).get_mpz_t(), a1(i, j).get_mpz_t(), m.get_mpz_t());
      mpz_mod(big(i, N + j).get_mpz_t(), a2(i, j).get_mpz_t(), m.get_mpz_t());
    }
    big(i, 2 * N + i) = 1;
  }
  for (std::size_t j = 0; j < 2 * N; ++j) big(N + j, j) = m;
  HnfResult r = hnf(big, false);
  std::size_t first = 0;
  while (first < r.rank && r.pivots[first] < 2 * N) ++first;
  if (r.rank - first != N) throw Error(Errc::InvalidInput, "colon ideal is not of full rank");
  IntMatrix j(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t c = 0; c < N; ++c) j(i, c) = r.h(first + i, 2 * N + c);
  Ideal J(field, std::move(j));
  if (!(ideal_mul(J, Ideal::from_prime(field, P)) == I)) return std::nullopt;
  return J;
}

unsigned ideal_valuation(const Ideal& I, const PrimeIdeal& P) {
  const FieldPtr& F = I.field();
  unsigned v = 0;
  Ideal cur = I;
  for (;;) {
    if (!mpz_divisible_p(cur.norm().get_mpz_t(), P.norm.get_mpz_t())) return v;
    auto next = ideal_divide(cur, F, P);
    if (!next) return v;
    cur = std::move(*next);
    ++v;
  }
}

unsigned element_valuation_by_division(const FieldElement& phi, const PrimeIdeal& P) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "valuation of zero");
  if (!prime_contains(P, phi.rep())) return 0;
  return ideal_valuation(principal_ideal(phi), P);
}

unsigned element_valuation(const FieldElement& phi, const PrimeIdeal& P) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "valuation of zero");
  if (!prime_contains(P, phi.rep())) return 0;
  if (P.f != 1 || P.e != 1) return element_valuation_by_division(phi, P);
  const Int norm = abs(element_norm(phi));
  const unsigned vp = valuation(norm, P.p);
  // m = ceil(2 + log_p N), doubled until A(v*) is nonzero mod p^m.
  unsigned m = 2 + static_cast<unsigned>(std::ceil(log2_abs(norm) / log2_abs(P.p)));
  m = std::max(m, vp + 1);
  const Poly& t = phi.field()->polynomial();
  for (int attempt = 0; attempt < 4; ++attempt, m *= 2) {
    const Int pm = ipow(P.p, m);
    const Int v = P.lifted_root(t, m);
    Int a = phi.rep().eval(v);
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), pm.get_mpz_t());
    if (a != 0) return valuation(a, P.p);
  }
  throw Error(Errc::PrecisionExceeded, "Hensel precision insufficient");
}

std::vector<unsigned> valuations_above(const FieldElement& phi, const std::vector<PrimeIdeal>& above,
                                       unsigned vp_norm) {
  std::vector<unsigned> out(above.size(), 0);
  if (vp_norm == 0 || above.empty()) return out;
  // Deduce one prime from the norm identity; prefer one that would need division.
  std::size_t skip = above.size() - 1;
  for (std::size_t i = 0; i < above.size(); ++i)
    if (above[i].f != 1 || above[i].e != 1) skip = i;
  unsigned used = 0;
  for (std::size_t i = 0; i < above.size(); ++i) {
    if (i == skip) continue;
    out[i] = element_valuation(phi, above[i]);
    used += out[i] * static_cast<unsigned>(above[i].f);
  }
  if (used > vp_norm || (vp_norm - used) % static_cast<unsigned>(above[skip].f) != 0)
    throw Error(Errc::InvalidInput, "norm identity violated at p = " + above[skip].p.get_str());
  out[skip] = (vp_norm - used) / static_cast<unsigned>(above[skip].f);
  return out;
}

IdealFactorization factor_ideal(const Ideal& I, std::uint64_t limit) {
  IdealFactorization out;
  const Int n = I.norm();
  if (n == 1) return out;
  auto fac = factor_integer(n, limit);
  if (!fac) throw Error(Errc::Unfactored, "cannot factor norm " + n.get_str());
  for (const auto& [p, k] : *fac) {
    if (!p.fits_ulong_p() || p >= (Int(1) << 62)) throw Error(Errc::Unfactored, "prime too large: " + p.get_str());
    const auto above = split_prime(I.field(), p);
    unsigned used = 0;
    for (const auto& P : above) {
      if (used == k) break;
      const unsigned v = ideal_valuation(I, P);
      if (v) out[P] = v;
      used += v * static_cast<unsigned>(P.f);
    }
    if (used != k) throw Error(Errc::InvalidInput, "norm identity violated at p = " + p.get_str());
  }
  return out;
}

Ideal ideal_from_factorization(const FieldPtr& field, const IdealFactorization& fac) {
  Ideal acc = Ideal::unit(field);
  for (const auto& [P, e] : fac) acc = ideal_mul(acc, ideal_pow(Ideal::from_prime(field, P), e));
  return acc;
}

}  // namespace nfdlog
