#include "nfdlog/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "nfdlog/errors.hpp"

namespace nfdlog {

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

// ---------------------------------------------------------------------------
// Sturm sequences over Q

namespace {

using RatPoly = std::vector<Rat>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rat q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= q * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const Poly& t) {
  std::vector<RatPoly> seq;
  RatPoly p0(t.coeffs().begin(), t.coeffs().end());
  const Poly dt = t.derivative();
  RatPoly p1(dt.coeffs().begin(), dt.coeffs().end());
  seq.push_back(p0);
  if (p1.empty()) return 0;
  seq.push_back(p1);
  for (;;) {
    RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  std::vector<int> at_neg, at_pos;
  for (const auto& p : seq) {
    const int lead = sgn(p.back());
    const int deg = static_cast<int>(p.size()) - 1;
    at_pos.push_back(lead);
    at_neg.push_back(deg % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

// ---------------------------------------------------------------------------
// Irreducibility and monogenicity

namespace {

bool has_rational_root(const Poly& t) {
  // Monic: rational roots are integer divisors of t_0.
  const Int& c0 = t.coeff(0);
  if (c0 == 0) return true;
  auto f = factor_integer(c0);
  if (!f) throw Error(Errc::IrreducibilityUnknown, "cannot factor constant term");
  std::vector<Int> divisors{1};
  for (const auto& [p, e] : *f) {
    const std::size_t base = divisors.size();
    Int pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pk);
    }
  }
  for (const auto& d : divisors)
    if (t.eval(d) == 0 || t.eval(-d) == 0) return true;
  return false;
}

bool eisenstein_somewhere(const Poly& t) {
  const Int g = [&] {
    Int acc = 0;
    for (int i = 0; i < t.degree(); ++i) mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), t.coeff(i).get_mpz_t());
    return acc;
  }();
  if (g <= 1) return false;
  auto f = factor_integer(g);
  if (!f) return false;
  for (const auto& [p, e] : *f) {
    if (!mpz_divisible_p(t.coeff(0).get_mpz_t(), Int(p * p).get_mpz_t())) return true;
  }
  return false;
}

}  // namespace

bool certify_irreducible(const Poly& t) {
  const int n = t.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (has_rational_root(t)) return false;
  if (n <= 3) return true;
  if (eisenstein_somewhere(t)) return true;

  // Factor-degree patterns mod unramified primes: a factorization over Q into
  // degrees {d, n-d} must be realizable as a subset sum at every prime.
  const Int disc = discriminant(t);
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  int primes_used = 0;
  for (std::uint64_t p : primes_up_to(2000)) {
    const Int pp(static_cast<unsigned long>(p));
    if (mpz_divisible_p(disc.get_mpz_t(), pp.get_mpz_t())) continue;
    const auto fac = factor_mod_p(t, pp);
    if (fac.size() == 1 && fac[0].second == 1) return true;
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (const auto& [g, m] : fac) {
      for (int rep = 0; rep < m; ++rep)
        for (int s = n; s >= g.degree(); --s)
          if (sums[s - g.degree()]) sums[s] = true;
    }
    bool any = false;
    for (int d = 1; d < n; ++d) {
      possible[d] = possible[d] && sums[d];
      any = any || possible[d];
    }
    if (!any) return true;
    if (++primes_used >= 60) break;
  }
  throw Error(Errc::IrreducibilityUnknown, "could not certify irreducibility of " + t.to_string());
}

bool is_p_maximal(const Poly& t, const Int& p) {
  if (!p.fits_ulong_p()) throw Error(Errc::InvalidInput, "prime too large");
  const std::uint64_t pu = p.get_ui();
  const auto fac = factor_mod_p(t, p);
  PolyModP g = PolyModP::one(pu), h = PolyModP::one(pu);
  Poly g_lift = Poly::constant(1), h_lift = Poly::constant(1);
  for (const auto& [f, e] : fac) {
    g = g * f;
    for (int i = 1; i < e; ++i) h = h * f;
  }
  g_lift = g.lift();
  h_lift = h.lift();
  // F = (g h - T) / p, then p-maximal iff gcd(F mod p, g, h) = 1.
  const Poly diff = g_lift * h_lift - t;
  const Poly f_poly = diff.div_exact(p);
  PolyModP fbar = PolyModP::reduce(f_poly, pu);
  PolyModP d = gcd(gcd(fbar, g), h);
  return d.degree() == 0;
}

// ---------------------------------------------------------------------------
// Root isolation

namespace {

std::vector<std::complex<double>> aberth_double(const Poly& t) {
  const int n = t.degree();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[i] = t.coeff(i).get_d();
  // Fujiwara-style radius bound.
  double radius = 0;
  for (int k = 1; k <= n; ++k)
    radius = std::max(radius, std::pow(std::fabs(c[n - k] / c[n]), 1.0 / k));
  radius = std::max(radius, 1e-3);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2 * std::numbers::pi * k / n + 0.4);

  auto eval = [&](std::complex<double> x, std::complex<double>& deriv) {
    std::complex<double> v = c[n], d = 0;
    for (int i = n - 1; i >= 0; --i) {
      d = d * x + v;
      v = v * x + c[i];
    }
    deriv = d;
    return v;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    double max_step = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> d;
      const std::complex<double> v = eval(z[k], d);
      if (v == 0.0) continue;
      const std::complex<double> ratio = v / d;
      std::complex<double> s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const std::complex<double> step = ratio / (1.0 - ratio * s);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < 1e-15) break;
  }
  return z;
}

Complex horner(const Poly& p, const Complex& x) {
  const mpfr_prec_t prec = x.precision();
  Complex acc(prec);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    acc.re += Real(p.coeff(i), prec);
  }
  return acc;
}

struct CertifiedRoots {
  std::vector<Complex> roots;
  std::vector<Real> radii;
  bool ok = false;
};

CertifiedRoots refine_and_certify(const Poly& t, const std::vector<std::complex<double>>& start,
                                  mpfr_prec_t wp, int target_bits) {
  const int n = t.degree();
  std::vector<Complex> z;
  z.reserve(start.size());
  for (const auto& s : start) z.emplace_back(Real(s.real(), wp), Real(s.imag(), wp));
  const Poly dt = t.derivative();
  const Real tol = Real::exp2(-(static_cast<long>(wp) - 16), wp);
  for (int iter = 0; iter < 200; ++iter) {
    Real max_step(0.0, wp);
    for (int k = 0; k < n; ++k) {
      const Complex v = horner(t, z[k]);
      if (v.re.is_zero() && v.im.is_zero()) continue;
      const Complex d = horner(dt, z[k]);
      const Complex ratio = v / d;
      Complex s(wp);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const Complex one{Real(1.0, wp), Real(0.0, wp)};
        s = s + one / (z[k] - z[j]);
      }
      const Complex one{Real(1.0, wp), Real(0.0, wp)};
      const Complex step = ratio / (one - ratio * s);
      z[k] = z[k] - step;
      Real mag = step.abs();
      Real scale = z[k].abs();
      if (scale < Real(1.0, wp)) scale = Real(1.0, wp);
      mag = mag / scale;
      if (max_step < mag) max_step = mag;
    }
    if (max_step < tol) break;
  }

  CertifiedRoots out;
  // Inclusion disks: radius_k = n |T(z_k)| / |prod_{j != k} (z_k - z_j)| (T monic).
  for (int k = 0; k < n; ++k) {
    Complex prod{Real(1.0, wp), Real(0.0, wp)};
    for (int j = 0; j < n; ++j)
      if (j != k) prod = prod * (z[k] - z[j]);
    Real pa = prod.abs();
    if (pa.is_zero()) return out;
    out.radii.push_back(Real(static_cast<double>(n), wp) * horner(t, z[k]).abs() / pa);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(out.radii[i] + out.radii[j] < (z[i] - z[j]).abs())) return out;
  const Real limit = Real::exp2(-(target_bits / 2) - 1, wp);
  for (const auto& r : out.radii)
    if (!(r < limit)) return out;
  out.roots = std::move(z);
  out.ok = true;
  return out;
}

}  // namespace

std::shared_ptr<const std::vector<Complex>> NumberField::roots(int precision_bits) const {
  {
    std::lock_guard<std::mutex> lock(roots_mu_);
    auto it = roots_cache_.find(precision_bits);
    if (it != roots_cache_.end()) return it->second;
  }
  const auto start = aberth_double(t_);
  mpfr_prec_t wp = precision_bits + 64;
  for (int attempt = 0; attempt <= 4; ++attempt, wp *= 2) {
    CertifiedRoots cr = refine_and_certify(t_, start, wp, precision_bits);
    if (!cr.ok) continue;
    // A disk meeting the real axis holds a real root: its conjugate disk meets
    // it too, and disks are disjoint.
    std::vector<Complex> reals, upper;
    int lower = 0;
    for (std::size_t k = 0; k < cr.roots.size(); ++k) {
      const Complex& z = cr.roots[k];
      if (abs(z.im) <= cr.radii[k]) {
        reals.emplace_back(z.re.with_precision(precision_bits), Real(0.0, precision_bits));
      } else if (z.im.sign() > 0) {
        upper.emplace_back(z.re.with_precision(precision_bits), z.im.with_precision(precision_bits));
      } else {
        ++lower;
      }
    }
    if (static_cast<int>(reals.size()) != s_ || static_cast<int>(upper.size()) != t_places_ ||
        lower != t_places_)
      continue;
    std::sort(reals.begin(), reals.end(), [](const Complex& a, const Complex& b) { return a.re < b.re; });
    std::sort(upper.begin(), upper.end(), [](const Complex& a, const Complex& b) {
      if (a.re < b.re) return true;
      if (b.re < a.re) return false;
      return a.im < b.im;
    });
    auto result = std::make_shared<std::vector<Complex>>(std::move(reals));
    for (auto& u : upper) result->push_back(std::move(u));
    std::lock_guard<std::mutex> lock(roots_mu_);
    roots_cache_[precision_bits] = result;
    return result;
  }
  throw Error(Errc::PrecisionLoss, "root isolation failed for " + t_.to_string());
}

double NumberField::coefficient_log2_height() const {
  double d = 0;
  for (int i = 0; i < t_.degree(); ++i)
    if (t_.coeff(i) != 0) d = std::max(d, log2_abs(t_.coeff(i)));
  return d;
}

double NumberField::coefficient_l2_norm() const {
  double s = 0;
  for (const auto& c : t_.coeffs()) s += c.get_d() * c.get_d();
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Construction

namespace {

double minkowski_bound_of(int n, int t, const Int& disc) {
  // (n!/n^n) (4/pi)^t sqrt|disc|, in logs to stay finite.
  double lg = std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n)) +
              t * std::log(4.0 / std::numbers::pi) + 0.5 * log2_abs(disc) * std::numbers::ln2;
  return std::exp(lg);
}

}  // namespace

struct FieldBuilder {
  static std::shared_ptr<NumberField> build(const Poly& t) {
    std::shared_ptr<NumberField> f(new NumberField());
    f->t_ = t;
    f->disc_ = discriminant(t);
    f->s_ = count_real_roots(t);
    f->t_places_ = (t.degree() - f->s_) / 2;
    f->minkowski_ = minkowski_bound_of(t.degree(), f->t_places_, f->disc_);
    return f;
  }
};

FieldPtr make_field(const Poly& t, MakeFieldOptions opts) {
  if (t.degree() < 2) throw Error(Errc::InvalidInput, "degree must be at least 2");
  if (!t.is_monic()) throw Error(Errc::NotMonic, t.to_string() + " is not monic");
  if (!certify_irreducible(t)) throw Error(Errc::Reducible, t.to_string() + " is reducible");
  auto f = FieldBuilder::build(t);
  if (!opts.monogenicity_waiver) {
    auto fac = factor_integer(f->disc());
    if (!fac) throw Error(Errc::MonogenicityUnknown, "cannot factor the discriminant");
    for (const auto& [p, e] : *fac) {
      if (e >= 2 && !is_p_maximal(t, p))
        throw Error(Errc::MonogenicityUnknown,
                    "Z[theta] is not " + p.get_str() + "-maximal for " + t.to_string());
    }
  }
  return f;
}

FieldPtr make_kummer_field(long n, const Int& k) {
  if (n < 2 || k < 2) throw Error(Errc::InvalidInput, "Kummer field needs n, K >= 2");
  if (!is_prime(Int(n))) throw Error(Errc::NotPrime, "n = " + std::to_string(n) + " is not prime");
  if (!is_prime(k)) throw Error(Errc::NotPrime, "K = " + k.get_str() + " is not prime");
  const Int nn(n);
  const Int test = ipow(k, static_cast<unsigned long>(n - 1)) - 1;
  if (mpz_divisible_p(test.get_mpz_t(), Int(nn * nn).get_mpz_t()))
    throw Error(Errc::MonogenicityUnknown, "n^2 divides K^(n-1) - 1");

  std::vector<Int> c(static_cast<std::size_t>(n) + 1, Int(0));
  c[0] = -k;
  c[n] = 1;
  auto f = FieldBuilder::build(Poly(std::move(c)));
  const Int expected = ipow(nn, static_cast<unsigned long>(n)) * ipow(k, static_cast<unsigned long>(n - 1));
  if (abs(f->disc()) != expected)
    throw Error(Errc::InvalidInput, "Kummer discriminant mismatch");
  const int s_expected = (n % 2 == 1) ? 1 : 2;
  if (f->real_places() != s_expected) throw Error(Errc::InvalidInput, "Kummer signature mismatch");
  return f;
}

// ---------------------------------------------------------------------------
// Elements

FieldElement::FieldElement(FieldPtr field, Poly rep) : field_(std::move(field)) {
  rep_ = rep.degree() >= field_->degree() ? rep.mod_monic(field_->polynomial()) : std::move(rep);
}

FieldElement FieldElement::from_int(FieldPtr field, const Int& c) {
  return FieldElement(std::move(field), Poly::constant(c));
}

FieldElement FieldElement::theta(FieldPtr field) {
  return FieldElement(std::move(field), Poly::monomial(1));
}

std::vector<Int> FieldElement::coordinates() const {
  std::vector<Int> v(static_cast<std::size_t>(field_->degree()), Int(0));
  for (std::size_t i = 0; i < rep_.coeffs().size(); ++i) v[i] = rep_.coeffs()[i];
  return v;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  return FieldElement(field_, rep_ * o.rep_);
}
FieldElement FieldElement::operator+(const FieldElement& o) const {
  return FieldElement(field_, rep_ + o.rep_);
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return FieldElement(field_, rep_ - o.rep_);
}

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement result = one(field_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Int element_norm(const FieldElement& phi) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "norm of zero");
  return resultant(phi.field()->polynomial(), phi.rep());
}

std::vector<Real> log_embeddings(const FieldElement& phi, int precision_bits) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "log embedding of zero");
  if (precision_bits < 64) throw Error(Errc::InvalidInput, "precision_bits must be >= 64");
  const auto roots = phi.field()->roots(precision_bits);
  std::vector<Real> out;
  out.reserve(roots->size());
  for (const auto& z : *roots) {
    const Complex zz(z.re.with_precision(precision_bits + 32), z.im.with_precision(precision_bits + 32));
    const Real mag = horner(phi.rep(), zz).abs();
    out.push_back(log(mag).with_precision(precision_bits));
  }
  return out;
}

}  // namespace nfdlog
