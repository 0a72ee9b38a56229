#include "nfdlog/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nfdlog/errors.hpp"

namespace nfdlog {

bool is_reduced(const QuadForm& f) {
  if (!(cmpabs(f.b, f.a) <= 0 && f.a <= f.c)) return false;
  if ((cmpabs(f.b, f.a) == 0 || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm reduce(QuadForm f) {
  const Int d = f.disc();
  if (d >= 0 || f.a <= 0) throw Error(Errc::InvalidInput, "reduction needs a positive definite form");
  for (;;) {
    if (f.b <= -f.a || f.b > f.a) {
      const Int two_a = 2 * f.a;
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), f.b.get_mpz_t(), two_a.get_mpz_t());
      if (r > f.a) r -= two_a;
      f.b = r;
      f.c = (f.b * f.b - d) / (4 * f.a);
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  if (f.disc() != g.disc()) throw Error(Errc::InvalidInput, "composition of forms of different discriminants");
  QuadForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const Int s = (f1.b + f2.b) / 2;
  const Int n = f2.b - s;
  Int y1, d;
  if (mpz_divisible_p(f2.a.get_mpz_t(), f1.a.get_mpz_t())) {
    y1 = 0;
    d = f1.a;
  } else {
    Int v;
    mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
  }
  Int x2, y2, d1;
  if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), y2.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    y2 = -y2;
  }
  const Int v1 = f1.a / d1, v2 = f2.a / d1;
  Int r = y1 * y2 * n - x2 * f2.c;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), v1.get_mpz_t());
  QuadForm out;
  out.b = f2.b + 2 * v2 * r;
  out.a = v1 * v2;
  out.c = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
  return reduce(out);
}

QuadForm principal_form(const Int& disc) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), disc.get_mpz_t(), 4);
  if (disc >= 0 || (r != 0 && r != 1)) throw Error(Errc::BadDiscriminant, "need D < 0, D = 0 or 1 mod 4");
  const Int b = r;
  return QuadForm{1, b, (b * b - disc) / 4};
}

QuadForm form_pow(const QuadForm& f, const Int& e) {
  QuadForm base = f;
  Int k = e;
  if (k < 0) {
    base.b = -base.b;
    base = reduce(base);
    k = -k;
  }
  QuadForm acc = principal_form(f.disc());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = compose(acc, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

Int form_order(const QuadForm& f) {
  const QuadForm one = principal_form(f.disc());
  QuadForm acc = reduce(f);
  Int m = 1;
  while (!(acc == one)) {
    acc = compose(acc, f);
    ++m;
    if (m > Int(1) << 32) throw Error(Errc::TooLarge, "form order too large");
  }
  return m;
}

IntVec abelian_structure(const Int& order, const std::function<Int(const Int&)>& killed) {
  if (order <= 0) throw Error(Errc::InvalidInput, "group order must be positive");
  if (order == 1) return {};
  const auto fac = factor_integer(order);
  if (!fac) throw Error(Errc::Unfactored, "cannot factor group order");
  // Per prime, partition lambda of the p-part, largest first.
  std::vector<std::pair<Int, std::vector<unsigned>>> parts;
  std::size_t width = 0;
  for (const auto& [p, e] : *fac) {
    std::vector<unsigned> at_least;  // at_least[k-1] = #{i : lambda_i >= k}
    Int prev = 1, pk = 1;
    for (unsigned k = 1;; ++k) {
      pk *= p;
      const Int n = killed(pk);
      const Int ratio = n / prev;
      at_least.push_back(static_cast<unsigned>(valuation(ratio, p)));
      prev = n;
      if (at_least.back() == 0 || n == ipow(p, e)) break;
    }
    std::vector<unsigned> lambda;
    for (unsigned i = 1; !at_least.empty() && i <= at_least[0]; ++i) {
      unsigned l = 0;
      for (const auto c : at_least)
        if (c >= i) ++l;
      lambda.push_back(l);
    }
    width = std::max(width, lambda.size());
    parts.emplace_back(p, std::move(lambda));
  }
  IntVec out(width, Int(1));
  for (const auto& [p, lambda] : parts)
    for (std::size_t j = 0; j < lambda.size(); ++j) out[j] *= ipow(p, lambda[j]);
  std::reverse(out.begin(), out.end());
  return out;
}

ClassGroupInfo bqf_class_group(const Int& disc) {
  const QuadForm one = principal_form(disc);
  ClassGroupInfo info;
  const Int ad = -disc;
  for (Int a = 1; 3 * a * a <= ad; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (((b - disc) & 1) != 0) continue;
      const Int num = b * b - disc;
      if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t())) continue;
      const Int c = num / (4 * a);
      if (c < a || (a == c && b < 0)) continue;
      Int g = gcd(a, b);
      g = gcd(g, c);
      if (g != 1) continue;
      info.forms.push_back({a, b, c});
    }
  }
  std::sort(info.forms.begin(), info.forms.end());
  info.h = static_cast<unsigned long>(info.forms.size());
  info.structure = abelian_structure(info.h, [&](const Int& m) {
    unsigned long n = 0;
    for (const auto& f : info.forms)
      if (form_pow(f, m) == one) ++n;
    return Int(n);
  });
  return info;
}

namespace {

std::optional<IntVec> relation_over(const FieldElement& phi, const std::vector<PrimeIdeal>& s,
                                    const std::vector<std::uint64_t>& primes, const Int& bound) {
  const Int norm = abs(element_norm(phi));
  Int m = norm;
  IntVec row(s.size(), Int(0));
  for (const auto l : primes) {
    if (m == 1) break;
    const Int li(static_cast<unsigned long>(l));
    if (!mpz_divisible_p(m.get_mpz_t(), li.get_mpz_t())) continue;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), li.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), li.get_mpz_t());
      ++v;
    }
    const auto above = split_prime(phi.field(), li);
    const auto vals = valuations_above(phi, above, v);
    for (std::size_t i = 0; i < above.size(); ++i) {
      if (vals[i] == 0) continue;
      if (above[i].norm > bound) return std::nullopt;
      const auto it = std::find(s.begin(), s.end(), above[i]);
      row[static_cast<std::size_t>(it - s.begin())] = vals[i];
    }
  }
  if (m != 1) return std::nullopt;
  return row;
}

}  // namespace

ClassGroupInfo enumerate_class_group(const FieldPtr& field) {
  const double mb = field->minkowski_bound();
  if (mb > 1e6) throw Error(Errc::TooLarge, "Minkowski bound above 10^6");
  const Int bound(static_cast<unsigned long>(std::floor(mb)));
  const auto primes = primes_up_to(bound.get_ui());
  std::vector<PrimeIdeal> s;
  for (const auto p : primes)
    for (auto& P : split_prime(field, Int(static_cast<unsigned long>(p))))
      if (P.norm <= bound) s.push_back(std::move(P));
  ClassGroupInfo info;
  if (s.empty()) {
    info.h = 1;
    return info;
  }
  const std::size_t N = s.size();
  const int n = field->degree();
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < N; ++i)
    if (s[i].inert) {
      IntVec e(N, Int(0));
      e[i] = 1;
      rows.push_back(std::move(e));
    }
  IntMatrix basis;
  bool have_basis = false;
  int stable = 0;
  long prev_h = 0;
  for (long H = 1;; H *= 2) {
    if (std::pow(2.0 * H + 1, n) > 4e6) throw Error(Errc::TooLarge, "height ladder did not stabilize");
    // New shell: max |c_i| in (prev_h, H], one of each +- pair.
    std::vector<long> c(static_cast<std::size_t>(n), -H);
    for (;;) {
      long sup = 0;
      for (const auto x : c) sup = std::max(sup, std::labs(x));
      const auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
      if (sup > prev_h && first != c.end() && *first > 0) {
        std::vector<Int> coeffs;
        for (const auto x : c) coeffs.emplace_back(x);
        FieldElement phi(field, Poly(std::move(coeffs)));
        if (auto row = relation_over(phi, s, primes, bound)) rows.push_back(std::move(*row));
      }
      std::size_t j = 0;
      while (j < c.size() && c[j] == H) c[j++] = -H;
      if (j == c.size()) break;
      ++c[j];
    }
    prev_h = H;
    if (have_basis)
      for (std::size_t r = 0; r < basis.rows(); ++r) rows.push_back(basis.row(r));
    if (rows.empty()) continue;
    const IntMatrix next = hnf_basis(IntMatrix::from_rows(rows));
    rows.clear();
    if (next.rows() == N && have_basis && next == basis) ++stable;
    else stable = 0;
    basis = next;
    have_basis = true;
    if (stable >= 2) break;
  }
  info.h = abs(determinant(basis));
  for (const auto& d : snf(basis))
    if (d != 1) info.structure.push_back(d);
  return info;
}

QuadForm ideal_to_form(const Ideal& i) {
  const Poly& t = i.field()->polynomial();
  if (t.degree() != 2 || t.coeff(1) != 0) throw Error(Errc::InvalidInput, "form of an ideal needs T = X^2 - d");
  const Int d = -t.coeff(0);
  const IntMatrix& h = i.hnf();
  IntMatrix swapped(2, 2);
  for (std::size_t r = 0; r < 2; ++r) {
    swapped(r, 0) = h(r, 1);
    swapped(r, 1) = h(r, 0);
  }
  const IntMatrix b = hnf_basis(swapped);
  const Int m = b(0, 0);
  const Int a = b(1, 1) / m;
  const Int s = b(0, 1) / m;
  const Int num = s * s - d;
  if (!mpz_divisible_p(num.get_mpz_t(), a.get_mpz_t())) throw std::logic_error("ideal is not an order ideal");
  return reduce(QuadForm{a, 2 * s, num / a});
}

}  // namespace nfdlog
