#include "nfdlog/relations.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "nfdlog/errors.hpp"

namespace nfdlog {

std::optional<std::size_t> FactorBase::index_of(const PrimeIdeal& p) const {
  auto it = above.find(p.p);
  if (it == above.end()) return std::nullopt;
  for (const auto& [q, idx] : it->second)
    if (q == p && idx >= 0) return static_cast<std::size_t>(idx);
  return std::nullopt;
}

FactorBase build_factor_base(const FieldPtr& field, const Int& B) {
  if (B < 2) throw Error(Errc::InvalidInput, "factor base bound must be at least 2");
  FactorBase fb;
  fb.field = field;
  fb.B = B;
  std::map<Int, std::vector<PrimeIdeal>> split;
  for (std::uint64_t p : primes_up_to(B.get_ui())) {
    const Int pp(static_cast<unsigned long>(p));
    auto primes = split_prime(field, pp);
    bool any = false;
    for (const auto& P : primes)
      if (!P.inert && P.norm <= B) {
        fb.primes.push_back(P);
        any = true;
      }
    if (any) split.emplace(pp, std::move(primes));
  }
  std::sort(fb.primes.begin(), fb.primes.end());
  for (auto& [p, primes] : split) {
    auto& list = fb.above[p];
    for (auto& P : primes) {
      long idx = -1;
      for (std::size_t i = 0; i < fb.primes.size(); ++i)
        if (fb.primes[i] == P) idx = static_cast<long>(i);
      list.emplace_back(std::move(P), idx);
    }
  }
  return fb;
}

std::optional<std::vector<long>> test_smooth(const FieldElement& phi, const FactorBase& fb) {
  if (phi.is_zero()) throw Error(Errc::ZeroElement, "smoothness test of zero");
  Int n = abs(element_norm(phi));
  std::vector<long> e(fb.size(), 0);
  for (const auto& [p, list] : fb.above) {
    if (n == 1) break;
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
    unsigned v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
      ++v;
    }
    std::vector<PrimeIdeal> primes;
    for (const auto& item : list) primes.push_back(item.first);
    const auto vals = valuations_above(phi, primes, v);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (vals[i] == 0) continue;
      if (list[i].second < 0) return std::nullopt;
      e[static_cast<std::size_t>(list[i].second)] = vals[i];
    }
  }
  if (n != 1) return std::nullopt;
  return e;
}

IntMatrix RelationMatrix::mz() const {
  const std::size_t cols = rows.empty() ? 0 : rows[0].e.size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].e[j];
  return m;
}

std::vector<std::vector<double>> RelationMatrix::mr() const {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back(r.logs);
  return out;
}

bool verify_relation(const Relation& rel, const FactorBase& fb) {
  IdealFactorization fac;
  for (std::size_t i = 0; i < rel.e.size(); ++i) {
    if (rel.e[i] < 0) return false;
    if (rel.e[i] > 0) fac[fb.primes[i]] = static_cast<unsigned>(rel.e[i]);
  }
  return ideal_from_factorization(fb.field, fac) == principal_ideal(rel.phi);
}

// ---------------------------------------------------------------------------
// Enumeration

Siever::Siever(const FactorBase& fb, SieveOptions opts) : fb_(fb), opts_(opts) {
  if (opts_.a < 0 || opts_.k < 0) throw Error(Errc::InvalidInput, "a and k must be non-negative");
  if (opts_.a > 30) throw Error(Errc::InvalidInput, "coefficient bound too large");
  base_ = (std::uint64_t{1} << (opts_.a + 1)) + 1;
  unsigned __int128 size = 1;
  for (long i = 0; i <= opts_.k; ++i) {
    size *= base_;
    if (size >> 62) throw Error(Errc::InvalidInput, "search space too large");
  }
  size_ = static_cast<std::uint64_t>(size);
  int bits = 2;
  while ((std::uint64_t{1} << bits) < size_) bits += 2;
  half_bits_ = bits / 2;
  std::uint64_t s = derive_seed(opts_.seed, "sieve");
  for (auto& k : keys_) k = s = splitmix64(s);
}

std::uint64_t Siever::permute(std::uint64_t x) const {
  // Balanced Feistel network on 2 * half_bits_ bits, cycle-walked into [0, size_).
  const std::uint64_t mask = (std::uint64_t{1} << half_bits_) - 1;
  do {
    std::uint64_t l = x >> half_bits_, r = x & mask;
    for (auto k : keys_) {
      const std::uint64_t t = l ^ (splitmix64(r ^ k) & mask);
      l = r;
      r = t;
    }
    x = (l << half_bits_) | r;
  } while (x >= size_);
  return x;
}

std::optional<Poly> Siever::candidate(std::uint64_t position) const {
  std::uint64_t idx = permute(position);
  std::vector<Int> c(static_cast<std::size_t>(opts_.k) + 1);
  const long off = 1L << opts_.a;
  for (auto& x : c) {
    x = static_cast<long>(idx % base_) - off;
    idx /= base_;
  }
  Poly p(std::move(c));
  if (p.is_zero() || p.lead() < 0) return std::nullopt;
  return p;
}

namespace {

std::optional<Relation> try_relation(const FactorBase& fb, const Poly& a, int precision_bits) {
  FieldElement phi(fb.field, a);
  auto e = test_smooth(phi, fb);
  if (!e) return std::nullopt;
  Relation rel{phi, std::move(*e), {}};
  const auto logs = log_embeddings(phi, precision_bits);
  const int r = fb.field->unit_rank();
  for (int i = 0; i < r; ++i) rel.logs.push_back(logs[i].to_double());
  if (!verify_relation(rel, fb)) throw Error(Errc::InvalidInput, "relation failed verification: " + a.to_string());
  return rel;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += jobs) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Relation> Siever::next(std::size_t count, std::set<std::vector<Int>>& skip) {
  std::vector<Relation> out;
  const std::size_t batch = 64 * std::max(1u, opts_.jobs);
  while (out.size() < count && pos_ < size_) {
    const std::uint64_t end = std::min<std::uint64_t>(size_, pos_ + batch);
    std::vector<std::optional<Poly>> cands;
    for (std::uint64_t p = pos_; p < end; ++p) {
      auto c = candidate(p);
      if (c && skip.count(c->coeffs())) c.reset();
      cands.push_back(std::move(c));
    }
    std::vector<std::optional<Relation>> found(cands.size());
    parallel_for(cands.size(), opts_.jobs, [&](std::size_t i) {
      if (cands[i]) found[i] = try_relation(fb_, *cands[i], opts_.precision_bits);
    });
    for (std::size_t i = 0; i < cands.size(); ++i) {
      ++pos_;
      if (!cands[i]) continue;
      ++tested_;
      if (found[i] && skip.insert(cands[i]->coeffs()).second) {
        out.push_back(std::move(*found[i]));
        if (out.size() == count) break;
      }
    }
  }
  return out;
}

RelationMatrix sieve_relations(const FactorBase& fb, const SieveOptions& opts, std::size_t count) {
  if (fb.size() == 0) throw Error(Errc::InvalidInput, "empty factor base");
  Siever s(fb, opts);
  std::set<std::vector<Int>> seen;
  RelationMatrix m;
  m.rows = s.next(count, seen);
  if (m.rows.size() < count)
    throw Error(Errc::SearchSpaceExhausted, "found " + std::to_string(m.rows.size()) + " of " +
                                                std::to_string(count) + " relations");
  return m;
}

AssembleResult assemble_and_check(const RelationMatrix& m, std::size_t n_primes) {
  AssembleResult res;
  if (n_primes == 0) {
    res.hnf_det = 1;
    return res;
  }
  if (m.rows.empty()) throw Error(Errc::RankDeficient, "no relations");
  const HnfResult h = hnf(m.mz(), false);
  res.rank = h.rank;
  if (h.rank < n_primes)
    throw Error(Errc::RankDeficient, "rank " + std::to_string(h.rank) + " < " + std::to_string(n_primes));
  res.hnf_det = 1;
  for (std::size_t i = 0; i < h.rank; ++i) res.hnf_det *= h.h(i, h.pivots[i]);
  return res;
}

RelationMatrix collect_relations(const FactorBase& fb, const CollectOptions& opts) {
  const std::size_t N = fb.size();
  const auto r = static_cast<std::size_t>(fb.field->unit_rank());
  RelationMatrix m;
  std::set<std::vector<Int>> seen;
  SieveOptions so = opts.sieve;
  const std::uint64_t master = so.seed;
  so.seed = derive_seed(master, static_cast<std::uint64_t>(so.a));
  auto siever = std::make_unique<Siever>(fb, so);

  auto gather = [&](std::size_t want) {
    while (want > 0) {
      auto got = siever->next(want, seen);
      want -= got.size();
      for (auto& g : got) m.rows.push_back(std::move(g));
      if (want > 0 && siever->exhausted()) {
        if (so.a >= opts.max_a)
          throw Error(Errc::SearchSpaceExhausted, "search space exhausted at a = " + std::to_string(so.a));
        ++so.a;
        so.seed = derive_seed(master, static_cast<std::uint64_t>(so.a));
        siever = std::make_unique<Siever>(fb, so);
      }
    }
  };

  gather(N + static_cast<std::size_t>(opts.K_extra) * r + 10);
  if (N == 0) return m;
  AssembleResult res;
  for (int attempt = 0;; ++attempt) {
    try {
      res = assemble_and_check(m, N);
      break;
    } catch (const Error& e) {
      if (e.code() != Errc::RankDeficient || attempt >= 20) throw;
      gather(N);
    }
  }
  Int prev = res.hnf_det;
  int same = 0;
  for (int i = 0; i < opts.max_stabilize && same < 2; ++i) {
    gather(N);
    const Int det = assemble_and_check(m, N).hnf_det;
    same = det == prev ? same + 1 : 0;
    prev = det;
  }
  return m;
}

void extend_relations(const FactorBase& fb, RelationMatrix& m, const CollectOptions& opts, std::size_t count,
                      std::uint64_t stream) {
  std::set<std::vector<Int>> seen;
  for (const auto& row : m.rows) seen.insert(row.phi.rep().coeffs());
  SieveOptions so = opts.sieve;
  const std::uint64_t master = derive_seed(so.seed, "extend/" + std::to_string(stream));
  while (count > 0) {
    so.seed = derive_seed(master, static_cast<std::uint64_t>(so.a));
    Siever s(fb, so);
    auto got = s.next(count, seen);
    count -= got.size();
    for (auto& g : got) m.rows.push_back(std::move(g));
    if (count == 0) break;
    if (so.a >= opts.max_a)
      throw Error(Errc::SearchSpaceExhausted, "search space exhausted at a = " + std::to_string(so.a));
    ++so.a;
  }
}

SieveStats sieve_statistics(const FactorBase& fb, const SieveOptions& opts, std::uint64_t trials) {
  Siever s(fb, opts);
  std::vector<Poly> cands;
  for (std::uint64_t p = 0; p < s.space_size() && cands.size() < trials; ++p)
    if (auto c = s.candidate(p)) cands.push_back(std::move(*c));
  std::vector<char> smooth(cands.size(), 0);
  std::vector<double> lg(cands.size(), 0);
  parallel_for(cands.size(), opts.jobs, [&](std::size_t i) {
    FieldElement phi(fb.field, cands[i]);
    if (phi.is_zero()) return;
    lg[i] = log2_abs(element_norm(phi));
    smooth[i] = test_smooth(phi, fb).has_value();
  });
  SieveStats st;
  st.trials = cands.size();
  double sum = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    st.smooth += smooth[i] ? 1 : 0;
    st.max_log2_norm = std::max(st.max_log2_norm, lg[i]);
    sum += lg[i];
  }
  st.mean_log2_norm = cands.empty() ? 0 : sum / static_cast<double>(cands.size());
  return st;
}

Int norm_bound(const NumberField& field, long a, long k) {
  Int sq = 0;
  for (const auto& c : field.polynomial().coeffs()) sq += c * c;
  Int root;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  if (root * root < sq) root += 1;
  const Int R = root + 1;
  const Int per = Int(k + 1) * ipow(Int(2), static_cast<unsigned long>(a)) * ipow(R, static_cast<unsigned long>(k));
  return ipow(per, static_cast<unsigned long>(field.degree()));
}

long entry_bound(const Int& prime_norm, const Int& bound) {
  long e = 0;
  Int acc = prime_norm;
  while (acc <= bound) {
    ++e;
    acc *= prime_norm;
  }
  return e;
}

}  // namespace nfdlog
