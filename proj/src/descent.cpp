#include "nfdlog/descent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nfdlog/errors.hpp"

namespace nfdlog {

namespace {

class CandidateSource {
 public:
  CandidateSource(const PrimeIdeal& p, const FieldPtr& field, std::uint64_t effort) {
    const int n = field->degree();
    if (p.f == 1 && p.root && n >= 2) {
      const long k = n - 1;
      const Int& q = p.p;
      std::vector<Int> w{q};
      Int pw = 1;
      for (long i = 1; i <= k; ++i) {
        pw = pw * *p.root % q;
        w.push_back(-pw);
      }
      const long z = std::max(1L, static_cast<long>(std::ceil(std::log2(static_cast<double>(effort)) / k)));
      tuples_.emplace(w, static_cast<long>(bit_length(q)), k, z);
      w_ = std::move(w);
    } else {
      const Ideal ideal = Ideal::from_prime(field, p);
      std::vector<IntVec> rows;
      for (std::size_t r = 0; r < ideal.hnf().rows(); ++r) rows.push_back(ideal.hnf().row(r));
      const double log_box = (std::log2(4.0 * static_cast<double>(effort)) + log2_abs(p.norm)) / n;
      const Int box(static_cast<unsigned long>(std::ceil(std::exp2(std::min(log_box, 62.0)))));
      lattice_.emplace(std::move(rows), box);
    }
  }

  std::optional<Poly> next() {
    if (tuples_) {
      auto t = tuples_->next();
      if (!t) return std::nullopt;
      std::vector<Int> c(t->size());
      for (std::size_t i = 0; i < t->size(); ++i) {
        mpz_addmul(c[0].get_mpz_t(), (*t)[i].get_mpz_t(), w_[i].get_mpz_t());
        if (i > 0) c[i] = (*t)[i];
      }
      return Poly(std::move(c));
    }
    auto x = lattice_->next();
    if (!x) return std::nullopt;
    return Poly(std::move(*x));
  }

 private:
  std::optional<TupleStream> tuples_;
  std::vector<Int> w_;
  std::optional<ShortVectorStream> lattice_;
};

struct PrimeCache {
  const FactorBase& fb;
  std::map<Int, std::vector<PrimeIdeal>> extra;

  std::vector<PrimeIdeal> above(const Int& l) {
    if (auto it = fb.above.find(l); it != fb.above.end()) {
      std::vector<PrimeIdeal> out;
      for (const auto& item : it->second) out.push_back(item.first);
      return out;
    }
    auto it = extra.find(l);
    if (it == extra.end()) it = extra.emplace(l, split_prime(fb.field, l)).first;
    return it->second;
  }
};

std::optional<std::vector<std::pair<PrimeIdeal, long>>> cofactor_of(const FieldElement& phi, const PrimeIdeal& p,
                                                                    const Int& target,
                                                                    const std::vector<std::uint64_t>& primes,
                                                                    PrimeCache& cache) {
  const Int norm = abs(element_norm(phi));
  Int m = norm / p.norm;
  std::vector<Int> found;
  for (const auto l : primes) {
    if (m == 1) break;
    const Int li(static_cast<unsigned long>(l));
    if (!mpz_divisible_p(m.get_mpz_t(), li.get_mpz_t())) continue;
    while (mpz_divisible_p(m.get_mpz_t(), li.get_mpz_t())) mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), li.get_mpz_t());
    found.push_back(li);
  }
  if (m != 1) return std::nullopt;
  std::vector<std::pair<PrimeIdeal, long>> out;
  for (const auto& l : found) {
    const auto above = cache.above(l);
    const auto vals = valuations_above(phi, above, valuation(norm, l));
    for (std::size_t i = 0; i < above.size(); ++i) {
      long v = vals[i];
      if (above[i] == p) --v;
      if (v == 0) continue;
      if (v < 0 || above[i].norm > target) return std::nullopt;
      out.emplace_back(above[i], v);
    }
  }
  return out;
}

}  // namespace

SmoothStep smooth_step(const PrimeIdeal& p, const FactorBase& fb, const Int& target, std::uint64_t effort,
                       std::uint64_t seed) {
  const FieldPtr& field = fb.field;
  if (fb.index_of(p)) return {FieldElement::one(field), {}, 0};
  if (effort == 0) throw Error(Errc::InvalidInput, "effort must be positive");
  if (!target.fits_ulong_p() || target > Int(1) << 32) throw Error(Errc::InvalidInput, "descent target too large");
  const auto primes = primes_up_to(target.get_ui());
  PrimeCache cache{fb, {}};
  CandidateSource source(p, field, effort);

  std::uint64_t state = seed, tried = 0;
  std::vector<Poly> block;
  while (tried < effort) {
    block.clear();
    while (block.size() < 8) {
      auto c = source.next();
      if (!c) break;
      block.push_back(std::move(*c));
    }
    if (block.empty()) break;
    for (std::size_t i = block.size(); i > 1; --i) {
      state = splitmix64(state);
      std::swap(block[i - 1], block[state % i]);
    }
    for (auto& c : block) {
      if (tried >= effort) break;
      ++tried;
      FieldElement phi(field, c);
      if (phi.is_zero()) continue;
      if (!prime_contains(p, phi.rep())) throw Error(Errc::NotContained, "candidate outside " + p.to_string());
      if (auto cof = cofactor_of(phi, p, target, primes, cache)) return {std::move(phi), std::move(*cof), tried};
    }
  }
  throw Error(Errc::NoSmoothFound, "no smooth element in " + p.to_string() + " after " + std::to_string(tried) +
                                       " candidates");
}

int descent_depth_cap(const NumberField& field, int slack) {
  const double l = field.log2_abs_disc();
  const int base = l > 1 ? static_cast<int>(std::ceil(std::log2(l) - 1e-12)) : 0;
  return std::max(0, base) + slack;
}

namespace {

class Descender {
 public:
  Descender(const FactorBase& fb, const DescentOptions& opts, DecompositionResult& out)
      : fb_(fb), opts_(opts), out_(out) {
    const NumberField& f = *fb.field;
    log2_disc_ = f.log2_abs_disc();
    std::optional<double> kappa = opts.kappa;
    if (!kappa && f.coefficient_log2_height() > 0 && log2_disc_ > 2)
      kappa = f.degree() * f.coefficient_log2_height() / log2_disc_;
    if (kappa && *kappa > 0 && log2_disc_ > 2) schedule_ = descent_schedule(*kappa, out_.depth_cap + 1);
  }

  std::size_t descend(const PrimeIdeal& p, const Int& mult, int level, const std::string& path) {
    const std::size_t id = out_.nodes.size();
    out_.nodes.push_back({});
    out_.nodes[id].prime = p;
    out_.nodes[id].level = level;
    out_.nodes[id].multiplicity = mult;
    if (auto idx = fb_.index_of(p)) {
      out_.exponents[*idx] += mult;
      return id;
    }
    if (p.inert) {
      out_.nodes[id].kind = DescentNode::Kind::Inert;
      add_trace(FieldElement::from_int(fb_.field, p.p), mult);
      return id;
    }
    out_.nodes[id].kind = DescentNode::Kind::Descended;
    if (level >= out_.depth_cap)
      throw Error(Errc::DescentStuck, "depth cap reached at " + p.to_string());
    const Int target = target_for(level, p.norm);
    out_.nodes[id].target = target;
    const std::uint64_t seed = derive_seed(opts_.seed, "descent/" + path);
    std::optional<SmoothStep> step;
    std::uint64_t effort = std::max<std::uint64_t>(1, opts_.effort0);
    for (int attempt = 0; attempt <= opts_.retries && !step; ++attempt, effort *= 2) {
      try {
        step = smooth_step(p, fb_, target, effort, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
      } catch (const Error& e) {
        if (e.code() != Errc::NoSmoothFound) throw;
      }
    }
    if (!step) throw Error(Errc::DescentStuck, "no smooth element found for " + p.to_string());
    out_.depth = std::max(out_.depth, level + 1);
    add_trace(step->phi, mult);
    out_.nodes[id].phi = step->phi;
    out_.nodes[id].children = step->cofactor;
    const Int half = p.norm / 2;
    for (std::size_t j = 0; j < step->cofactor.size(); ++j) {
      const auto& [q, c] = step->cofactor[j];
      out_.max_node_exponent = std::max(out_.max_node_exponent, c);
      if (Int(c) > half) out_.exponent_bound_ok = false;
      const std::size_t child = descend(q, -mult * c, level + 1, path + "." + std::to_string(j));
      out_.nodes[id].child_nodes.push_back(child);
    }
    return id;
  }

  void finish() {
    for (auto& [key, entry] : trace_)
      if (entry.second != 0) out_.trace.push_back(std::move(entry));
  }

 private:
  Int target_for(int level, const Int& node_norm) const {
    Int t = fb_.B;
    if (schedule_) {
      const auto i = static_cast<std::size_t>(level + 1);
      const double lb = L(log2_disc_, 1.0 / 3.0 + schedule_->taus[i], schedule_->cs[i]);
      const Int scheduled(static_cast<unsigned long>(std::floor(std::exp2(std::min(lb, 32.0)))));
      if (scheduled > t) t = scheduled;
    }
    if (t >= node_norm) t = node_norm - 1;
    return t;
  }

  void add_trace(const FieldElement& phi, const Int& mult) {
    auto it = trace_.find(phi.rep().coeffs());
    if (it == trace_.end()) trace_.emplace(phi.rep().coeffs(), std::make_pair(phi, mult));
    else it->second.second += mult;
  }

  const FactorBase& fb_;
  const DescentOptions& opts_;
  DecompositionResult& out_;
  double log2_disc_ = 0;
  std::optional<DescentSchedule> schedule_;
  std::map<std::vector<Int>, std::pair<FieldElement, Int>> trace_;
};

}  // namespace

DecompositionResult decompose(const Ideal& i, const FactorBase& fb, const DescentOptions& opts) {
  if (i.field() != fb.field) throw Error(Errc::FieldMismatch, "ideal and factor base use different fields");
  const Int cap = opts.norm_cap ? *opts.norm_cap : Int(abs(fb.field->disc()));
  if (i.norm() > cap) throw Error(Errc::NormTooLarge, "norm " + i.norm().get_str() + " exceeds " + cap.get_str());
  DecompositionResult out;
  out.exponents.assign(fb.size(), Int(0));
  out.depth_cap = descent_depth_cap(*fb.field, opts.depth_slack);
  Descender d(fb, opts, out);
  std::size_t j = 0;
  for (const auto& [p, e] : factor_ideal(i)) d.descend(p, Int(e), 0, std::to_string(j++));
  d.finish();
  if (!check_valuations(i, fb, out)) throw std::logic_error("descent valuation identity failed");
  return out;
}

bool check_valuations(const Ideal& i, const FactorBase& fb, const DecompositionResult& r) {
  for (std::size_t k = 0; k < fb.size(); ++k) {
    const PrimeIdeal& p = fb.primes[k];
    Int rhs = r.exponents[k];
    for (const auto& [phi, v] : r.trace) rhs += v * element_valuation(phi, p);
    if (rhs != ideal_valuation(i, p)) return false;
  }
  return true;
}

bool check_reconstruction(const Ideal& i, const FactorBase& fb, const DecompositionResult& r) {
  const FieldPtr& field = fb.field;
  Ideal pos = Ideal::unit(field), neg = Ideal::unit(field);
  auto put = [&](const Ideal& base, const Int& e) {
    if (e == 0) return;
    if (!e.fits_slong_p()) throw Error(Errc::InvalidInput, "exponent too large for reconstruction");
    const long s = e.get_si();
    Ideal& side = s > 0 ? pos : neg;
    side = ideal_mul(side, ideal_pow(base, static_cast<unsigned long>(s > 0 ? s : -s)));
  };
  for (std::size_t k = 0; k < fb.size(); ++k) put(Ideal::from_prime(field, fb.primes[k]), r.exponents[k]);
  for (const auto& [phi, v] : r.trace) put(principal_ideal(phi), v);
  return ideal_mul(i, neg) == pos;
}

}  // namespace nfdlog
