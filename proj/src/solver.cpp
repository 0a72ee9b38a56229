#include "nfdlog/solver.hpp"

#include <map>
#include <stdexcept>

#include "nfdlog/errors.hpp"

namespace nfdlog {

ClassGroupSession::ClassGroupSession(const FieldPtr& field, const Int& B, SessionOptions opts)
    : fb_(std::make_unique<FactorBase>(build_factor_base(field, B))), opts_(std::move(opts)) {
  rel_ = collect_relations(*fb_, opts_.collect);
}

ClassGroupSession::ClassGroupSession(const FieldPtr& field, const Int& B, RelationMatrix rel, SessionOptions opts)
    : fb_(std::make_unique<FactorBase>(build_factor_base(field, B))), rel_(std::move(rel)), opts_(std::move(opts)) {
  for (const auto& row : rel_.rows)
    if (row.e.size() != fb_->size()) throw Error(Errc::InvalidInput, "relation width does not match factor base");
}

const HnfResult& ClassGroupSession::lattice() const {
  if (!hnf_) {
    const std::size_t n = fb_->size();
    if (n > 0 && rel_.rows.empty()) throw Error(Errc::RankDeficient, "no relations");
    HnfResult h = n == 0 ? HnfResult{} : hnf(rel_.mz(), true);
    if (h.rank < n)
      throw Error(Errc::RankDeficient, "rank " + std::to_string(h.rank) + " < " + std::to_string(n));
    hnf_ = std::move(h);
  }
  return *hnf_;
}

void ClassGroupSession::add_relations() {
  const auto r = static_cast<long>(fb_->field->unit_rank());
  const auto count = static_cast<std::size_t>(std::max(opts_.collect.K_extra * r, 5L));
  extend_relations(*fb_, rel_, opts_.collect, count, static_cast<std::uint64_t>(++extensions_));
  hnf_.reset();
}

DecompositionResult ClassGroupSession::decompose(const Ideal& i) const {
  return ::nfdlog::decompose(i, *fb_, opts_.descent);
}

IntVec class_group(const ClassGroupSession& s) {
  s.lattice();
  IntVec out;
  if (s.factor_base().size() == 0) return out;
  for (const auto& d : snf(s.mz()))
    if (d != 1) out.push_back(d);
  return out;
}

IntMatrix extended_system(const IntMatrix& mz, const IntVec& va, const IntVec& vb) {
  const std::size_t n = mz.cols();
  if (va.size() != n || vb.size() != n) throw Error(Errc::InvalidInput, "exponent vectors do not match M_Z");
  IntMatrix a(mz.rows() + 2, n + 1);
  for (std::size_t i = 0; i < mz.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = mz(i, j);
  for (std::size_t j = 0; j < n; ++j) {
    a(mz.rows(), j) = vb[j];
    a(mz.rows() + 1, j) = va[j];
  }
  a(mz.rows(), n) = 1;
  return a;
}

namespace {

bool in_lattice(const ClassGroupSession& s, const IntVec& v) {
  if (s.factor_base().size() == 0) return true;
  return hnf_coordinates(s.lattice(), v).has_value();
}

std::optional<Int> extended_solve(const ClassGroupSession& s, const IntVec& va, const IntVec& vb) {
  const std::size_t n = s.factor_base().size();
  if (n == 0) return Int(0);
  s.lattice();
  const IntMatrix a = extended_system(s.mz(), va, vb);
  IntVec target(n + 1, Int(0));
  target[n] = 1;
  LeftSolution sol;
  try {
    sol = solve_left(a, target);
  } catch (const Error& e) {
    if (e.code() == Errc::NoSolution) return std::nullopt;
    throw;
  }
  if (!sol.integral) return std::nullopt;
  return Int(-sol.x.back().get_num());
}

}  // namespace

DlpResult discrete_log(ClassGroupSession& s, const Ideal& a, const Ideal& b) {
  DlpResult res;
  res.da = s.decompose(a);
  res.db = s.decompose(b);
  const IntVec& va = res.da.exponents;
  const IntVec& vb = res.db.exponents;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt == 1) {
      s.add_relations();
      res.retried = true;
    }
    auto x = extended_solve(s, va, vb);
    if (!x) continue;
    res.order = s.factor_base().size() == 0 ? Int(1) : order_modulo_lattice(s.lattice(), va);
    mpz_fdiv_r(x->get_mpz_t(), x->get_mpz_t(), res.order.get_mpz_t());
    IntVec diff(vb.size());
    for (std::size_t j = 0; j < vb.size(); ++j) diff[j] = vb[j] - *x * va[j];
    if (!in_lattice(s, diff)) continue;
    res.x = *x;
    return res;
  }
  throw Error(Errc::NotInSubgroup, "[b] is not a power of [a]");
}

namespace {

void add_term(std::map<std::vector<Int>, std::pair<FieldElement, Int>>& acc, const FieldElement& g, const Int& v) {
  if (v == 0) return;
  auto it = acc.find(g.rep().coeffs());
  if (it == acc.end()) acc.emplace(g.rep().coeffs(), std::make_pair(g, v));
  else it->second.second += v;
}

}  // namespace

PrincipalResult is_principal(const ClassGroupSession& s, const Ideal& i) {
  PrincipalResult res;
  res.decomposition = s.decompose(i);
  std::map<std::vector<Int>, std::pair<FieldElement, Int>> acc;
  for (const auto& [g, v] : res.decomposition.trace) add_term(acc, g, v);
  if (s.factor_base().size() > 0) {
    const HnfResult& h = s.lattice();
    auto y = hnf_coordinates(h, res.decomposition.exponents);
    if (!y) return res;
    const IntVec x = row_times(*y, h.u.top(h.rank));
    for (std::size_t r = 0; r < x.size(); ++r) add_term(acc, s.relations().rows[r].phi, x[r]);
  }
  res.principal = true;
  for (auto& [key, term] : acc)
    if (term.second != 0) res.rep.terms.push_back(std::move(term));
  if (!verify_compact(i, res.rep)) throw std::logic_error("compact representation failed verification");
  return res;
}

bool verify_compact(const Ideal& i, const CompactRep& rep) {
  std::map<PrimeIdeal, Int> lhs;
  std::map<Int, Int> norm_lhs;
  for (const auto& [g, v] : rep.terms) {
    if (g.is_zero() || g.field() != i.field()) return false;
    for (const auto& [p, e] : factor_ideal(principal_ideal(g))) lhs[p] += v * e;
    const auto fac = factor_integer(abs(element_norm(g)));
    if (!fac) throw Error(Errc::Unfactored, "cannot factor the norm of " + g.rep().to_string("t"));
    for (const auto& [l, e] : *fac) norm_lhs[l] += v * e;
  }
  std::map<PrimeIdeal, Int> rhs;
  for (const auto& [p, e] : factor_ideal(i)) rhs[p] = e;
  std::map<Int, Int> norm_rhs;
  const auto fac = factor_integer(i.norm());
  if (!fac) throw Error(Errc::Unfactored, "cannot factor " + i.norm().get_str());
  for (const auto& [l, e] : *fac) norm_rhs[l] = e;
  auto strip = [](auto& m) { std::erase_if(m, [](const auto& kv) { return kv.second == 0; }); };
  strip(lhs);
  strip(norm_lhs);
  return lhs == rhs && norm_lhs == norm_rhs;
}

}  // namespace nfdlog
