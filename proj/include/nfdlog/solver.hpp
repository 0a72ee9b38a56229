#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "nfdlog/descent.hpp"
#include "nfdlog/relations.hpp"

namespace nfdlog {

/// prod gamma_j^(v_j), never expanded.
struct CompactRep {
  std::vector<std::pair<FieldElement, Int>> terms;
};

struct SessionOptions {
  CollectOptions collect;
  DescentOptions descent;
};

/// Factor base, relation matrix and the cached HNF of M_Z for one field.
class ClassGroupSession {
 public:
  /// Builds the factor base and collects relations.
  ClassGroupSession(const FieldPtr& field, const Int& B, SessionOptions opts);
  /// Adopts relations collected elsewhere.
  ClassGroupSession(const FieldPtr& field, const Int& B, RelationMatrix rel, SessionOptions opts);

  const FieldPtr& field() const { return fb_->field; }
  const FactorBase& factor_base() const { return *fb_; }
  const RelationMatrix& relations() const { return rel_; }
  const SessionOptions& options() const { return opts_; }
  IntMatrix mz() const { return rel_.mz(); }
  /// HNF of M_Z with transform; RankDeficient when rank < N.
  const HnfResult& lattice() const;

  /// Collects max(K_extra r, 5) more relations.
  void add_relations();

  DecompositionResult decompose(const Ideal& i) const;

 private:
  std::unique_ptr<FactorBase> fb_;
  RelationMatrix rel_;
  SessionOptions opts_;
  int extensions_ = 0;
  mutable std::optional<HnfResult> hnf_;
};

/// Nontrivial SNF invariant factors of M_Z.
IntVec class_group(const ClassGroupSession& s);

/// Rows: M_Z | 0, then v_b | 1, then v_a | 0.
IntMatrix extended_system(const IntMatrix& mz, const IntVec& va, const IntVec& vb);

struct DlpResult {
  Int x;
  /// Order of [a], which x is reduced modulo.
  Int order;
  DecompositionResult da, db;
  bool retried = false;
};

/// x with [b] = [a]^x, reduced to [0, ord[a]). Retries once with more
/// relations, then throws NotInSubgroup.
DlpResult discrete_log(ClassGroupSession& s, const Ideal& a, const Ideal& b);

struct PrincipalResult {
  bool principal = false;
  CompactRep rep;
  DecompositionResult decomposition;
};

PrincipalResult is_principal(const ClassGroupSession& s, const Ideal& i);

/// sum_j v_j v_P(gamma_j) = v_P(I) at every prime in the supports, and
/// prod |N(gamma_j)|^(v_j) = N(I), compared prime by prime.
bool verify_compact(const Ideal& i, const CompactRep& rep);

}  // namespace nfdlog
