#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nfdlog/ideals.hpp"
#include "nfdlog/params.hpp"

namespace nfdlog {

/// Non-inert prime ideals of norm <= B, ramified primes included.
struct FactorBase {
  FieldPtr field;
  Int B;
  /// Sorted by (norm, p, g).
  std::vector<PrimeIdeal> primes;
  /// Every prime ideal above each rational p <= B, with its factor-base
  /// position or -1 when it is not in the factor base.
  std::map<Int, std::vector<std::pair<PrimeIdeal, long>>> above;

  std::size_t size() const { return primes.size(); }
  std::optional<std::size_t> index_of(const PrimeIdeal& p) const;
};

FactorBase build_factor_base(const FieldPtr& field, const Int& B);

/// Exponents of phi over the factor base when (phi) factors completely over
/// it, nullopt otherwise.
std::optional<std::vector<long>> test_smooth(const FieldElement& phi, const FactorBase& fb);

struct Relation {
  FieldElement phi;
  std::vector<long> e;
  /// First r archimedean log embeddings.
  std::vector<double> logs;
};

struct RelationMatrix {
  std::vector<Relation> rows;
  IntMatrix mz() const;
  std::vector<std::vector<double>> mr() const;
};

/// True when prod P_i^(e_i) equals (phi) as ideals.
bool verify_relation(const Relation& rel, const FactorBase& fb);

struct SieveOptions {
  long a = 1;
  long k = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int precision_bits = 128;
};

/// Resumable seeded enumeration of A(theta), deg A <= k, |coefficients| <= 2^a,
/// in a pseudorandom order. One of each +-pair is visited (leading coefficient
/// positive).
class Siever {
 public:
  Siever(const FactorBase& fb, SieveOptions opts);

  /// Next relations in enumeration order, at most `count`; fewer only when
  /// the space is exhausted. Elements in `skip` (canonical coefficients) are
  /// passed over and every returned element is added to it.
  std::vector<Relation> next(std::size_t count, std::set<std::vector<Int>>& skip);
  bool exhausted() const { return pos_ >= size_; }
  std::uint64_t space_size() const { return size_; }
  std::uint64_t candidates_tested() const { return tested_; }

  /// Candidate with the given position in the permuted order.
  std::optional<Poly> candidate(std::uint64_t position) const;

 private:
  std::uint64_t permute(std::uint64_t x) const;

  const FactorBase& fb_;
  SieveOptions opts_;
  std::uint64_t size_ = 0;
  std::uint64_t base_ = 0;
  int half_bits_ = 1;
  std::uint64_t keys_[4]{};
  std::uint64_t pos_ = 0;
  std::uint64_t tested_ = 0;
};

/// `count` relations or SearchSpaceExhausted.
RelationMatrix sieve_relations(const FactorBase& fb, const SieveOptions& opts, std::size_t count);

struct AssembleResult {
  std::size_t rank = 0;
  Int hnf_det;
};

/// Rank and HNF determinant of M_Z; RankDeficient when rank < N.
AssembleResult assemble_and_check(const RelationMatrix& m, std::size_t n_primes);

struct CollectOptions {
  SieveOptions sieve;
  long K_extra = 3;
  long max_a = 12;
  /// Extra batches of N rows until the determinant repeats twice.
  int max_stabilize = 10;
};

/// Relations enough for a full-rank M_Z: N + K_extra r + 10 rows, more on
/// rank deficiency, and stabilization batches. Raises a on exhaustion.
RelationMatrix collect_relations(const FactorBase& fb, const CollectOptions& opts);

/// Appends `count` new relations from a fresh enumeration stream named by
/// `stream`, skipping elements already in `m`.
void extend_relations(const FactorBase& fb, RelationMatrix& m, const CollectOptions& opts, std::size_t count,
                      std::uint64_t stream);

struct SieveStats {
  std::uint64_t trials = 0;
  std::uint64_t smooth = 0;
  double max_log2_norm = 0;
  double mean_log2_norm = 0;
};

/// Smoothness statistics over the first `trials` candidates.
SieveStats sieve_statistics(const FactorBase& fb, const SieveOptions& opts, std::uint64_t trials);

/// Exact form of the entry bound: |N(phi)| <= ((k+1) 2^a R^k)^n with
/// R = ceil(||T||_2) + 1, hence N(P)^e <= that for every exponent e.
Int norm_bound(const NumberField& field, long a, long k);
/// Largest e with N(P)^e <= norm_bound.
long entry_bound(const Int& prime_norm, const Int& bound);

}  // namespace nfdlog
