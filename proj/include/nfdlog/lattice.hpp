#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "nfdlog/linalg.hpp"

namespace nfdlog {

/// Lattice vectors with every coordinate in [-box, box], one of each +- pair,
/// in layers of doubling Euclidean radius (shorter vectors first). Uses an
/// LLL-reduced basis and Fincke-Pohst enumeration.
class ShortVectorStream {
 public:
  ShortVectorStream(std::vector<IntVec> basis, Int box);
  std::optional<IntVec> next();

 private:
  void fill_layer();
  void enumerate(const Int& lo2, const Int& hi2, std::vector<IntVec>& out) const;

  std::vector<IntVec> basis_;
  std::vector<std::vector<long double>> mu_;
  std::vector<long double> bstar_;
  Int box_;
  Int radius2_prev_ = -1;
  Int radius2_;
  Int radius2_max_;
  bool done_ = false;
  std::deque<IntVec> buffer_;
};

/// Tuples (alpha_1..alpha_(k+1)), not all zero, one per +- pair, with
/// |alpha_i| <= 2^(D/k+z) and |sum alpha_i v_i| <= 2^(D/k+z). Short vectors of
/// the lattice spanned by the rows (e_i | v_i) come first.
class TupleStream {
 public:
  TupleStream(std::vector<Int> v, long D, long k, long z);
  std::optional<IntVec> next();
  /// floor(2^((D + k z)/k)).
  const Int& bound() const { return bound_; }

 private:
  Int bound_;
  std::optional<ShortVectorStream> lattice_;
};

TupleStream small_tuples(const std::vector<Int>& v, long D, long k, long z);

}  // namespace nfdlog
