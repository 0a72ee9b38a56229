#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "nfdlog/arith.hpp"

namespace nfdlog {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  void set_row(std::size_t i, const IntVec& v);
  void append_row(const IntVec& v);
  void swap_rows(std::size_t i, std::size_t j);
  /// First `r` rows.
  IntMatrix top(std::size_t r) const;
  IntMatrix transpose() const;
  /// Largest absolute entry.
  Int max_abs() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// x * M for a row vector x.
IntVec row_times(const IntVec& x, const IntMatrix& m);
RatVec row_times(const RatVec& x, const IntMatrix& m);

struct HnfResult {
  /// Row echelon form: rows [0, rank) nonzero with strictly increasing pivot
  /// columns, positive pivots, entries above each pivot in [0, pivot); the
  /// remaining rows are zero.
  IntMatrix h;
  /// Unimodular with H = U M (empty when not requested).
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

HnfResult hnf(const IntMatrix& m, bool with_transform = true);
/// Nonzero HNF rows only.
IntMatrix hnf_basis(const IntMatrix& m);

/// Smith invariant factors d_1 | d_2 | ... of length min(rows, cols); zeros last.
IntVec snf(const IntMatrix& m);

/// Bareiss fraction-free determinant of a square matrix.
Int determinant(const IntMatrix& m);

/// Integer coordinates y with y * H = b over the nonzero rows of an HNF,
/// or nullopt when b is not in the row lattice.
std::optional<IntVec> hnf_coordinates(const HnfResult& r, const IntVec& b);

struct LeftSolution {
  /// X with X M = b; length rows(M).
  RatVec x;
  bool integral = false;
  /// Basis of {Y : Y M = 0}, empty when M has full row rank.
  std::vector<IntVec> kernel;
};

/// Solves X M = b. An integral solution is returned whenever b lies in the
/// row lattice of M. Throws NoSolution when b is outside the rational row span.
LeftSolution solve_left(const IntMatrix& m, const IntVec& b);
/// Same, reusing a transform-carrying HNF of M.
LeftSolution solve_left(const HnfResult& r, const IntVec& b);

/// Order of b in Z^n / L where L is the full-rank row lattice given by a
/// square HNF (the lcm of the denominators of b H^-1).
Int order_modulo_lattice(const HnfResult& r, const IntVec& b);

/// LLL reduction (delta = 3/4) of linearly independent integer rows, exact.
std::vector<IntVec> lll_reduce(std::vector<IntVec> basis);

/// Text format: "rows cols" then one row per line.
void write_matrix(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix(std::istream& is);
void write_real_matrix(std::ostream& os, const std::vector<std::vector<double>>& m);

}  // namespace nfdlog
