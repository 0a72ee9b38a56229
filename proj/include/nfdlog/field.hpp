#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nfdlog/arith.hpp"
#include "nfdlog/real.hpp"

namespace nfdlog {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct MakeFieldOptions {
  /// Accept T without proving Z[theta] is the maximal order.
  bool monogenicity_waiver = false;
};

/// K = Q[X]/T(X) with T monic and irreducible, under the standing assumption
/// that Z[theta] is the maximal order, so disc(T) is the field discriminant.
class NumberField {
 public:
  const Poly& polynomial() const { return t_; }
  int degree() const { return t_.degree(); }
  const Int& disc() const { return disc_; }
  int real_places() const { return s_; }
  int complex_places() const { return t_places_; }
  int unit_rank() const { return s_ + t_places_ - 1; }
  double minkowski_bound() const { return minkowski_; }
  double log2_abs_disc() const { return log2_abs(disc_); }
  /// max over non-leading coefficients of log2|t_i| (0 when all |t_i| <= 1).
  double coefficient_log2_height() const;
  /// Euclidean norm of the coefficient vector of T.
  double coefficient_l2_norm() const;

  /// Roots of T: the s real roots in increasing order, then one root of each
  /// complex-conjugate pair (positive imaginary part). Each root is certified
  /// to lie within 2^(-precision_bits/2) of the returned value.
  std::shared_ptr<const std::vector<Complex>> roots(int precision_bits) const;

  friend struct FieldBuilder;

 private:
  NumberField() = default;

  Poly t_;
  Int disc_;
  int s_ = 0;
  int t_places_ = 0;
  double minkowski_ = 0;

  mutable std::mutex roots_mu_;
  mutable std::map<int, std::shared_ptr<const std::vector<Complex>>> roots_cache_;
};

FieldPtr make_field(const Poly& t, MakeFieldOptions opts = {});
/// T = X^n - K with n, K prime and n^2 not dividing K^(n-1) - 1.
FieldPtr make_kummer_field(long n, const Int& k);

/// Number of distinct real roots of a squarefree polynomial (Sturm sequence over Q).
int count_real_roots(const Poly& t);
/// True if T is proven irreducible over Q, false if proven reducible; throws
/// IrreducibilityUnknown when neither can be established.
bool certify_irreducible(const Poly& t);
/// Dedekind criterion: Z[theta] is p-maximal.
bool is_p_maximal(const Poly& t, const Int& p);

/// A(theta), stored reduced: deg A < n.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Poly rep);
  static FieldElement from_int(FieldPtr field, const Int& c);
  static FieldElement one(FieldPtr field) { return from_int(std::move(field), 1); }
  static FieldElement theta(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const Poly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  /// Coordinates on 1, theta, ..., theta^(n-1).
  std::vector<Int> coordinates() const;

  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement pow(unsigned long e) const;
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.rep_ == b.rep_;
  }

 private:
  FieldPtr field_;
  Poly rep_;
};

/// N(phi) = Res(T, A), signed.
Int element_norm(const FieldElement& phi);

/// ln|sigma_i(phi)| for the s real embeddings then one per complex pair.
std::vector<Real> log_embeddings(const FieldElement& phi, int precision_bits);

}  // namespace nfdlog
