#pragma once

#include <functional>
#include <vector>

#include "nfdlog/ideals.hpp"

namespace nfdlog {

/// a x^2 + b x y + c y^2 of negative discriminant.
struct QuadForm {
  Int a, b, c;
  Int disc() const { return b * b - 4 * a * c; }
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm& x, const QuadForm& y) {
    if (auto o = cmp(x.a, y.a) <=> 0; o != 0) return o;
    if (auto o = cmp(x.b, y.b) <=> 0; o != 0) return o;
    return cmp(x.c, y.c) <=> 0;
  }
};

bool is_reduced(const QuadForm& f);
QuadForm reduce(QuadForm f);
/// Dirichlet composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm form_pow(const QuadForm& f, const Int& e);
QuadForm principal_form(const Int& disc);
Int form_order(const QuadForm& f);

struct ClassGroupInfo {
  Int h;
  /// Nontrivial invariant factors d_1 | d_2 | ...
  IntVec structure;
  std::vector<QuadForm> forms;
};

/// Reduced primitive forms of discriminant D < 0, D = 0 or 1 mod 4.
ClassGroupInfo bqf_class_group(const Int& disc);

/// Invariant factors of a finite abelian group of the given order from
/// killed(m) = #{g : g^m = 1}, queried at prime powers m.
IntVec abelian_structure(const Int& order, const std::function<Int(const Int&)>& killed);

/// Class group of an order Z[theta] by exhaustive principal relations among
/// the primes of norm below the Minkowski bound. TooLarge past 10^6.
ClassGroupInfo enumerate_class_group(const FieldPtr& field);

/// Form attached to an ideal of Z[sqrt d], T = X^2 - d: a primitive part
/// aZ + (s + theta)Z gives (a, 2s, (s^2 - d)/a), reduced.
QuadForm ideal_to_form(const Ideal& i);

}  // namespace nfdlog
