#pragma once

#include <optional>
#include <vector>

#include "nfdlog/arith.hpp"
#include "nfdlog/field.hpp"

namespace nfdlog {

/// log2 of L(alpha, beta) = beta * log2|disc|^alpha * M^(1-alpha), M = log2 log2|disc|.
double L(double log2_disc, double alpha, double beta);

struct ParameterSet {
  double log2_disc = 0;
  double M = 0;
  double kappa = 0;
  double alpha = 1.0 / 3.0;
  double rho = 0;
  double delta = 0;
  double nu = 0;
  Int B;
  long a = 1;
  long k = 1;
  long K_extra = 3;
  double c_total = 0;
};

struct ParamOptions {
  long B_floor = 20;
  long K_extra = 3;
  /// Force rho instead of the optimum (kappa/3)^(1/3).
  std::optional<double> rho;
  /// Force the smoothness bound.
  std::optional<Int> B;
};

/// rho, delta, nu, c_total for a given kappa. Throws DomainError when
/// X^2 - (6 rho^2/kappa) X + 3 rho/kappa has no real roots.
ParameterSet parameters_from(double kappa, double rho);

/// Parameters measured from the field: kappa = n d / log2|disc| with
/// d = max log2|t_i|; B, a, k from the bounds with desk-scale floors.
ParameterSet derive_parameters(const NumberField& field, const ParamOptions& opts = {});

struct DescentSchedule {
  double kappa = 0;
  double e = 0;
  double chi = 0;
  /// tau_0 = 2/3, then tau_i = 1/(3 2^(i-1)).
  std::vector<double> taus;
  /// c_0 = 1, then c_i = chi sqrt(c_(i-1) + e).
  std::vector<double> cs;
  /// sigma_i = sqrt((c_(i-1) + e)/kappa), index 0 unused.
  std::vector<double> sigmas;
  double c_inf = 0;
  double E0 = 0;
};

DescentSchedule descent_schedule(double kappa, int depth);

/// Least positive root of (3/E)^(1/3) = (2/E)(1 + sqrt(1 + E)).
double solve_E0();

/// Dickman rho by trapezoidal integration of u rho'(u) = -rho(u - 1).
double dickman_rho(double u);

/// Probability that a number of iota bits is 2^mu-smooth.
double smoothness_estimate(double iota, double mu);

}  // namespace nfdlog
