#include "nfdlog/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfdlog/errors.hpp"

namespace nfdlog {

double L(double log2_disc, double alpha, double beta) {
  if (alpha < 0 || alpha > 1) throw Error(Errc::DomainError, "alpha must lie in [0, 1]");
  if (!(log2_disc > 2)) throw Error(Errc::DomainError, "L needs log2|disc| > 2");
  if (!(beta > 0)) throw Error(Errc::DomainError, "beta must be positive");
  const double M = std::log2(log2_disc);
  return beta * std::pow(log2_disc, alpha) * std::pow(M, 1 - alpha);
}

ParameterSet parameters_from(double kappa, double rho) {
  if (!(kappa > 0)) throw Error(Errc::DomainError, "kappa must be positive");
  const double s = 6 * rho * rho / kappa;
  const double p = 3 * rho / kappa;
  double disc = s * s - 4 * p;
  // At the optimum the discriminant vanishes; tolerate rounding only.
  if (disc < 0) {
    if (disc < -1e-12 * s * s) throw Error(Errc::DomainError, "rho below (kappa/3)^(1/3): no real delta, nu");
    disc = 0;
  }
  ParameterSet ps;
  ps.kappa = kappa;
  ps.rho = rho;
  ps.delta = (s + std::sqrt(disc)) / 2;
  ps.nu = (s - std::sqrt(disc)) / 2;
  ps.c_total = 3 * rho;
  return ps;
}

ParameterSet derive_parameters(const NumberField& field, const ParamOptions& opts) {
  const double log2_disc = field.log2_abs_disc();
  const double d = field.coefficient_log2_height();
  if (d <= 0) throw Error(Errc::DegenerateField, "all non-leading coefficients have |t_i| <= 1");
  if (!(log2_disc > 2)) throw Error(Errc::DomainError, "log2|disc| must exceed 2");
  const int n = field.degree();
  const double kappa = n * d / log2_disc;
  const double rho_opt = std::cbrt(kappa / 3);
  ParameterSet ps;
  if (opts.rho) {
    ps = parameters_from(kappa, *opts.rho);
  } else {
    // delta = nu = sqrt(3 rho / kappa) at the optimum.
    ps.kappa = kappa;
    ps.rho = rho_opt;
    ps.delta = ps.nu = std::sqrt(3 * rho_opt / kappa);
    ps.c_total = 3 * rho_opt;
  }
  ps.log2_disc = log2_disc;
  ps.M = std::log2(log2_disc);
  ps.K_extra = opts.K_extra;

  if (opts.B) {
    ps.B = *opts.B;
  } else {
    const double lb = L(log2_disc, 1.0 / 3.0, ps.rho);
    ps.B = Int(static_cast<unsigned long>(std::ceil(std::exp2(std::min(lb, 62.0)))));
    if (ps.B < opts.B_floor) ps.B = opts.B_floor;
  }
  const double scale = std::cbrt(log2_disc / ps.M);
  const double a = std::ceil(ps.delta * (kappa * log2_disc / n) / scale);
  const double k = std::ceil(ps.nu * n / scale);
  ps.a = std::max(1L, static_cast<long>(a));
  ps.k = std::clamp(static_cast<long>(k), 1L, static_cast<long>(n - 1));
  return ps;
}

double solve_E0() {
  auto f = [](double E) { return std::cbrt(3 / E) - (2 / E) * (1 + std::sqrt(1 + E)); };
  // f < 0 near 0 and f > 0 for large E: scan for the first sign change.
  double lo = 1e-6, step = 0.25;
  double hi = lo + step;
  while (f(hi) < 0) {
    lo = hi;
    hi += step;
    if (hi > 1e6) throw Error(Errc::DomainError, "no root for E0");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = (lo + hi) / 2;
    if (f(mid) < 0) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

DescentSchedule descent_schedule(double kappa, int depth) {
  if (!(kappa > 0)) throw Error(Errc::DomainError, "kappa must be positive");
  if (depth < 1) throw Error(Errc::DomainError, "depth must be at least 1");
  DescentSchedule s;
  s.kappa = kappa;
  s.e = std::cbrt(24 * kappa / 9);
  s.chi = 2 * std::sqrt(kappa) / (3 * s.e);
  s.taus.push_back(2.0 / 3.0);
  s.cs.push_back(1.0);
  s.sigmas.push_back(0.0);
  for (int i = 1; i <= depth; ++i) {
    s.taus.push_back(1.0 / (3.0 * std::exp2(i - 1)));
    s.sigmas.push_back(std::sqrt((s.cs.back() + s.e) / kappa));
    s.cs.push_back(s.chi * std::sqrt(s.cs.back() + s.e));
  }
  s.c_inf = s.chi / 2 * (s.chi + std::sqrt(s.chi * s.chi + 4 * s.e));
  s.E0 = solve_E0();
  return s;
}

namespace {

constexpr double kRhoStep = 1e-4;
constexpr double kRhoMax = 30.0;

const std::vector<double>& dickman_table() {
  static const std::vector<double> table = [] {
    const auto per_unit = static_cast<std::size_t>(std::llround(1 / kRhoStep));
    const auto count = static_cast<std::size_t>(std::llround(kRhoMax / kRhoStep)) + 1;
    std::vector<double> r(count, 1.0);
    for (std::size_t i = per_unit + 1; i < count; ++i) {
      const double u = static_cast<double>(i) * kRhoStep;
      const double prev = u - kRhoStep;
      r[i] = r[i - 1] - kRhoStep / 2 * (r[i - 1 - per_unit] / prev + r[i - per_unit] / u);
    }
    return r;
  }();
  return table;
}

}  // namespace

double dickman_rho(double u) {
  if (u <= 1) return 1.0;
  if (u >= kRhoMax) return 0.0;
  const auto& t = dickman_table();
  const double x = u / kRhoStep;
  const auto i = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(i);
  if (i + 1 >= t.size()) return t.back();
  return t[i] * (1 - frac) + t[i + 1] * frac;
}

double smoothness_estimate(double iota, double mu) {
  if (!(mu > 0) || iota < 0) throw Error(Errc::DomainError, "smoothness estimate needs iota >= 0, mu > 0");
  const double u = iota / mu;
  if (u <= 1) return 1.0;
  if (u <= 2) return dickman_rho(u);
  const double lu = std::log2(u);
  const double p = std::exp2(-u * (lu + std::log2(lu) - 1));
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace nfdlog
