// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "nfdlog/errors.hpp"
#include "nfdlog/io.hpp"
#include "nfdlog/oracle.hpp"
#include "nfdlog/solver.hpp"

using namespace nfdlog;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct FieldCase {
  std::string name;
  FieldPtr field;
  bool quadratic = false;
  long d = 0;  // T = X^2 - d
};

std::vector<FieldCase> test_fields() {
  std::vector<FieldCase> out;
  for (long d : {-5L, -14L, -21L, -26L}) out.push_back({"Q(sqrt " + std::to_string(d) + ")", make_field(Poly{-d, 0, 1}), true, d});
  out.push_back({"Q(cbrt 2)", make_kummer_field(3, 2)});
  out.push_back({"Q(cbrt 5)", make_kummer_field(3, 5)});
  return out;
}

ClassGroupInfo oracle_for(const FieldCase& fc) {
  return fc.quadratic ? bqf_class_group(Int(4 * fc.d)) : enumerate_class_group(fc.field);
}

// Same parameter choice as the command-line tool.
ParameterSet effective_params(const NumberField& f) {
  try {
    return derive_parameters(f);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateField && e.code() != Errc::DomainError) throw;
    ParameterSet p;
    p.B = ParamOptions{}.B_floor;
    p.a = 2;
    p.k = std::max(1, f.degree() - 1);
    return p;
  }
}

SessionOptions session_opts(const ParameterSet& p, std::uint64_t seed) {
  SessionOptions so;
  so.collect.sieve.a = p.a;
  so.collect.sieve.k = p.k;
  so.collect.sieve.seed = derive_seed(seed, "sieve");
  so.collect.K_extra = p.K_extra;
  so.descent.seed = derive_seed(seed, "descent");
  so.descent.norm_cap = Int(1) << 48;
  return so;
}

std::string str(const IntVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

std::vector<Ideal> small_primes(const FieldPtr& f, unsigned long bound) {
  std::vector<Ideal> out;
  for (auto p : primes_up_to(bound))
    for (const auto& q : split_prime(f, Int(p)))
      if (!q.inert) out.push_back(Ideal::from_prime(f, q));
  return out;
}

std::optional<long> form_log(const QuadForm& a, const QuadForm& b) {
  QuadForm acc = principal_form(a.disc());
  const Int ord = form_order(a);
  for (long x = 0; x < ord; ++x) {
    if (acc == b) return x;
    acc = compose(acc, a);
  }
  return std::nullopt;
}

// --- criteria ---------------------------------------------------------------

Outcome c1_e0() {
  const double e0 = descent_schedule(1.0, 4).E0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "E0 = %.12f", e0);
  return {std::abs(e0 - 24) <= 1e-9 && std::abs(solve_E0() - 24) <= 1e-9, buf};
}

Outcome c2_identities() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.1, 10);
  double worst12 = 0, worst9 = 0;
  for (int i = 0; i < 50; ++i) {
    const double kappa = dist(rng);
    const auto p = parameters_from(kappa, std::cbrt(kappa / 3));
    worst12 = std::max({worst12, std::abs(p.c_total - 3 * p.rho), std::abs(p.c_total - std::cbrt(9 * kappa)),
                        std::abs(p.delta * p.nu - 3 * p.rho / kappa),
                        std::abs(p.delta + p.nu - 6 * p.rho * p.rho / kappa)});
    const auto s = descent_schedule(kappa, 80);
    worst9 = std::max({worst9, std::abs(s.e - std::cbrt(24 * kappa / 9)), std::abs(s.c_inf - std::cbrt(kappa / 3))});
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "50 kappa, max err %.2e (tol 1e-12), c_inf err %.2e (tol 1e-9)", worst12, worst9);
  return {worst12 <= 1e-12 && worst9 <= 1e-9, buf};
}

Outcome c3_kummer() {
  std::string detail;
  bool ok = true;
  for (auto [n, k] : {std::pair{3L, 2L}, {3L, 5L}, {5L, 2L}, {5L, 3L}, {7L, 2L}}) {
    auto f = make_kummer_field(n, k);
    std::vector<Int> c(static_cast<std::size_t>(n) + 1, Int(0));
    c[0] = -k;
    c.back() = 1;
    const Poly t(c);
    const Int closed = ipow(Int(n), static_cast<unsigned long>(n)) * ipow(Int(k), static_cast<unsigned long>(n - 1));
    const bool good = abs(f->disc()) == closed && abs(resultant(t, t.derivative())) == closed;
    ok = ok && good;
    detail += "(" + std::to_string(n) + "," + std::to_string(k) + ")=" + closed.get_str() + (good ? " " : "! ");
  }
  return {ok, detail};
}

struct Collected {
  FieldCase fc;
  std::unique_ptr<ClassGroupSession> session;
};

Outcome c4_class_groups(std::vector<Collected>& keep, double& worst_seconds) {
  bool ok = true;
  std::string detail;
  worst_seconds = 0;
  for (auto& fc : test_fields()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = effective_params(*fc.field);
    auto s = std::make_unique<ClassGroupSession>(fc.field, p.B, session_opts(p, 4));
    const IntVec got = class_group(*s);
    const auto want = oracle_for(fc);
    Int h = 1;
    for (const auto& x : got) h *= x;
    const bool good = h == want.h && got == want.structure;
    ok = ok && good;
    worst_seconds = std::max(worst_seconds, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    detail += fc.name + " " + str(got) + (good ? "" : " != oracle " + str(want.structure)) + "; ";
    keep.push_back({fc, std::move(s)});
  }
  return {ok && worst_seconds < 30, detail + "slowest field " + std::to_string(worst_seconds).substr(0, 5) + " s"};
}

Outcome c5_dlp() {
  auto f = make_field(Poly{14, 0, 1});
  const auto p = effective_params(*f);
  ClassGroupSession s(f, p.B, session_opts(p, 5));
  const Int disc = -56;
  // representatives: small primes, their products, and a few ideals far outside the factor base
  std::vector<Ideal> reps = small_primes(f, 60);
  const std::size_t base = reps.size();
  for (std::size_t i = 0; i + 1 < base && i < 8; ++i) reps.push_back(ideal_mul(reps[i], reps[i + 1]));
  for (const auto& x : small_primes(f, 1200))
    if (x.norm() > 1000 && reps.size() < base + 14) reps.push_back(x);
  reps.push_back(Ideal::unit(f));

  std::map<QuadForm, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < reps.size(); ++i) by_class[ideal_to_form(reps[i])].push_back(i);
  if (by_class.size() != 4) return {false, "representatives cover " + std::to_string(by_class.size()) + " classes"};

  long agree = 0, not_in = 0, bad = 0;
  for (const auto& [fa, as] : by_class)
    for (std::size_t ai = 0; ai < std::min<std::size_t>(as.size(), 3); ++ai) {
      const Ideal& a = reps[as[ai]];
      for (std::size_t bi = 0; bi < reps.size(); ++bi) {
        const Ideal& b = reps[bi];
        const auto want = form_log(fa, ideal_to_form(b));
        try {
          const auto r = discrete_log(s, a, b);
          if (want && r.order == form_order(fa) && (r.x - *want) % r.order == 0) ++agree;
          else ++bad;
        } catch (const Error& e) {
          if (!want && e.code() == Errc::NotInSubgroup) ++not_in;
          else ++bad;
        }
      }
    }
  (void)disc;
  return {bad == 0 && agree > 0 && not_in > 0, std::to_string(agree) + " logs match the form oracle, " +
                                                    std::to_string(not_in) + " NotInSubgroup as expected, " +
                                                    std::to_string(bad) + " wrong"};
}

Outcome c6_principality(std::vector<Collected>& sessions) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> coef(-30, 30);
  long principal_ok = 0, principal_bad = 0;
  for (int i = 0; i < 50; ++i) {
    auto& c = sessions[static_cast<std::size_t>(i) % sessions.size()];
    const int n = c.fc.field->degree();
    std::vector<Int> v;
    for (int j = 0; j < n; ++j) v.emplace_back(coef(rng));
    FieldElement alpha(c.fc.field, Poly(v));
    if (alpha.is_zero()) alpha = FieldElement::one(c.fc.field);
    const Ideal i_alpha = principal_ideal(alpha);
    try {
      const auto r = is_principal(*c.session, i_alpha);
      if (r.principal && verify_compact(i_alpha, r.rep)) ++principal_ok;
      else ++principal_bad;
    } catch (const Error&) {
      ++principal_bad;
    }
  }
  long non_ok = 0, non_bad = 0, certified = 0;
  for (auto& c : sessions) {
    if (!c.fc.quadratic) continue;
    const QuadForm one = principal_form(Int(4 * c.fc.d));
    int taken = 0;
    const auto primes = small_primes(c.fc.field, 40);
    std::vector<Ideal> cands = primes;
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) cands.push_back(ideal_mul(primes[i], primes[i + 1]));
    for (const auto& i : cands) {
      if (taken == 5) break;
      if (ideal_to_form(i) == one) continue;  // oracle: class is trivial
      ++taken;
      ++certified;
      try {
        if (!is_principal(*c.session, i).principal) ++non_ok;
        else ++non_bad;
      } catch (const Error&) {
        ++non_bad;
      }
    }
  }
  return {principal_ok == 50 && non_ok == 20 && certified == 20 && principal_bad + non_bad == 0,
          std::to_string(principal_ok) + "/50 principal verified, " + std::to_string(non_ok) + "/" +
              std::to_string(certified) + " non-principal"};
}

Outcome c7_descent() {
  auto f = make_kummer_field(3, 2);
  auto fb = build_factor_base(f, 100);
  const int cap = descent_depth_cap(*f);
  DescentOptions opts;
  opts.seed = 7;
  opts.norm_cap = Int(1000000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<unsigned long> dist(1000, 999000);
  int passed = 0, deepest = 0;
  std::set<Int> used;
  while (used.size() < 20) {
    Int q = dist(rng);
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    std::optional<PrimeIdeal> p;
    for (const auto& x : split_prime(f, q))
      if (x.f == 1 && x.e == 1) p = x;
    if (!p || !used.insert(q).second) continue;
    const Ideal i = Ideal::from_prime(f, *p);
    try {
      const auto r = decompose(i, fb, opts);
      deepest = std::max(deepest, r.depth);
      if (r.depth <= cap && r.exponent_bound_ok && check_reconstruction(i, fb, r) && check_valuations(i, fb, r)) ++passed;
    } catch (const Error&) {
    }
  }
  return {passed == 20, std::to_string(passed) + "/20 primes, deepest tree " + std::to_string(deepest) + " (cap " +
                            std::to_string(cap) + ")"};
}

std::set<IntVec> brute_tuples(const std::vector<Int>& v, long r) {
  auto canon = [](IntVec a) {
    for (const auto& x : a)
      if (x != 0) {
        if (x < 0)
          for (auto& y : a) y = -y;
        break;
      }
    return a;
  };
  std::set<IntVec> out;
  std::vector<long> rest(v.size() - 1, -r);
  const Int R(r);
  for (;;) {
    Int s = 0;
    for (std::size_t i = 1; i < v.size(); ++i) s += rest[i - 1] * v[i];
    Int lo, hi;
    mpz_cdiv_q(lo.get_mpz_t(), Int(-R - s).get_mpz_t(), v[0].get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), Int(R - s).get_mpz_t(), v[0].get_mpz_t());
    if (lo < -R) lo = -R;
    if (hi > R) hi = R;
    for (Int a0 = lo; a0 <= hi; ++a0) {
      IntVec t{a0};
      bool zero = a0 == 0;
      for (long x : rest) {
        t.emplace_back(x);
        zero = zero && x == 0;
      }
      if (!zero) out.insert(canon(t));
    }
    std::size_t i = 0;
    while (i < rest.size() && rest[i] == r) rest[i++] = -r;
    if (i == rest.size()) break;
    ++rest[i];
  }
  return out;
}

Outcome c8_small_tuples() {
  std::mt19937_64 rng(8);
  int ok = 0;
  std::size_t fewest_ratio_num = 0, fewest_ratio_den = 1;
  for (int it = 0; it < 20; ++it) {
    const long k = 1 + static_cast<long>(rng() % 3);
    const long z = 1 + static_cast<long>(rng() % 2);
    const long D = 4 + static_cast<long>(rng() % 9);
    Int q = (Int(1) << (D - 1)) + static_cast<unsigned long>(rng() % (1ul << (D - 2)));
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    std::vector<Int> v{q};
    for (long i = 0; i < k; ++i) v.emplace_back(static_cast<unsigned long>(rng() % q.get_ui()));
    const long Dq = static_cast<long>(bit_length(q));
    auto ts = small_tuples(v, Dq, k, z);
    std::set<IntVec> got;
    while (auto t = ts.next()) got.insert(*t);
    const auto want = brute_tuples(v, ts.bound().get_si());
    const std::size_t need = 1ul << (k * z);
    if (got == want && got.size() >= need) ++ok;
    if (it == 0 || got.size() * fewest_ratio_den < fewest_ratio_num * need)
      fewest_ratio_num = got.size(), fewest_ratio_den = need;
  }
  return {ok == 20, std::to_string(ok) + "/20 instances equal the exhaustive set; tightest " +
                        std::to_string(fewest_ratio_num) + " tuples vs 2^(kz) = " + std::to_string(fewest_ratio_den)};
}

Outcome c9_smoothness() {
  struct Case {
    FieldPtr f;
    long B, a, k;
    std::string name;
  };
  const std::vector<Case> cases{{make_kummer_field(3, 2), 200, 5, 2, "Q(cbrt 2)"},
                                {make_field(Poly{14, 0, 1}), 100, 7, 1, "Q(sqrt -14)"}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    auto fb = build_factor_base(c.f, c.B);
    SieveOptions o;
    o.a = c.a;
    o.k = c.k;
    o.seed = 9;
    Siever s(fb, o);
    std::uint64_t n = 0, smooth = 0;
    double expected = 0;
    const double mu = std::log2(static_cast<double>(c.B));
    for (std::uint64_t pos = 0; pos < s.space_size() && n < 12000; ++pos) {
      auto cand = s.candidate(pos);
      if (!cand) continue;
      FieldElement phi(c.f, *cand);
      ++n;
      expected += smoothness_estimate(log2_abs(element_norm(phi)), mu);
      smooth += test_smooth(phi, fb).has_value();
    }
    const double obs = static_cast<double>(smooth) / static_cast<double>(n);
    const double est = expected / static_cast<double>(n);
    const double ratio = obs / est;
    const bool good = n >= 10000 && ratio <= 4 && ratio >= 0.25;
    ok = ok && good;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %llu candidates, observed %.4f vs estimate %.4f (ratio %.2f); ", c.name.c_str(),
                  static_cast<unsigned long long>(n), obs, est, ratio);
    detail += buf;
  }
  return {ok, detail};
}

Outcome c10_entry_bound(const std::vector<Collected>& sessions) {
  std::size_t rows = 0, bad = 0;
  for (const auto& c : sessions) {
    const auto& fb = c.session->factor_base();
    for (const auto& r : c.session->relations().rows) {
      ++rows;
      Int mx = 0;
      for (const auto& x : r.phi.rep().coeffs()) mx = std::max(mx, Int(abs(x)));
      long a = 0;
      while (Int(1) << a < mx) ++a;
      const long k = std::max(0, r.phi.rep().degree());
      const Int bound = norm_bound(*c.fc.field, a, k);
      bool good = abs(element_norm(r.phi)) <= bound;
      for (std::size_t i = 0; i < fb.size(); ++i) good = good && std::abs(r.e[i]) <= entry_bound(fb.primes[i].norm, bound);
      bad += !good;
    }
  }
  return {bad == 0 && rows > 0, std::to_string(rows) + " relations on " + std::to_string(sessions.size()) +
                                    " fields, " + std::to_string(bad) + " violations"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c11_determinism(const std::string& cli, const fs::path& work) {
  fs::remove_all(work);
  struct Run {
    std::string field_json, a, b;
  };
  const std::vector<std::pair<std::string, Run>> fields{
      {"x2p14", {R"({"polynomial": [14, 0, 1]})", R"({"prime": 3})", R"({"prime": 3, "exponent": 3})"}},
      {"x3m5", {R"({"polynomial": [-5, 0, 0, 1]})", R"({"prime": 2})", R"({"prime": 11})"}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, run] : fields) {
    std::vector<std::pair<std::string, std::string>> outputs;
    for (const std::string tag : {"j1a", "j1b", "j4"}) {
      const fs::path dir = work / name / tag;
      fs::create_directories(dir);
      std::ofstream(dir / "field.json") << run.field_json << '\n';
      std::ofstream(dir / "a.json") << run.a << '\n';
      std::ofstream(dir / "b.json") << run.b << '\n';
      const std::string jobs = tag == "j4" ? "4" : "1";
      const std::string common = " --field field.json --seed 1234 --jobs " + jobs;
      const std::string cd = "cd '" + dir.string() + "' && '" + cli + "'";
      const int r1 = std::system((cd + " relations" + common + " --out rel.jsonl > /dev/null").c_str());
      const int r2 = std::system(
          (cd + " dlp" + common + " --relations rel.jsonl --a \"$(cat a.json)\" --b \"$(cat b.json)\" --out dlp.json > /dev/null")
              .c_str());
      if (r1 != 0 || r2 != 0) {
        ok = false;
        detail += name + "/" + tag + " exited nonzero; ";
        continue;
      }
      outputs.emplace_back(slurp(dir / "rel.jsonl"), slurp(dir / "dlp.json"));
    }
    bool same = outputs.size() == 3;
    for (std::size_t i = 1; same && i < outputs.size(); ++i) same = outputs[i] == outputs[0];
    ok = ok && same && !outputs.empty() && !outputs[0].first.empty();
    detail += name + (same ? " identical" : " DIFFER") + " (" +
              (outputs.empty() ? "0" : std::to_string(outputs[0].first.size())) + " bytes of relations); ";
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string cli;
  std::string workdir = "acceptance_work";
  app.add_option("--cli", cli, "nfdlog executable")->required();
  app.add_option("--workdir", workdir, "scratch directory");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  auto report = [&](int id, const std::string& title, double limit, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs < limit;
    failures += !pass;
    std::printf("%s %2d  %-24s %7.2f s (limit %g s)  %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs, limit,
                o.detail.c_str());
    std::fflush(stdout);
  };

  std::vector<Collected> sessions;
  double slowest = 0;
  report(1, "E0 constant", 1, c1_e0);
  report(2, "parameter identities", 1, c2_identities);
  report(3, "Kummer discriminants", 1, c3_kummer);
  report(4, "class groups vs oracle", 180, [&] { return c4_class_groups(sessions, slowest); });
  report(5, "DLP correctness", 60, c5_dlp);
  report(6, "principality", 120, [&] { return c6_principality(sessions); });
  report(7, "descent verification", 120, c7_descent);
  report(8, "small tuple counts", 10, c8_small_tuples);
  report(9, "smoothness calibration", 60, c9_smoothness);
  report(10, "entry bound", 5, [&] { return c10_entry_bound(sessions); });
  report(11, "determinism", 60, [&] { return c11_determinism(fs::absolute(cli).string(), fs::absolute(workdir)); });
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
