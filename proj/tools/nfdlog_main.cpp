#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nfdlog/errors.hpp"
#include "nfdlog/io.hpp"
#include "nfdlog/oracle.hpp"

using namespace nfdlog;

namespace {

struct Config {
  std::string field_path;
  std::string kummer;
  std::string poly;
  long bound = 0;
  std::uint64_t seed = 0;
  bool have_seed = false;
  unsigned jobs = 1;
  int precision = 128;
  long k_extra = 3;
  long sieve_a = 0;
  long sieve_k = 0;
  std::uint64_t effort = 64;
  int retries = 6;
  std::string norm_cap;
  std::string out;
  std::string relations;
  std::string ideal, a, b;
  std::string disc;
  bool check_oracle = false;
};

Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + arg);
  return Json::parse(in);
}

Json int_token(const std::string& s) { return int_to_json(int_from_json(Json(s))); }

Json field_spec(const Config& c) {
  const int given = !c.field_path.empty() + !c.kummer.empty() + !c.poly.empty();
  if (given != 1) throw Error(Errc::InvalidInput, "give exactly one of --field, --kummer, --poly");
  if (!c.field_path.empty()) return read_json_arg(c.field_path);
  if (!c.kummer.empty()) {
    const auto comma = c.kummer.find(',');
    if (comma == std::string::npos) throw Error(Errc::InvalidInput, "--kummer expects n,K");
    return Json{{"kummer", {{"n", int_token(c.kummer.substr(0, comma))}, {"K", int_token(c.kummer.substr(comma + 1))}}}};
  }
  Json coeffs = Json::array();
  std::stringstream ss(c.poly);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(int_token(item));
  return Json{{"polynomial", coeffs}};
}

struct Context {
  Json spec;
  FieldPtr field;
  ParameterSet params;
  bool params_derived = true;
  Json config;
};

Context make_context(const Config& c, bool randomized) {
  if (randomized && !c.have_seed) throw Error(Errc::InvalidInput, "--seed is required for this command");
  Context ctx;
  ctx.spec = field_spec(c);
  ctx.field = field_from_json(ctx.spec);
  ParamOptions po;
  po.K_extra = c.k_extra;
  if (c.bound > 0) po.B = Int(c.bound);
  try {
    ctx.params = derive_parameters(*ctx.field, po);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateField && e.code() != Errc::DomainError) throw;
    ctx.params_derived = false;
    ctx.params.B = c.bound > 0 ? Int(c.bound) : Int(po.B_floor);
    ctx.params.a = 2;
    ctx.params.k = std::max(1, ctx.field->degree() - 1);
    ctx.params.K_extra = c.k_extra;
  }
  if (c.sieve_a > 0) ctx.params.a = c.sieve_a;
  if (c.sieve_k > 0) ctx.params.k = c.sieve_k;
  Json cfg;
  cfg["field"] = ctx.spec;
  cfg["B"] = int_to_json(ctx.params.B);
  if (randomized) cfg["seed"] = c.seed;
  cfg["a"] = ctx.params.a;
  cfg["k"] = ctx.params.k;
  cfg["K_extra"] = c.k_extra;
  cfg["precision_bits"] = c.precision;
  cfg["effort"] = c.effort;
  cfg["retries"] = c.retries;
  cfg["norm_cap"] = c.norm_cap.empty() ? int_to_json(abs(ctx.field->disc())) : Json(c.norm_cap);
  if (!c.relations.empty()) cfg["relations"] = c.relations;
  ctx.config = cfg;
  return ctx;
}

SessionOptions session_options(const Config& c, const Context& ctx) {
  SessionOptions so;
  so.collect.sieve.a = ctx.params.a;
  so.collect.sieve.k = ctx.params.k;
  so.collect.sieve.seed = derive_seed(c.seed, "sieve");
  so.collect.sieve.jobs = c.jobs;
  so.collect.sieve.precision_bits = c.precision;
  so.collect.K_extra = c.k_extra;
  so.descent.seed = derive_seed(c.seed, "descent");
  so.descent.effort0 = c.effort;
  so.descent.retries = c.retries;
  if (!c.norm_cap.empty()) so.descent.norm_cap = int_from_json(Json(c.norm_cap));
  return so;
}

std::unique_ptr<ClassGroupSession> make_session(const Config& c, const Context& ctx) {
  const SessionOptions so = session_options(c, ctx);
  if (c.relations.empty()) return std::make_unique<ClassGroupSession>(ctx.field, ctx.params.B, so);
  std::ifstream in(c.relations);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + c.relations);
  auto file = read_relations(in, ctx.field);
  if (file.header.at("field") != field_to_json(*ctx.field))
    throw Error(Errc::FieldMismatch, "relations were collected for another field");
  return std::make_unique<ClassGroupSession>(ctx.field, int_from_json(file.header.at("B")), std::move(file.relations),
                                             so);
}

Json envelope(const std::string& command, const Json& config) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config;
  return j;
}

void emit(const Config& c, const Json& j) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw Error(Errc::InvalidInput, "cannot write " + c.out);
  os << j.dump(2) << '\n';
}

Json invariants_json(const IntVec& v) { return ints_to_json(v); }

Int product(const IntVec& v) {
  Int h = 1;
  for (const auto& d : v) h *= d;
  return h;
}

ClassGroupInfo oracle_for(const FieldPtr& field) {
  const Poly& t = field->polynomial();
  if (t.degree() == 2 && t.coeff(1) == 0 && t.coeff(0) > 0) return bqf_class_group(field->disc());
  return enumerate_class_group(field);
}

Json run_field(const Config& c) {
  auto ctx = make_context(c, false);
  Json j = envelope("field", ctx.config);
  j["field"] = field_to_json(*ctx.field);
  return j;
}

Json run_params(const Config& c) {
  auto ctx = make_context(c, false);
  Json j = envelope("params", ctx.config);
  if (!ctx.params_derived) throw Error(Errc::DegenerateField, "parameters are undefined for this field");
  j["params"] = params_to_json(ctx.params);
  j["schedule"] = schedule_to_json(descent_schedule(ctx.params.kappa, descent_depth_cap(*ctx.field)));
  return j;
}

Json run_factorbase(const Config& c) {
  auto ctx = make_context(c, false);
  const FactorBase fb = build_factor_base(ctx.field, ctx.params.B);
  Json j = envelope("factorbase", ctx.config);
  Json primes = Json::array();
  for (const auto& p : fb.primes) primes.push_back(prime_to_json(p));
  j["size"] = fb.size();
  j["primes"] = primes;
  return j;
}

Json run_relations(const Config& c) {
  auto ctx = make_context(c, true);
  const SessionOptions so = session_options(c, ctx);
  const FactorBase fb = build_factor_base(ctx.field, ctx.params.B);
  const RelationMatrix m = collect_relations(fb, so.collect);
  const auto check = assemble_and_check(m, fb.size());
  Json header;
  header["version"] = kVersion;
  header["config"] = ctx.config;
  header["field"] = field_to_json(*ctx.field);
  header["B"] = int_to_json(ctx.params.B);
  Json primes = Json::array();
  for (const auto& p : fb.primes) primes.push_back(prime_to_json(p));
  header["factor_base"] = primes;
  header["rows"] = m.rows.size();
  header["rank"] = check.rank;
  header["hnf_det"] = int_to_json(check.hnf_det);
  if (c.out.empty()) {
    write_relations(std::cout, header, m);
  } else {
    std::ofstream os(c.out);
    if (!os) throw Error(Errc::InvalidInput, "cannot write " + c.out);
    write_relations(os, header, m);
  }
  return {};
}

Json run_classgroup(const Config& c) {
  auto ctx = make_context(c, c.relations.empty());
  auto s = make_session(c, ctx);
  const IntVec inv = class_group(*s);
  Json j = envelope("classgroup", ctx.config);
  j["h"] = int_to_json(product(inv));
  j["invariants"] = invariants_json(inv);
  j["relations"] = s->relations().rows.size();
  if (c.check_oracle) {
    const auto o = oracle_for(ctx.field);
    j["oracle"] = {{"h", int_to_json(o.h)}, {"invariants", invariants_json(o.structure)}};
    j["oracle_agrees"] = o.h == product(inv) && o.structure == inv;
  }
  return j;
}

Json run_decompose(const Config& c) {
  auto ctx = make_context(c, true);
  const SessionOptions so = session_options(c, ctx);
  const FactorBase fb = build_factor_base(ctx.field, ctx.params.B);
  const Ideal i = ideal_from_json(ctx.field, read_json_arg(c.ideal));
  const auto r = decompose(i, fb, so.descent);
  Json j = envelope("decompose", ctx.config);
  j["ideal"] = ideal_to_json(i);
  j["decomposition"] = decomposition_to_json(r, fb);
  j["reconstruction_ok"] = check_reconstruction(i, fb, r);
  return j;
}

Json run_dlp(const Config& c) {
  auto ctx = make_context(c, true);
  auto s = make_session(c, ctx);
  const Ideal a = ideal_from_json(ctx.field, read_json_arg(c.a));
  const Ideal b = ideal_from_json(ctx.field, read_json_arg(c.b));
  const auto r = discrete_log(*s, a, b);
  Json j = envelope("dlp", ctx.config);
  j["x"] = int_to_json(r.x);
  j["order"] = int_to_json(r.order);
  j["retried"] = r.retried;
  j["max_node_exponent"] = std::max(r.da.max_node_exponent, r.db.max_node_exponent);
  j["exponent_bound_ok"] = r.da.exponent_bound_ok && r.db.exponent_bound_ok;
  return j;
}

Json run_principal(const Config& c) {
  auto ctx = make_context(c, true);
  auto s = make_session(c, ctx);
  const Ideal i = ideal_from_json(ctx.field, read_json_arg(c.ideal));
  const auto r = is_principal(*s, i);
  Json j = envelope("principal", ctx.config);
  j["principal"] = r.principal;
  if (r.principal) {
    j["rep"] = compact_to_json(r.rep);
    j["verified"] = verify_compact(i, r.rep);
  }
  return j;
}

Json run_oracle(const Config& c) {
  Json j;
  if (!c.disc.empty()) {
    const auto o = bqf_class_group(int_from_json(Json(c.disc)));
    j = envelope("oracle", Json{{"disc", c.disc}});
    j["h"] = int_to_json(o.h);
    j["invariants"] = invariants_json(o.structure);
    Json forms = Json::array();
    for (const auto& f : o.forms) forms.push_back(ints_to_json({f.a, f.b, f.c}));
    j["forms"] = forms;
    return j;
  }
  auto ctx = make_context(c, false);
  const auto o = enumerate_class_group(ctx.field);
  j = envelope("oracle", ctx.config);
  j["h"] = int_to_json(o.h);
  j["invariants"] = invariants_json(o.structure);
  return j;
}

void add_field_options(CLI::App* sub, Config& c) {
  sub->add_option("--field", c.field_path, "Field spec: JSON file or inline JSON");
  sub->add_option("--kummer", c.kummer, "Kummer field X^n - K as n,K");
  sub->add_option("--poly", c.poly, "Coefficients t_0,...,t_n of T");
  sub->add_option("--bound", c.bound, "Factor base bound B");
  sub->add_option("--k-extra", c.k_extra, "Extra relations per unit rank");
  sub->add_option("--precision", c.precision, "Bits for archimedean logs");
  sub->add_option("--out", c.out, "Output file");
}

void add_random_options(CLI::App* sub, Config& c) {
  sub->add_option_function<std::uint64_t>(
      "--seed",
      [&c](const std::uint64_t& s) {
        c.seed = s;
        c.have_seed = true;
      },
      "Master seed");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--sieve-a", c.sieve_a, "Coefficient bound exponent a");
  sub->add_option("--sieve-k", c.sieve_k, "Sieve polynomial degree k");
  sub->add_option("--effort", c.effort, "Initial descent effort");
  sub->add_option("--retries", c.retries, "Descent effort doublings");
  sub->add_option("--norm-cap", c.norm_cap, "Largest accepted ideal norm (default |disc|)");
  sub->add_option("--relations", c.relations, "Relations file from the relations command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index calculus in ideal class groups of number fields"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Config c;
  std::function<Json(const Config&)> run;

  auto sub = [&](const char* name, const char* desc, auto fn, bool random) {
    auto* s = app.add_subcommand(name, desc);
    add_field_options(s, c);
    if (random) add_random_options(s, c);
    s->callback([&run, fn] { run = fn; });
    return s;
  };
  sub("field", "Construct and inspect a field", run_field, false);
  sub("params", "Parameter set and descent schedule", run_params, false);
  sub("factorbase", "List the factor base", run_factorbase, false);
  sub("relations", "Collect relations (JSON lines)", run_relations, true);
  sub("classgroup", "Class group structure from M_Z", run_classgroup, true)
      ->add_flag("--check-oracle", c.check_oracle, "Compare with a brute-force oracle");
  sub("decompose", "Decompose an ideal over the factor base", run_decompose, true)
      ->add_option("--ideal", c.ideal, "Ideal spec")
      ->required();
  auto* dlp = sub("dlp", "Discrete logarithm of [b] to base [a]", run_dlp, true);
  dlp->add_option("--a", c.a, "Base ideal spec")->required();
  dlp->add_option("--b", c.b, "Target ideal spec")->required();
  sub("principal", "Principality test with compact representation", run_principal, true)
      ->add_option("--ideal", c.ideal, "Ideal spec")
      ->required();
  sub("oracle", "Brute-force class group", run_oracle, false)
      ->add_option("--disc", c.disc, "Negative discriminant for the form oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    Json j = run(c);
    if (!j.is_null()) emit(c, j);
    return 0;
  } catch (const Error& e) {
    Json err{{"version", kVersion}, {"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
    std::cout << err.dump() << '\n';
    return is_mathematical_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    Json err{{"version", kVersion}, {"error", "InvalidInput"}, {"message", e.what()}};
    std::cout << err.dump() << '\n';
    return 1;
  }
}
