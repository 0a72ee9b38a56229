#include "nfdlog/io.hpp"

#include <istream>
#include <ostream>

#include "nfdlog/errors.hpp"

namespace nfdlog {

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw Error(Errc::InvalidInput, "bad integer " + j.dump());
    return v;
  }
  throw Error(Errc::InvalidInput, "expected an integer, got " + j.dump());
}

Json ints_to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

std::vector<Int> ints_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, "expected an integer list");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

Json poly_to_json(const Poly& p) { return ints_to_json(p.coeffs()); }
Poly poly_from_json(const Json& j) { return Poly(ints_from_json(j)); }

FieldPtr field_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "field spec must be an object");
  if (j.contains("kummer")) {
    const auto& k = j.at("kummer");
    return make_kummer_field(k.at("n").get<long>(), int_from_json(k.at("K")));
  }
  const char* key = j.contains("polynomial") ? "polynomial" : "T";
  if (!j.contains(key)) throw Error(Errc::InvalidInput, "field spec needs polynomial or kummer");
  MakeFieldOptions opts;
  opts.monogenicity_waiver = j.value("monogenicity_waiver", false);
  return make_field(poly_from_json(j.at(key)), opts);
}

Json field_to_json(const NumberField& f) {
  Json j;
  j["polynomial"] = poly_to_json(f.polynomial());
  j["degree"] = f.degree();
  j["disc"] = int_to_json(f.disc());
  j["signature"] = {f.real_places(), f.complex_places()};
  j["unit_rank"] = f.unit_rank();
  j["minkowski_bound"] = f.minkowski_bound();
  return j;
}

Json prime_to_json(const PrimeIdeal& p) {
  Json j;
  j["p"] = int_to_json(p.p);
  j["g"] = poly_to_json(p.generator());
  j["e"] = p.e;
  j["f"] = p.f;
  j["norm"] = int_to_json(p.norm);
  return j;
}

namespace {

IntMatrix matrix_from_json(const Json& j) {
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(ints_from_json(r));
  if (rows.empty()) throw Error(Errc::InvalidInput, "empty matrix");
  return IntMatrix::from_rows(rows);
}

}  // namespace

Ideal ideal_from_json(const FieldPtr& field, const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "ideal spec must be an object");
  std::optional<Ideal> base;
  if (j.contains("prime")) {
    const auto primes = split_prime(field, int_from_json(j.at("prime")));
    const auto idx = j.value("index", 0);
    if (idx < 0 || static_cast<std::size_t>(idx) >= primes.size())
      throw Error(Errc::InvalidInput, "prime index out of range");
    base = Ideal::from_prime(field, primes[static_cast<std::size_t>(idx)]);
  } else if (j.contains("element")) {
    FieldElement phi(field, poly_from_json(j.at("element")));
    if (phi.is_zero()) throw Error(Errc::ZeroElement, "zero generator");
    base = principal_ideal(phi);
  } else if (j.contains("generators")) {
    std::vector<Poly> gens;
    for (const auto& g : j.at("generators")) gens.push_back(poly_from_json(g));
    base = Ideal::generated_by(field, gens);
  } else if (j.contains("two")) {
    const auto& t = j.at("two");
    base = Ideal::two_element(field, int_from_json(t.at("u")), poly_from_json(t.at("w")));
  } else if (j.contains("hnf")) {
    base = Ideal(field, hnf_basis(matrix_from_json(j.at("hnf"))));
  } else if (j.value("unit", false)) {
    base = Ideal::unit(field);
  } else {
    throw Error(Errc::InvalidInput, "unrecognized ideal spec " + j.dump());
  }
  if (j.contains("exponent")) {
    const long e = j.at("exponent").get<long>();
    if (e < 0) throw Error(Errc::InvalidInput, "negative exponent");
    base = ideal_pow(*base, static_cast<unsigned long>(e));
  }
  return *base;
}

Json ideal_to_json(const Ideal& i) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < i.hnf().rows(); ++r) rows.push_back(ints_to_json(i.hnf().row(r)));
  Json j;
  j["hnf"] = rows;
  j["norm"] = int_to_json(i.norm());
  return j;
}

Json relation_to_json(const Relation& r) {
  Json j;
  j["phi"] = poly_to_json(r.phi.rep());
  Json e = Json::array();
  for (const auto x : r.e) e.push_back(x);
  j["e"] = e;
  j["logs"] = r.logs;
  return j;
}

Relation relation_from_json(const FieldPtr& field, const Json& j) {
  Relation r{FieldElement(field, poly_from_json(j.at("phi"))), j.at("e").get<std::vector<long>>(),
             j.at("logs").get<std::vector<double>>()};
  return r;
}

void write_relations(std::ostream& os, const Json& header, const RelationMatrix& m) {
  os << header.dump() << '\n';
  for (const auto& r : m.rows) os << relation_to_json(r).dump() << '\n';
}

RelationsFile read_relations(std::istream& is, const FieldPtr& field) {
  RelationsFile out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    if (first) {
      out.header = std::move(j);
      first = false;
      continue;
    }
    out.relations.rows.push_back(relation_from_json(field, j));
  }
  if (first) throw Error(Errc::InvalidInput, "relations file is empty");
  return out;
}

Json params_to_json(const ParameterSet& p) {
  Json j;
  j["log2_disc"] = p.log2_disc;
  j["M"] = p.M;
  j["kappa"] = p.kappa;
  j["alpha"] = p.alpha;
  j["rho"] = p.rho;
  j["delta"] = p.delta;
  j["nu"] = p.nu;
  j["c_total"] = p.c_total;
  j["B"] = int_to_json(p.B);
  j["a"] = p.a;
  j["k"] = p.k;
  j["K_extra"] = p.K_extra;
  return j;
}

Json schedule_to_json(const DescentSchedule& s) {
  Json j;
  j["kappa"] = s.kappa;
  j["e"] = s.e;
  j["chi"] = s.chi;
  j["taus"] = s.taus;
  j["cs"] = s.cs;
  j["sigmas"] = s.sigmas;
  j["c_inf"] = s.c_inf;
  j["E0"] = s.E0;
  return j;
}

namespace {

const char* kind_name(DescentNode::Kind k) {
  switch (k) {
    case DescentNode::Kind::FactorBase: return "factor_base";
    case DescentNode::Kind::Inert: return "inert";
    case DescentNode::Kind::Descended: return "descended";
  }
  return "unknown";
}

}  // namespace

Json decomposition_to_json(const DecompositionResult& r, const FactorBase& fb) {
  Json j;
  Json exps = Json::array();
  for (std::size_t i = 0; i < fb.size(); ++i) {
    if (r.exponents[i] == 0) continue;
    Json e = prime_to_json(fb.primes[i]);
    e["index"] = i;
    e["exponent"] = int_to_json(r.exponents[i]);
    exps.push_back(e);
  }
  j["exponents"] = exps;
  Json trace = Json::array();
  for (const auto& [phi, v] : r.trace) trace.push_back({{"phi", poly_to_json(phi.rep())}, {"exponent", int_to_json(v)}});
  j["generator_trace"] = trace;
  j["tree_depth"] = r.depth;
  j["depth_cap"] = r.depth_cap;
  j["max_node_exponent"] = r.max_node_exponent;
  j["exponent_bound_ok"] = r.exponent_bound_ok;
  Json nodes = Json::array();
  for (const auto& n : r.nodes) {
    Json x;
    x["prime"] = prime_to_json(n.prime);
    x["kind"] = kind_name(n.kind);
    x["level"] = n.level;
    x["multiplicity"] = int_to_json(n.multiplicity);
    if (n.kind == DescentNode::Kind::Descended) {
      x["target"] = int_to_json(n.target);
      x["phi"] = poly_to_json(n.phi->rep());
      x["children"] = n.child_nodes;
    }
    nodes.push_back(x);
  }
  j["tree"] = nodes;
  return j;
}

Json compact_to_json(const CompactRep& rep) {
  Json out = Json::array();
  for (const auto& [g, v] : rep.terms) out.push_back({{"gamma", poly_to_json(g.rep())}, {"exponent", int_to_json(v)}});
  return out;
}

}  // namespace nfdlog
