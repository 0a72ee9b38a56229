#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nfdlog/descent.hpp"
#include "nfdlog/params.hpp"
#include "nfdlog/solver.hpp"

namespace nfdlog {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// JSON number when the value fits in int64, decimal string otherwise.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
Json ints_to_json(const std::vector<Int>& v);
std::vector<Int> ints_from_json(const Json& j);

/// Coefficient list, constant term first.
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

/// {"polynomial": [t_0, ..., 1]} (or "T"), or {"kummer": {"n": n, "K": K}}, with an
/// optional "monogenicity_waiver".
FieldPtr field_from_json(const Json& j);
Json field_to_json(const NumberField& f);

Json prime_to_json(const PrimeIdeal& p);

/// One of {"prime": p, "index": i}, {"element": [...]}, {"generators": [[...], ...]},
/// {"two": {"u": u, "w": [...]}}, {"hnf": [[...], ...]}, {"unit": true}; an
/// optional "exponent" raises it.
Ideal ideal_from_json(const FieldPtr& field, const Json& j);
Json ideal_to_json(const Ideal& i);

Json relation_to_json(const Relation& r);
Relation relation_from_json(const FieldPtr& field, const Json& j);

/// JSON lines: the header object, then one relation per line.
void write_relations(std::ostream& os, const Json& header, const RelationMatrix& m);
struct RelationsFile {
  Json header;
  RelationMatrix relations;
};
RelationsFile read_relations(std::istream& is, const FieldPtr& field);

Json params_to_json(const ParameterSet& p);
Json schedule_to_json(const DescentSchedule& s);
Json decomposition_to_json(const DecompositionResult& r, const FactorBase& fb);
Json compact_to_json(const CompactRep& rep);

}  // namespace nfdlog
