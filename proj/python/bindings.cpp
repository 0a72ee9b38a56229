#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfdlog/errors.hpp"
#include "nfdlog/io.hpp"
#include "nfdlog/oracle.hpp"
#include "nfdlog/solver.hpp"

namespace py = pybind11;
using namespace nfdlog;

namespace {

// Values cross the boundary as JSON so big integers and ideal specs keep the CLI formats.
Json to_json(const py::handle& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return Json::parse(text);
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::int_ to_py_int(const Int& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Int from_py_int(const py::handle& h) {
  Int v;
  if (v.set_str(py::str(h).cast<std::string>(), 10) != 0) throw Error(Errc::InvalidInput, "expected an integer");
  return v;
}

py::list ints_to_py(const IntVec& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py_int(x));
  return out;
}

struct PyField {
  FieldPtr f;
};

Poly poly_from_py(const py::sequence& coeffs) {
  std::vector<Int> c;
  for (const auto& x : coeffs) c.push_back(from_py_int(x));
  return Poly(std::move(c));
}

ParameterSet effective_params(const NumberField& f, std::optional<long> bound) {
  ParamOptions po;
  if (bound) po.B = Int(*bound);
  try {
    return derive_parameters(f, po);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateField && e.code() != Errc::DomainError) throw;
    ParameterSet p;
    p.B = bound ? Int(*bound) : Int(po.B_floor);
    p.a = 2;
    p.k = std::max(1, f.degree() - 1);
    return p;
  }
}

class PySession {
 public:
  PySession(const PyField& field, std::uint64_t seed, std::optional<long> bound, std::optional<long> a,
            std::optional<long> k, unsigned jobs, std::optional<long> norm_cap)
      : field_(field.f) {
    const auto p = effective_params(*field_, bound);
    SessionOptions so;
    so.collect.sieve.a = a.value_or(p.a);
    so.collect.sieve.k = k.value_or(p.k);
    so.collect.sieve.seed = derive_seed(seed, "sieve");
    so.collect.sieve.jobs = jobs;
    so.collect.K_extra = p.K_extra;
    so.descent.seed = derive_seed(seed, "descent");
    if (norm_cap) so.descent.norm_cap = Int(*norm_cap);
    session_ = std::make_unique<ClassGroupSession>(field_, p.B, so);
  }

  py::list class_group() const { return ints_to_py(nfdlog::class_group(*session_)); }
  py::int_ bound() const { return to_py_int(session_->factor_base().B); }
  std::size_t relation_count() const { return session_->relations().rows.size(); }

  py::tuple dlp(const py::object& a, const py::object& b) {
    const auto r = discrete_log(*session_, ideal_from_json(field_, to_json(a)), ideal_from_json(field_, to_json(b)));
    return py::make_tuple(to_py_int(r.x), to_py_int(r.order));
  }

  py::dict principal(const py::object& spec) const {
    const Ideal i = ideal_from_json(field_, to_json(spec));
    const auto r = is_principal(*session_, i);
    py::dict out;
    out["principal"] = r.principal;
    out["rep"] = to_py(compact_to_json(r.rep));
    out["verified"] = r.principal && verify_compact(i, r.rep);
    return out;
  }

  py::object decompose(const py::object& spec) const {
    const auto r = session_->decompose(ideal_from_json(field_, to_json(spec)));
    return to_py(decomposition_to_json(r, session_->factor_base()));
  }

 private:
  FieldPtr field_;
  std::unique_ptr<ClassGroupSession> session_;
};

py::dict class_group_info(const ClassGroupInfo& g) {
  py::dict out;
  out["h"] = to_py_int(g.h);
  out["structure"] = ints_to_py(g.structure);
  py::list forms;
  for (const auto& f : g.forms) forms.append(py::make_tuple(to_py_int(f.a), to_py_int(f.b), to_py_int(f.c)));
  out["forms"] = forms;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Index calculus in ideal class groups of number fields";
  m.attr("__version__") = kVersion;

  // str(e) starts with the error code, e.g. "NotInSubgroup: ..."
  py::register_exception<Error>(m, "NfdlogError", PyExc_RuntimeError);

  py::class_<PyField>(m, "Field")
      .def(py::init([](const py::sequence& coeffs, bool waiver) {
             MakeFieldOptions o;
             o.monogenicity_waiver = waiver;
             return PyField{make_field(poly_from_py(coeffs), o)};
           }),
           py::arg("coefficients"), py::arg("monogenicity_waiver") = false)
      .def_static("kummer", [](long n, const py::int_& k) { return PyField{make_kummer_field(n, from_py_int(k))}; })
      .def_property_readonly("degree", [](const PyField& f) { return f.f->degree(); })
      .def_property_readonly("disc", [](const PyField& f) { return to_py_int(f.f->disc()); })
      .def_property_readonly("signature",
                             [](const PyField& f) { return py::make_tuple(f.f->real_places(), f.f->complex_places()); })
      .def_property_readonly("polynomial", [](const PyField& f) { return ints_to_py(f.f->polynomial().coeffs()); })
      .def("info", [](const PyField& f) { return to_py(field_to_json(*f.f)); })
      .def("params", [](const PyField& f) { return to_py(params_to_json(derive_parameters(*f.f))); })
      .def("__repr__", [](const PyField& f) { return "Field(" + f.f->polynomial().to_string() + ")"; });

  py::class_<PySession>(m, "Session")
      .def(py::init<const PyField&, std::uint64_t, std::optional<long>, std::optional<long>, std::optional<long>,
                    unsigned, std::optional<long>>(),
           py::arg("field"), py::arg("seed"), py::arg("bound") = py::none(), py::arg("a") = py::none(),
           py::arg("k") = py::none(), py::arg("jobs") = 1u, py::arg("norm_cap") = py::none())
      .def("class_group", &PySession::class_group)
      .def_property_readonly("bound", &PySession::bound)
      .def_property_readonly("relation_count", &PySession::relation_count)
      .def("dlp", &PySession::dlp, py::arg("a"), py::arg("b"))
      .def("principal", &PySession::principal, py::arg("ideal"))
      .def("decompose", &PySession::decompose, py::arg("ideal"));

  m.def("bqf_class_group", [](const py::int_& d) { return class_group_info(bqf_class_group(from_py_int(d))); });
  m.def("enumerate_class_group", [](const PyField& f) { return class_group_info(enumerate_class_group(f.f)); });
  m.def("descent_schedule", [](double kappa, int depth) { return to_py(schedule_to_json(descent_schedule(kappa, depth))); },
        py::arg("kappa"), py::arg("depth") = 8);
  m.def("solve_E0", &solve_E0);
}
