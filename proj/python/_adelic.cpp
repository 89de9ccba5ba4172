// Python bindings: text in, JSON-shaped dicts out.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adelic/cover.hpp"
#include "adelic/errors.hpp"
#include "adelic/instance.hpp"
#include "adelic/parse.hpp"

namespace py = pybind11;
using namespace adelic;

namespace {

// nlohmann::json -> Python object via the json module keeps this file small.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::tuple run(const std::string& command, const std::string& text, std::optional<std::int64_t> precision,
              std::optional<int> bound, std::optional<std::string> field, std::optional<std::string> place) {
  const Instance inst = parse_instance(text);
  const RunOptions opt{precision, bound, field, place};
  Report rep;
  if (command == "separable") rep = run_separable(inst, opt);
  else if (command == "decompose") rep = run_decompose(inst, opt);
  else if (command == "content") rep = run_content(inst, opt);
  else if (command == "verify-cover") rep = run_verify_cover(inst, opt);
  else throw py::value_error("unknown command: " + command);
  return py::make_tuple(to_py(rep.json), rep.exit_code);
}

std::vector<std::string> names(const std::vector<Place>& ps) {
  std::vector<std::string> out;
  for (const auto& x : ps) out.push_back(x.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_adelic, m) {
  m.doc() = "Adelic algebras over the projective line";

  auto base = py::register_exception<Error>(m, "AdelicError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NeedsLargerField>(m, "NeedsLargerField", base.ptr());
  py::register_exception<NotAUnit>(m, "NotAUnit", base.ptr());
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<InternalInconsistency>(m, "InternalInconsistency", base.ptr());

  m.def("run", &run, py::arg("command"), py::arg("text"), py::arg("precision") = py::none(),
        py::arg("bound") = py::none(), py::arg("field") = py::none(), py::arg("place") = py::none(),
        "Run a CLI pipeline on instance text; returns (report, exit_code).");

  m.def(
      "content_idele",
      [](const std::string& adele, const std::string& field) {
        return content_idele(parse_adele(adele, Field::parse(field)));
      },
      py::arg("adele"), py::arg("field"));

  m.def(
      "bad_set", [](const std::string& poly, const std::string& field) {
        return names(bad_set(parse_adelic_poly(poly, Field::parse(field))));
      },
      py::arg("poly"), py::arg("field"));

  m.def(
      "is_separable",
      [](const std::string& poly, const std::string& field) {
        const SeparabilityResult r = is_separable(parse_adelic_poly(poly, Field::parse(field)));
        py::dict d;
        d["separable"] = r.separable;
        d["verified"] = r.verified;
        d["witness"] = r.witness ? py::object(py::str(r.witness->to_string())) : py::none();
        return d;
      },
      py::arg("poly"), py::arg("field"));

  m.def(
      "content",
      [](const std::string& poly, const std::string& element, const std::string& field) {
        const AdelicPoly p = parse_adelic_poly(poly, Field::parse(field));
        return content_valuation(parse_element(element, p), p).total;
      },
      py::arg("poly"), py::arg("element"), py::arg("field"));

  m.def(
      "is_discrete",
      [](const std::string& cover_poly, const std::string& field) {
        const CoverSpec cover = CoverSpec::make(parse_sigma_poly(cover_poly, Field::parse(field), "U"));
        const Embedding emb = build_pOmega(cover);
        return classify_embedding(emb, default_tests(emb)).discrete;
      },
      py::arg("cover"), py::arg("field"), "Verdict for the canonical embedding of the cover.");
}
