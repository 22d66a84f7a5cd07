#include "gcm/cli.hpp"
#include "gcm/error.hpp"
#include "gcm/model_file.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

struct Model {
  gcm::ModelFile mf;

  gcm::GCSPtr structure(const std::string &name) const {
    const gcm::StructureBlock *b = mf.find_structure(name);
    if (!b)
      throw py::key_error(name);
    return gcm::build_structure(mf, *b);
  }
};

std::vector<std::string> names_of(const Model &m, bool families) {
  std::vector<std::string> out;
  if (families)
    for (const auto &f : m.mf.families)
      out.push_back(f.name);
  else
    for (const auto &s : m.mf.structures)
      out.push_back(s.name);
  return out;
}

} // namespace

PYBIND11_MODULE(_gcm, mod) {
  mod.doc() = "Exact generalized complex Hodge theory on invariant models";

  static py::exception<gcm::Error> error(mod, "GcmError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const gcm::Error &e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Model>(mod, "Model")
      .def_property_readonly("dim", [](const Model &m) { return m.mf.dim; })
      .def_property_readonly("structures", [](const Model &m) { return names_of(m, false); })
      .def_property_readonly("families", [](const Model &m) { return names_of(m, true); })
      .def("emit", [](const Model &m) { return gcm::emit_model(m.mf); })
      .def("betti", [](const Model &m) { return gcm::de_rham_betti(*m.mf.model); })
      .def("twisted_dims",
           [](const Model &m) {
             gcm::TwistedCohomology H = gcm::twisted_cohomology(m.mf.model);
             return std::make_pair(H.even.dim(), H.odd.dim());
           })
      .def("delbar_dims", [](const Model &m, const std::string &s) { return gcm::delbar_dims(*m.structure(s)); })
      .def("ddbar_holds", [](const Model &m, const std::string &s) { return gcm::ddbar_check(*m.structure(s)).holds; })
      .def("spinor", [](const Model &m, const std::string &s) { return m.structure(s)->spinor->str(); });

  mod.def("parse_model", [](const std::string &text) { return Model{gcm::parse_model(text)}; });
  mod.def("load_model", [](const std::string &path) { return Model{gcm::load_model(path)}; });
  mod.def("commands", &gcm::command_names);
  mod.def(
      "run",
      [](const std::string &command, const std::string &path, bool quiet, const std::string &at) {
        gcm::RunOptions opts;
        opts.quiet = quiet;
        opts.at = at;
        gcm::RunResult r = gcm::run_command(command, path, opts);
        return py::make_tuple(r.exit_code, r.json, r.text);
      },
      py::arg("command"), py::arg("path"), py::arg("quiet") = false, py::arg("at") = "");
}
