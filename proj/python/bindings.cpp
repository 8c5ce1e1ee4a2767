// Python bindings. Results cross the boundary as JSON text; the package
// wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridstar/io.hpp"
#include "gridstar/version.hpp"

namespace py = pybind11;
using namespace gridstar;
using io::Json;

namespace {

Star star_of(const std::vector<int>& cycle) { return Star::from_ints(cycle); }

GriddedSurface surface_of(const std::string& text) {
  return io::surface_from_json(Json::parse(text));
}

std::string dump(const Json& j) { return j.dump(); }

std::string classes() {
  const auto& all = classify_all();
  Json j;
  j["classes"] = Json::array();
  for (const auto& c : all) j["classes"].push_back(io::to_json(c));
  j["check"] = io::to_json(check_classification(all));
  return dump(j);
}

std::string classify(const std::vector<int>& cycle) {
  const Star s = star_of(cycle);
  Json j = io::to_json(class_of(s));
  j["symmetry"] = io::to_json(canonicalize(s).symmetry);
  return dump(j);
}

std::string lemmas() {
  Json j = io::to_json(check_lemmas());
  j["examples"] = Json::array();
  for (const auto& v : check_reference_examples()) j["examples"].push_back(io::to_json(v));
  return dump(j);
}

std::string reduce_star(const std::vector<int>& cycle) {
  const Star s = star_of(cycle);
  Json j = io::to_json(reduce(s));
  j["link"] = io::to_json(squared_link(s));
  return dump(j);
}

std::string fixture(const std::string& name, std::uint64_t seed, int cells) {
  const auto chain = name.empty() ? fixtures::random_chain(seed, cells) : fixtures::by_name(name);
  return dump(io::to_json(GriddedSurface(boundary_of_3chain(chain))));
}

std::string validate_surface(const std::string& text, int threads) {
  return dump(io::to_json(validate(surface_of(text), threads)));
}

std::string field(const std::string& text, int m, int density, double tol, int threads) {
  FieldOptions o;
  o.m = m;
  o.density = density;
  o.tol = tol;
  o.threads = threads;
  return dump(io::to_json(assemble_field(surface_of(text), o)));
}

py::tuple mesh(const std::string& text, int m, int arc_segments, int threads) {
  const auto s = surface_of(text);
  const auto r = rounded_mesh(s, m, arc_segments, threads);
  std::vector<std::array<double, 4>> verts;
  verts.reserve(r.mesh.vertices.size());
  for (const auto& v : r.mesh.vertices) verts.push_back({v[0], v[1], v[2], v[3]});
  return py::make_tuple(verts, r.mesh.triangles, dump(io::to_json(r)),
                        to_obj(r.mesh, s.flat_axis()));
}

std::string certify(int class_id, double tol) {
  Json j = Json::array();
  if (class_id > 0) {
    j.push_back(io::to_json(certify_class(class_id, tol)));
  } else {
    for (const auto& c : certify_all(0, tol)) j.push_back(io::to_json(c));
  }
  return dump(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "gridstar core";
  m.attr("__version__") = kVersion;

  py::register_exception<StarError>(m, "StarError", PyExc_ValueError);
  py::register_exception<SmoothError>(m, "SmoothError", PyExc_RuntimeError);
  py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ReduceError>(m, "ReduceError", PyExc_RuntimeError);

  m.def("enumerate_stars", [](int n_min, int n_max) {
        std::vector<std::vector<int>> out;
        for (const auto& s : enumerate_stars(n_min, n_max)) out.push_back(s.to_ints());
        return out;
      },
      py::arg("n_min") = 3, py::arg("n_max") = 8);
  m.def("canonical", [](const std::vector<int>& c) { return star_of(c).to_ints(); },
        py::arg("cycle"));
  m.def("signature", [](const std::vector<int>& c) { return signature(star_of(c)).to_string(); },
        py::arg("cycle"));
  m.def("classes_json", &classes);
  m.def("classify_json", &classify, py::arg("cycle"));
  m.def("lemmas_json", &lemmas);
  m.def("reduce_json", &reduce_star, py::arg("cycle"));
  m.def("fixture_json", &fixture, py::arg("name"), py::arg("seed") = 1, py::arg("cells") = 6);
  m.def("validate_json", &validate_surface, py::arg("surface"), py::arg("threads") = 0);
  m.def("field_json", &field, py::arg("surface"), py::arg("m") = 4, py::arg("density") = 4,
        py::arg("tol") = kDefaultTolerance, py::arg("threads") = 0);
  m.def("mesh", &mesh, py::arg("surface"), py::arg("m") = 4, py::arg("arc_segments") = 4,
        py::arg("threads") = 0);
  m.def("certify_json", &certify, py::arg("class_id") = 0, py::arg("tol") = kDefaultTolerance);
}
