#include "gridstar/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace gridstar::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw FormatError("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Json vec_json(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

Json plane_json(const Plane2& p) { return {{"b1", vec_json(p.b1)}, {"b2", vec_json(p.b2)}}; }

Point4 point_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw FormatError("expected a 4-vector");
  Point4 p{};
  for (int k = 0; k < 4; ++k) p[k] = j[k].get<int>();
  return p;
}

}  // namespace

Json to_json(const Star& s) { return {{"cycle", s.to_ints()}}; }

Star star_from_json(const Json& j) {
  try {
    if (j.contains("cycle")) {
      const auto cycle = j.at("cycle").get<std::vector<int>>();
      return Star::from_ints(cycle);
    }
    if (j.contains("faces")) {
      std::vector<LocalFace> faces;
      for (const auto& f : j.at("faces")) {
        if (!f.is_array() || f.size() != 2) throw FormatError("face must be a pair");
        faces.push_back(LocalFace::make(f[0].get<int>(), f[1].get<int>()));
      }
      return star_cycle(faces);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad star JSON: ") + e.what());
  }
  throw FormatError("star JSON needs \"cycle\" or \"faces\"");
}

Json to_json(const StarClass& c) {
  Json j;
  j["id"] = c.id;
  j["n"] = c.representative.size();
  j["signature"] = c.signature.to_string();
  j["representative"] = c.representative.to_ints();
  j["orbit_size"] = c.orbit_size;
  return j;
}

Json to_json(const Symmetry& g) {
  Json images = Json::array();
  for (int k = 1; k <= 4; ++k) images.push_back(g.apply(SignedAxis::from_int(k)).value());
  return {{"images", images}};
}

Json to_json(const ReductionCertificate& c) {
  Json j;
  j["start"] = to_json(c.start);
  j["moves"] = Json::array();
  for (const auto& m : c.moves) {
    j["moves"].push_back({{"remove", {{m.x.value(), m.a.value()}, {m.a.value(), m.y.value()}}},
                          {"add", {m.x.value(), m.y.value()}}});
  }
  j["terminal"] = to_json(c.terminal);
  return j;
}

Json to_json(const SquaredLink& l) {
  Json j;
  j["segments"] = l.segments.size();
  j["vertices"] = Json::array();
  for (const auto& p : l.vertices) j["vertices"].push_back(p);
  return j;
}

Json to_json(const LemmaReport& r) {
  Json j;
  j["all_passed"] = r.all_passed();
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"passed", c.passed}, {"counterexamples", c.counterexamples}});
  }
  return j;
}

Json to_json(const ReferenceVerdict& v) {
  Json j;
  j["n"] = v.entry.n;
  j["claimed"] = v.entry.claimed.to_string();
  Json faces = Json::array();
  for (auto [a, b] : v.entry.faces) faces.push_back({a, b});
  j["faces"] = faces;
  j["valid"] = v.star.has_value();
  if (v.star) {
    j["cycle"] = v.star->to_ints();
    j["class_id"] = *v.class_id;
    j["signature_matches"] = v.signature_matches;
  } else {
    j["error"] = v.error;
    Json sugg = Json::array();
    for (const auto& s : v.suggestions) {
      Json fs = Json::array();
      for (auto [a, b] : s) fs.push_back({a, b});
      sugg.push_back(fs);
    }
    j["suggestions"] = sugg;
  }
  return j;
}

Json to_json(const ClassificationCheck& c) {
  Json j;
  j["total"] = c.total;
  j["per_size"] = c.counts;
  j["expected_total"] = kExpectedClassTotal;
  j["expected_per_size"] = kExpectedClassCounts;
  j["matches_expected"] = c.matches_expected;
  j["signature_injective"] = c.signature_injective();
  Json shared = Json::object();
  for (const auto& [sig, ids] : c.shared_signatures) shared[sig] = ids;
  j["shared_signatures"] = shared;
  return j;
}

Json to_json(const ClassCertificate& c) {
  Json j;
  j["class_id"] = c.class_id;
  j["signature"] = c.signature.to_string();
  j["representative"] = c.representative.to_ints();
  j["certified"] = c.certified;
  j["seed_exists"] = c.seed_exists;
  j["origin_margin"] = c.origin_margin;
  j["worst_margin"] = c.worst_margin;
  j["winding"] = c.winding;
  j["seed"] = plane_json(c.seed);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json to_json(const GriddedSurface& s) {
  Json faces = Json::array();
  for (const auto& f : s.faces()) {
    faces.push_back({{"base", f.base}, {"axes", {f.i, f.j}}});
  }
  return {{"faces", faces}};
}

GriddedSurface surface_from_json(const Json& j) {
  try {
    std::vector<GridFace> faces;
    for (const auto& f : j.at("faces")) {
      const auto axes = f.at("axes").get<std::vector<int>>();
      if (axes.size() != 2 || axes[0] == axes[1] || axes[0] < 1 || axes[0] > 4 ||
          axes[1] < 1 || axes[1] > 4) {
        throw FormatError("face axes must be two distinct values in 1..4");
      }
      faces.push_back(GridFace::make(point_from(f.at("base")), axes[0], axes[1]));
    }
    return GriddedSurface(std::move(faces));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad surface JSON: ") + e.what());
  }
}

Json to_json(const std::vector<Cell3>& cells) {
  Json a = Json::array();
  for (const auto& c : cells) a.push_back({{"base", c.base}, {"axes", c.axes}});
  return {{"cells", a}};
}

std::vector<Cell3> cells_from_json(const Json& j) {
  try {
    std::vector<Cell3> cells;
    for (const auto& c : j.at("cells")) {
      const auto axes = c.at("axes").get<std::vector<int>>();
      if (axes.size() != 3) throw FormatError("cell axes must have three entries");
      cells.push_back(Cell3::make(point_from(c.at("base")), axes[0], axes[1], axes[2]));
    }
    return cells;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad cells JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad cells JSON: ") + e.what());
  }
}

Json to_json(const SurfaceReport& r) {
  Json j;
  j["is_closed_manifold"] = r.is_closed_manifold;
  j["orientable"] = r.orientable;
  j["components"] = r.components.size();
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["faces"] = r.face_count;
  j["euler_characteristic"] = r.euler_characteristic;
  j["genus_per_component"] = r.genus_per_component;
  Json hist = Json::object();
  for (const auto& [id, n] : r.star_histogram) hist[std::to_string(id)] = n;
  j["star_histogram"] = hist;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"location", v.location}, {"reason", v.reason}});
  }
  return j;
}

Json to_json(const FieldReport& r) {
  Json j;
  j["samples"] = r.samples.size();
  j["case_counts"] = {r.count_by_case[0], r.count_by_case[1], r.count_by_case[2]};
  j["min_margin"] = r.min_margin;
  j["worst_point"] = vec_json(r.worst_point);
  j["below_tolerance"] = r.below_tolerance;
  j["interface_case12"] = r.interface_12;
  j["stitch"] = r.stitch;
  j["lipschitz"] = r.lipschitz;
  return j;
}

std::string field_csv(const FieldReport& r) {
  std::string out = "x1,x2,x3,x4,b1_1,b1_2,b1_3,b1_4,b2_1,b2_2,b2_3,b2_4,margin,case\n";
  for (const auto& s : r.samples) {
    for (int k = 0; k < 4; ++k) out += fmt(s.point[k]) + ',';
    for (int k = 0; k < 4; ++k) out += fmt(s.plane.b1[k]) + ',';
    for (int k = 0; k < 4; ++k) out += fmt(s.plane.b2[k]) + ',';
    out += fmt(s.margin) + ',' + std::to_string(s.field_case) + '\n';
  }
  return out;
}

Json to_json(const MeshReport& r) {
  Json j;
  j["vertices"] = r.mesh.vertices.size();
  j["triangles"] = r.mesh.triangles.size();
  j["closed"] = r.check.closed;
  j["oriented"] = r.check.oriented;
  j["euler_characteristic"] = r.check.euler;
  j["vertex_deviation"] = r.vertex_deviation;
  j["hausdorff_bound"] = r.hausdorff_bound;
  return j;
}

std::string classes_csv(const std::vector<StarClass>& classes) {
  std::string out = "id,n,signature,representative,orbit_size\n";
  for (const auto& c : classes) {
    std::string sig = c.signature.to_string();
    out += std::to_string(c.id) + ',' + std::to_string(c.representative.size()) + ",\"" +
           sig + "\",\"" + c.representative.to_string() + "\"," +
           std::to_string(c.orbit_size) + '\n';
  }
  return out;
}

std::string histogram_csv(const SurfaceReport& r) {
  std::string out = "class_id,vertices\n";
  for (const auto& [id, n] : r.star_histogram) {
    out += std::to_string(id) + ',' + std::to_string(n) + '\n';
  }
  return out;
}

}  // namespace gridstar::io
