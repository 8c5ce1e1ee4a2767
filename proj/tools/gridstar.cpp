// gridstar command-line front end.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gridstar/io.hpp"
#include "gridstar/parallel.hpp"
#include "gridstar/version.hpp"

using namespace gridstar;
using io::Json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out;
  std::string format = "json";
  int threads = 0;
  int m = 4;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;

  // stars
  int n_min = 3, n_max = 8;
  std::string star_input;
  std::string cycle;
  bool all = false;

  // surface / smooth
  std::string surface_input;
  std::string cells_input;
  std::string fixture;
  int cells = 6;
  int density = 4;
  int arc_segments = 4;
  int class_id = 0;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::atomic_write(o.out, text);
  }
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

Json parse_json(const std::string& path) {
  try {
    return Json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const io::FormatError& e) {
    throw UsageError(e.what());
  }
}

Star input_star(const Options& o) {
  if (!o.cycle.empty()) {
    std::vector<int> values;
    std::stringstream ss(o.cycle);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        values.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw UsageError("bad --cycle entry '" + tok + "'");
      }
    }
    try {
      return Star::from_ints(values);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.star_input.empty()) throw UsageError("give a star file or --cycle");
  try {
    return io::star_from_json(parse_json(o.star_input));
  } catch (const io::FormatError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GriddedSurface input_surface(const Options& o) {
  try {
    return io::surface_from_json(parse_json(o.surface_input));
  } catch (const io::FormatError& e) {
    throw UsageError(e.what());
  }
}

bool csv(const Options& o) { return o.format == "csv"; }

// ---------------------------------------------------------------------------
// stars

int cmd_enumerate(const Options& o) {
  std::vector<Star> stars;
  try {
    stars = enumerate_stars(o.n_min, o.n_max);
  } catch (const InvalidRange& e) {
    throw UsageError(e.what());
  }
  if (csv(o)) {
    std::string text = "n,cycle\n";
    for (const auto& s : stars) {
      text += std::to_string(s.size()) + ",\"" + s.to_string() + "\"\n";
    }
    emit(o, text);
  } else {
    Json j;
    j["count"] = stars.size();
    j["stars"] = Json::array();
    for (const auto& s : stars) j["stars"].push_back(io::to_json(s));
    emit(o, j);
  }
  return kOk;
}

int cmd_classify(const Options& o) {
  const Star s = input_star(o);
  classify_all(o.threads);
  const StarClass& c = class_of(s);
  const Canonical can = canonicalize(s);
  if (csv(o)) {
    emit(o, io::classes_csv({c}));
  } else {
    Json j;
    j["input"] = io::to_json(s);
    j["class"] = io::to_json(c);
    j["symmetry"] = io::to_json(can.symmetry);
    emit(o, j);
  }
  return kOk;
}

int cmd_classify_all(const Options& o) {
  const auto& classes = classify_all(o.threads);
  const auto check = check_classification(classes);
  if (csv(o)) {
    emit(o, io::classes_csv(classes));
  } else {
    Json j;
    j["classes"] = Json::array();
    for (const auto& c : classes) j["classes"].push_back(io::to_json(c));
    j["check"] = io::to_json(check);
    emit(o, j);
  }
  if (!check.matches_expected) {
    std::cerr << "classification: " << check.total << " orbits, expected "
              << kExpectedClassTotal << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_lemmas(const Options& o) {
  classify_all(o.threads);
  const LemmaReport r = check_lemmas();
  const auto verdicts = check_reference_examples();
  Json j = io::to_json(r);
  j["examples"] = Json::array();
  for (const auto& v : verdicts) j["examples"].push_back(io::to_json(v));
  emit(o, j);
  return r.all_passed() ? kOk : kInvalid;
}

int cmd_reduce(const Options& o) {
  if (!o.all) {
    const Star s = input_star(o);
    const auto cert = reduce(s);
    Json j = io::to_json(cert);
    j["link"] = io::to_json(squared_link(s));
    emit(o, j);
    return kOk;
  }
  const auto stars = enumerate_stars();
  std::vector<ReductionCertificate> certs(stars.size());
  parallel_for(stars.size(), o.threads, [&](std::size_t k) { certs[k] = reduce(stars[k]); });
  if (csv(o)) {
    std::string text = "start,moves,terminal\n";
    for (const auto& c : certs) {
      text += "\"" + c.start.to_string() + "\"," + std::to_string(c.moves.size()) + ",\"" +
              c.terminal.to_string() + "\"\n";
    }
    emit(o, text);
  } else {
    Json j;
    std::size_t longest = 0;
    for (const auto& c : certs) longest = std::max(longest, c.moves.size());
    j["stars"] = certs.size();
    j["max_moves"] = longest;
    j["certificates"] = Json::array();
    for (const auto& c : certs) j["certificates"].push_back(io::to_json(c));
    emit(o, j);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// surface

int cmd_validate(const Options& o) {
  const auto s = input_surface(o);
  const SurfaceReport r = validate(s, o.threads);
  if (csv(o)) {
    emit(o, io::histogram_csv(r));
  } else {
    emit(o, io::to_json(r));
  }
  return r.is_closed_manifold ? kOk : kInvalid;
}

int cmd_surface_stars(const Options& o) {
  const auto s = input_surface(o);
  std::map<Point4, Star> stars;
  try {
    stars = vertex_stars(s);
  } catch (const SurfaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  classify_all(o.threads);
  if (csv(o)) {
    std::string text = "x1,x2,x3,x4,class_id\n";
    for (const auto& [v, st] : stars) {
      text += std::to_string(v[0]) + ',' + std::to_string(v[1]) + ',' + std::to_string(v[2]) +
              ',' + std::to_string(v[3]) + ',' + std::to_string(class_of(st).id) + '\n';
    }
    emit(o, text);
  } else {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& [v, st] : stars) {
      j["vertices"].push_back(
          {{"vertex", v}, {"class_id", class_of(st).id}, {"cycle", st.to_ints()}});
    }
    emit(o, j);
  }
  return kOk;
}

int cmd_from_cells(const Options& o) {
  std::vector<Cell3> cells;
  if (!o.cells_input.empty()) {
    try {
      cells = io::cells_from_json(parse_json(o.cells_input));
    } catch (const io::FormatError& e) {
      throw UsageError(e.what());
    }
  } else if (!o.fixture.empty()) {
    try {
      cells = fixtures::by_name(o.fixture);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const StarError& e) {
      throw UsageError(e.what());
    }
  } else {
    cells = fixtures::random_chain(o.seed, o.cells);
  }
  std::vector<GridFace> faces;
  try {
    faces = boundary_of_3chain(cells);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(o, io::to_json(GriddedSurface(std::move(faces))));
  return kOk;
}

// ---------------------------------------------------------------------------
// smooth

int smooth_failure(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kInvalid;
}

int cmd_field(const Options& o) {
  const auto s = input_surface(o);
  FieldOptions fo;
  fo.m = o.m;
  fo.density = o.density;
  fo.tol = o.tol;
  fo.threads = o.threads;
  FieldReport r;
  try {
    r = assemble_field(s, fo);
  } catch (const SmoothError& e) {
    if (e.kind() == SmoothError::Kind::InvalidSubdivision) throw UsageError(e.what());
    return smooth_failure(e);
  } catch (const SurfaceError& e) {
    return smooth_failure(e);
  }
  if (csv(o)) {
    emit(o, io::field_csv(r));
  } else {
    emit(o, io::to_json(r));
  }
  return r.below_tolerance == 0 ? kOk : kInvalid;
}

int cmd_mesh(const Options& o) {
  if (o.out.empty()) throw UsageError("smooth mesh needs --out <file.obj>");
  const auto s = input_surface(o);
  MeshReport r;
  try {
    r = rounded_mesh(s, o.m, o.arc_segments, o.threads);
  } catch (const SmoothError& e) {
    if (e.kind() == SmoothError::Kind::InvalidSubdivision) throw UsageError(e.what());
    return smooth_failure(e);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto flat = s.flat_axis();
  io::atomic_write(o.out, to_obj(r.mesh, flat));
  if (!flat) io::atomic_write(o.out + ".projection.json", projection_sidecar(flat));
  Json j = io::to_json(r);
  j["m"] = o.m;
  j["obj"] = o.out;
  j["columns"] = flat ? 3 : 4;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_certify(const Options& o) {
  std::vector<ClassCertificate> certs;
  if (o.class_id != 0) {
    try {
      certs.push_back(certify_class(o.class_id, o.tol));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    certs = certify_all(o.threads, o.tol);
  }
  bool all_ok = true;
  for (const auto& c : certs) all_ok = all_ok && c.certified;
  if (csv(o)) {
    std::string text = "class_id,signature,representative,certified,origin_margin,worst_margin,winding\n";
    for (const auto& c : certs) {
      text += std::to_string(c.class_id) + ",\"" + c.signature.to_string() + "\",\"" +
              c.representative.to_string() + "\"," + (c.certified ? "1" : "0") + ',' +
              io::fmt(c.origin_margin) + ',' + io::fmt(c.worst_margin) + ',' +
              std::to_string(c.winding) + '\n';
    }
    emit(o, text);
  } else {
    Json j;
    j["tolerance"] = o.tol;
    j["classes"] = Json::array();
    for (const auto& c : certs) j["classes"].push_back(io::to_json(c));
    emit(o, j);
  }
  return all_ok ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gridded surfaces in R^4: vertex stars, unknotting, transverse fields"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.set_version_flag("--version",
                       std::string("gridstar ") + kVersion + " (" + kGitHash + ")");
  app.add_option("--out", o.out, "Output file (written atomically); stdout if omitted");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, "Worker threads (GRIDSTAR_THREADS overrides)")
      ->check(CLI::NonNegativeNumber);

  auto* stars = app.add_subcommand("stars", "Vertex star combinatorics");
  stars->require_subcommand(1);
  auto* en = stars->add_subcommand("enumerate", "List every labeled star");
  en->add_option("--min", o.n_min, "Smallest cycle length");
  en->add_option("--max", o.n_max, "Largest cycle length");
  auto* cl = stars->add_subcommand("classify", "Class of one star");
  cl->add_option("input", o.star_input, "Star JSON ({\"cycle\":[...]} or {\"faces\":[...]})");
  cl->add_option("--cycle", o.cycle, "Star cycle, e.g. 1,2,-1,-2");
  auto* ca = stars->add_subcommand("classify-all", "Orbits of all stars");
  auto* lm = stars->add_subcommand("lemmas", "Exhaustive signature checks");
  auto* rd = stars->add_subcommand("reduce", "Unknotting certificate");
  rd->add_option("input", o.star_input, "Star JSON");
  rd->add_option("--cycle", o.cycle, "Star cycle, e.g. 1,2,-1,-2");
  rd->add_flag("--all", o.all, "Certificates for every labeled star");

  auto* surface = app.add_subcommand("surface", "Gridded surfaces");
  surface->require_subcommand(1);
  auto* va = surface->add_subcommand("validate", "Closed-manifold report");
  va->add_option("surface", o.surface_input, "Surface JSON")->required();
  auto* ss = surface->add_subcommand("stars", "Star class at every vertex");
  ss->add_option("surface", o.surface_input, "Surface JSON")->required();
  auto* fc = surface->add_subcommand("from-cells", "Boundary of a 3-chain");
  fc->add_option("cells_file", o.cells_input, "Cells JSON ({\"cells\":[...]})");
  fc->add_option("--fixture", o.fixture, "cube, two-cell, box, torus or star:<cycle>");
  fc->add_option("--seed", o.seed, "Seed of the random chain");
  fc->add_option("--cells", o.cells, "Cell count of the random chain")
      ->check(CLI::PositiveNumber);

  auto* smooth = app.add_subcommand("smooth", "Transverse field and rounded mesh");
  smooth->require_subcommand(1);
  auto* fi = smooth->add_subcommand("field", "Sample the transverse plane field");
  fi->add_option("surface", o.surface_input, "Surface JSON")->required();
  fi->add_option("--m", o.m, "Subdivision");
  fi->add_option("--density", o.density, "Samples per subsquare side")
      ->check(CLI::PositiveNumber);
  fi->add_option("--tol", o.tol, "Margin tolerance");
  auto* me = smooth->add_subcommand("mesh", "Rounded OBJ mesh");
  me->add_option("surface", o.surface_input, "Surface JSON")->required();
  me->add_option("--m", o.m, "Subdivision");
  me->add_option("--arc-segments", o.arc_segments, "Chords per quarter arc (even)");
  auto* ce = smooth->add_subcommand("certify", "Certify the vertex-patch fields");
  ce->add_option("--class", o.class_id, "Single class id");
  ce->add_option("--tol", o.tol, "Margin tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*en) return cmd_enumerate(o);
    if (*cl) return cmd_classify(o);
    if (*ca) return cmd_classify_all(o);
    if (*lm) return cmd_lemmas(o);
    if (*rd) return cmd_reduce(o);
    if (*va) return cmd_validate(o);
    if (*ss) return cmd_surface_stars(o);
    if (*fc) return cmd_from_cells(o);
    if (*fi) return cmd_field(o);
    if (*me) return cmd_mesh(o);
    if (*ce) return cmd_certify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
