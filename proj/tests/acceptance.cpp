// Acceptance report: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "gridstar/io.hpp"

using namespace gridstar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", number, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + xs[k];
  return out;
}

GriddedSurface surface_of(const std::vector<Cell3>& cells) {
  return GriddedSurface(boundary_of_3chain(cells));
}

const char* kFixtures[] = {"cube", "two-cell", "box", "torus", "star:1,2,-1,4,3,-4,-3,-2"};

struct Corpus {
  std::vector<std::pair<std::string, GriddedSurface>> surfaces;
  int excluded = 0;
};

// Named fixtures plus a realization of every class with a certified field,
// keeping surfaces on which every vertex star is certified.
const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    for (const char* name : kFixtures) out.surfaces.emplace_back(name, surface_of(fixtures::by_name(name)));
    for (const auto& cls : classify_all()) {
      if (!certify_class(cls.id).certified) continue;
      GriddedSurface s = surface_of(fixtures::realize_star(cls.representative));
      bool ok = validate(s).is_closed_manifold;
      if (ok) {
        for (const auto& [v, id] : stars_of(s)) ok = ok && certify_class(id).certified;
      }
      if (ok) {
        out.surfaces.emplace_back("class " + std::to_string(cls.id), std::move(s));
      } else {
        ++out.excluded;
      }
    }
    return out;
  }();
  return c;
}

// Runs inside `dir` so that outputs only mention relative paths.
int run_in(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd \"" + dir.string() + "\" && \"" + GRIDSTAR_CLI + "\" " + args +
                          " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_suite(const fs::path& dir) {
  fs::create_directories(dir);
  auto run_cli = [&](const std::string& args) { return run_in(dir, args); };
  run_cli("stars enumerate --out stars.json");
  run_cli("stars classify-all --out classes.json");
  run_cli("stars classify-all --format csv --out classes.csv");
  run_cli("stars lemmas --out lemmas.json");
  run_cli("stars reduce --all --out reduce.json");
  run_cli("stars classify --cycle 3,-1,4,-2 --out classify.json");
  run_cli("smooth certify --out certify.json");
  int k = 0;
  for (const char* name : kFixtures) {
    const std::string base = "fixture" + std::to_string(k++);
    run_cli(std::string("surface from-cells --fixture ") + name + " --out " + base + ".json");
    run_cli("surface validate " + base + ".json --out " + base + ".report.json");
    run_cli("surface stars " + base + ".json --out " + base + ".stars.json");
    run_cli("smooth field " + base + ".json --format csv --out " + base + ".field.csv");
    run_cli("smooth mesh " + base + ".json --out " + base + ".obj > " + base + ".mesh.json");
  }
  run_cli("surface from-cells --seed 42 --cells 12 --out random.json");
}

}  // namespace

int main() {
  std::printf("gridstar acceptance\n");

  criterion(1, "classification count", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& classes = classify_all();
    const auto check = check_classification(classes);
    const double secs = since(t0);
    std::ostringstream d;
    d << check.total << " orbits (expected " << kExpectedClassTotal << "), per size";
    for (int c : check.counts) d << ' ' << c;
    d << " (expected";
    for (int c : kExpectedClassCounts) d << ' ' << c;
    d << "), " << secs << " s";
    return Outcome{check.matches_expected && secs < 5.0, d.str()};
  });

  criterion(2, "signature tables", [] {
    std::vector<std::string> diffs;
    for (const auto& [n, sigs] : expected_signature_table()) {
      std::multiset<std::string> want, got;
      for (const auto& s : sigs) want.insert(s.to_string());
      std::set<std::string> distinct;
      for (const auto& c : classify_all()) {
        if (int(c.representative.size()) == n) distinct.insert(c.signature.to_string());
      }
      got.insert(distinct.begin(), distinct.end());
      for (const auto& s : got)
        if (!want.count(s)) diffs.push_back("n=" + std::to_string(n) + " extra " + s);
      for (const auto& s : want)
        if (!got.count(s)) diffs.push_back("n=" + std::to_string(n) + " missing " + s);
    }
    return Outcome{diffs.empty(), diffs.empty() ? "all n=3..8 match" : join(diffs)};
  });

  criterion(3, "lemma suite", [] {
    const auto r = check_lemmas();
    std::vector<std::string> bad;
    for (const auto& c : r.checks) {
      if (!c.passed) bad.push_back(c.name + " [" + join(c.counterexamples, "; ") + "]");
    }
    return Outcome{r.all_passed(),
                   bad.empty() ? "zero counterexamples" : "counterexamples: " + join(bad)};
  });

  criterion(4, "unknotting", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto stars = enumerate_stars();
    std::size_t longest = 0, bad = 0;
    for (const auto& s : stars) {
      try {
        const auto c = reduce(s);
        longest = std::max(longest, c.moves.size());
        if (c.moves.size() > 5 || !is_base_case(c.terminal) || !verify_certificate(c)) ++bad;
      } catch (const ReduceError&) {
        ++bad;
      }
    }
    const double secs = since(t0);
    std::ostringstream d;
    d << stars.size() << " labeled stars, " << bad << " failures, at most " << longest
      << " moves, " << secs << " s";
    return Outcome{bad == 0 && secs < 10.0, d.str()};
  });

  criterion(5, "squared-link bounds", [] {
    std::size_t bad = 0, most = 0;
    const auto stars = enumerate_stars();
    for (const auto& s : stars) {
      try {
        const auto l = squared_link(s);
        const std::size_t k = l.segments.size();
        const std::set<Point4> corners(l.vertices.begin(), l.vertices.end());
        most = std::max(most, k);
        if (k != 2 * s.size() || k % 2 || k > 16 || corners.size() != k) ++bad;
      } catch (const ReduceError&) {
        ++bad;
      }
    }
    std::ostringstream d;
    d << stars.size() << " links, " << bad << " failures, at most " << most << " segments";
    return Outcome{bad == 0, d.str()};
  });

  criterion(6, "surface fixtures", [] {
    const auto sphere = validate(surface_of(fixtures::cube()));
    const auto torus = validate(surface_of(fixtures::torus_ring()));
    bool triangles = !sphere.star_histogram.empty();
    for (const auto& [id, n] : sphere.star_histogram) triangles = triangles && id == 1;
    const bool ok = sphere.is_closed_manifold && sphere.euler_characteristic == 2 &&
                    sphere.orientable && sphere.genus_per_component == std::vector<int>{0} &&
                    triangles && torus.is_closed_manifold && torus.euler_characteristic == 0 &&
                    torus.genus_per_component == std::vector<int>{1};
    std::ostringstream d;
    d << "sphere chi=" << sphere.euler_characteristic << " genus="
      << (sphere.genus_per_component.empty() ? -1 : sphere.genus_per_component[0])
      << (sphere.orientable ? " orientable" : " non-orientable")
      << (triangles ? " all-triangle stars" : " mixed stars") << "; torus chi="
      << torus.euler_characteristic << " genus="
      << (torus.genus_per_component.empty() ? -1 : torus.genus_per_component[0]);
    return Outcome{ok, d.str()};
  });

  criterion(7, "transverse field", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t samples = 0, low = 0;
    double worst = 1.0, interface = 0.0;
    for (const auto& [name, s] : corpus().surfaces) {
      FieldOptions o;
      o.m = 4;
      const auto r = assemble_field(s, o);
      samples += r.samples.size();
      for (const auto& p : r.samples) {
        if (!(p.margin > 1e-3)) ++low;
      }
      worst = std::min(worst, r.min_margin);
      interface = std::max(interface, r.interface_12);
    }
    std::vector<std::string> uncertified;
    for (const auto& c : certify_all()) {
      if (!c.certified) uncertified.push_back(std::to_string(c.class_id) + " " + c.signature.to_string());
    }
    const double secs = since(t0);
    std::ostringstream d;
    d << corpus().surfaces.size() << " surfaces (" << corpus().excluded << " excluded), "
      << samples << " samples, " << low << " with margin <= 1e-3, min margin " << worst
      << ", interface " << interface << "; " << classify_all().size() - uncertified.size()
      << "/" << classify_all().size() << " classes certified";
    if (!uncertified.empty()) d << ", uncertified: " << join(uncertified);
    d << ", " << secs << " s";
    return Outcome{low == 0 && interface <= 1e-12 && uncertified.empty() && secs < 60.0, d.str()};
  });

  criterion(8, "mesh convergence", [] {
    double worst4 = 0.0, worst_ratio = 0.0;
    bool bounded = true;
    for (const auto& [name, s] : corpus().surfaces) {
      const auto r4 = rounded_mesh(s, 4, 4);
      const auto r8 = rounded_mesh(s, 8, 4);
      bounded = bounded && r4.vertex_deviation <= 2.0 / 4 && r8.vertex_deviation <= 2.0 / 8;
      worst4 = std::max(worst4, r4.vertex_deviation);
      worst_ratio = std::max(worst_ratio, r8.vertex_deviation / r4.vertex_deviation);
    }
    std::ostringstream d;
    d << "max deviation at m=4 " << worst4 << " (bound 0.5), worst m=8/m=4 ratio "
      << worst_ratio << " (bound 0.55)";
    return Outcome{bounded && worst_ratio <= 0.55, d.str()};
  });

  criterion(9, "determinism", [] {
    const fs::path root = fs::temp_directory_path() / "gridstar_acceptance";
    fs::remove_all(root);
    cli_suite(root / "a");
    cli_suite(root / "b");
    std::size_t files = 0;
    std::vector<std::string> differ;
    for (const auto& e : fs::directory_iterator(root / "a")) {
      ++files;
      const fs::path other = root / "b" / e.path().filename();
      if (!fs::exists(other) ||
          io::read_file(e.path().string()) != io::read_file(other.string())) {
        differ.push_back(e.path().filename().string());
      }
    }
    std::size_t files_b = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(root / "b")) ++files_b;
    fs::remove_all(root);
    std::ostringstream d;
    d << files << " output files compared";
    if (!differ.empty()) d << ", differing: " << join(differ);
    return Outcome{differ.empty() && files == files_b && files > 0, d.str()};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
