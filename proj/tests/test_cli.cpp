#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gridstar/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& work() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "gridstar_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + GRIDSTAR_CLI + "\" " + args + " > \"" +
                          (work() / "stdout.txt").string() + "\" 2> \"" +
                          (work() / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out() { return gridstar::io::read_file((work() / "stdout.txt").string()); }

std::string file(const std::string& name) { return (work() / name).string(); }

}  // namespace

TEST_CASE("usage") {
  CHECK(run("--version") == 0);
  CHECK(out().rfind("gridstar 0.3.0 (", 0) == 0);
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("stars") == 2);
  CHECK(run("stars enumerate --format xml") == 2);
  CHECK(run("stars classify --cycle 1,2,5") == 2);
  CHECK(run("stars classify --cycle 1,x") == 2);
  CHECK(run("stars classify") == 2);
  CHECK(run("stars enumerate --min 2") == 2);
  CHECK(run("surface validate " + file("missing.json")) == 2);
  CHECK(run("smooth certify --class 99") == 2);
}

TEST_CASE("stars") {
  CHECK(run("stars enumerate --min 3 --max 3") == 0);
  CHECK(nlohmann::json::parse(out())["count"] == 32);
  CHECK(run("stars classify --cycle 2,-1,-2,1") == 0);
  CHECK(nlohmann::json::parse(out())["class"]["signature"] == "(4)");
  std::ofstream(file("star.json")) << R"({"faces": [[1,2],[2,3],[3,1]]})";
  CHECK(run("stars classify " + file("star.json")) == 0);
  CHECK(nlohmann::json::parse(out())["class"]["id"] == 1);
  CHECK(run("stars reduce --cycle 1,2,3,4,-1,-2,-3,-4") == 0);
  CHECK(nlohmann::json::parse(out())["link"]["segments"] == 16);

  // 23 orbits against the 20 expected: validation failure, records still written
  CHECK(run("stars classify-all --out " + file("classes.json")) == 1);
  const auto classes = nlohmann::json::parse(gridstar::io::read_file(file("classes.json")));
  CHECK(classes["classes"].size() == 23);
  CHECK(run("stars lemmas") == 1);
}

TEST_CASE("surface and smooth") {
  CHECK(run("surface from-cells --fixture cube --out " + file("cube.json")) == 0);
  CHECK(run("surface validate " + file("cube.json")) == 0);
  const auto rep = nlohmann::json::parse(out());
  CHECK(rep["euler_characteristic"] == 2);
  CHECK(rep["components"] == 1);
  CHECK(run("surface stars --format csv " + file("cube.json")) == 0);
  CHECK(out().rfind("x1,x2,x3,x4,class_id\n", 0) == 0);

  std::ofstream(file("cells.json"))
      << R"({"cells":[{"base":[0,0,0,0],"axes":[1,2,3]},{"base":[1,1,0,0],"axes":[1,2,3]}]})";
  CHECK(run("surface from-cells " + file("cells.json") + " --out " + file("pinch.json")) == 0);
  CHECK(run("surface validate " + file("pinch.json")) == 1);
  CHECK(run("smooth mesh " + file("pinch.json") + " --out " + file("pinch.obj")) == 1);

  CHECK(run("surface from-cells --seed 5 --cells 4") == 0);
  const std::string a = out();
  CHECK(run("surface from-cells --seed 5 --cells 4") == 0);
  CHECK(out() == a);

  CHECK(run("smooth field " + file("cube.json") + " --m 4") == 0);
  CHECK(nlohmann::json::parse(out())["below_tolerance"] == 0);
  CHECK(run("smooth field " + file("cube.json") + " --m 1") == 2);
  CHECK(run("smooth mesh " + file("cube.json")) == 2);
  CHECK(run("smooth mesh " + file("cube.json") + " --arc-segments 3 --out " + file("c.obj")) == 2);
  CHECK(run("smooth mesh " + file("cube.json") + " --out " + file("cube.obj")) == 0);
  CHECK(fs::exists(file("cube.obj")));
  CHECK_FALSE(fs::exists(file("cube.obj.projection.json")));

  CHECK(run("surface from-cells --fixture star:1,2,-1,4,3,-4,-3,-2 --out " + file("s8.json")) == 0);
  CHECK(run("smooth mesh " + file("s8.json") + " --out " + file("s8.obj")) == 0);
  CHECK(fs::exists(file("s8.obj.projection.json")));

  CHECK(run("smooth certify --class 1") == 0);
  CHECK(run("smooth certify --class 8") == 1);
}

TEST_CASE("thread count does not change output") {
  CHECK(run("--threads 1 stars reduce --all --format csv") == 0);
  const std::string one = out();
  CHECK(run("--threads 4 stars reduce --all --format csv") == 0);
  CHECK(out() == one);
  CHECK(std::count(one.begin(), one.end(), '\n') == 2767);
}
