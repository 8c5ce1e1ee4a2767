#include "doctest.h"

#include <filesystem>

#include "gridstar/io.hpp"

using namespace gridstar;
using io::Json;

TEST_CASE("star JSON") {
  const auto s = Star::from_cycle({1, 2, -1, 3});
  CHECK(io::star_from_json(io::to_json(s)) == s);
  const auto faces = Json::parse(R"({"faces": [[1,2],[2,-1],[-1,3],[3,1]]})");
  CHECK(io::star_from_json(faces) == s);
  CHECK_THROWS_AS(io::star_from_json(Json::parse(R"({"x": 1})")), io::FormatError);
  CHECK_THROWS_AS(io::star_from_json(Json::parse(R"({"cycle": "abc"})")), io::FormatError);
  CHECK_THROWS_AS(io::star_from_json(Json::parse(R"({"faces": [[1]]})")), io::FormatError);
}

TEST_CASE("surface and cells JSON") {
  const auto cells = fixtures::torus_ring();
  CHECK(io::cells_from_json(io::to_json(cells)) == cells);
  const GriddedSurface s(boundary_of_3chain(cells));
  const auto back = io::surface_from_json(io::to_json(s));
  CHECK(back.faces() == s.faces());
  CHECK_THROWS_AS(io::surface_from_json(Json::parse(R"({"faces":[{"base":[0,0,0],"axes":[1,2]}]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::surface_from_json(Json::parse(R"({"faces":[{"base":[0,0,0,0],"axes":[1,1]}]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::cells_from_json(Json::parse(R"({"cells":[{"base":[0,0,0,0],"axes":[1,2]}]})")),
                  io::FormatError);
}

TEST_CASE("reports") {
  const auto& classes = classify_all();
  const auto j = io::to_json(classes[1]);
  CHECK(j["signature"] == "(4)");
  CHECK(j["representative"] == Json::array({1, 2, -1, -2}));
  const std::string csv = io::classes_csv(classes);
  CHECK(csv.rfind("id,n,signature,representative,orbit_size\n1,3,\"(1,1,1)\"", 0) == 0);

  const auto cert = reduce(Star::from_cycle({1, 2, 3, 4}));
  const auto cj = io::to_json(cert);
  CHECK(cj["moves"].size() == cert.moves.size());
  CHECK(cj["terminal"]["cycle"].size() == 3);

  const GriddedSurface cube(boundary_of_3chain(fixtures::cube()));
  const auto r = validate(cube);
  CHECK(io::to_json(r)["euler_characteristic"] == 2);
  CHECK(io::histogram_csv(r) == "class_id,vertices\n1,8\n");
}

TEST_CASE("field CSV") {
  const GriddedSurface cube(boundary_of_3chain(fixtures::cube()));
  FieldOptions o;
  o.density = 1;
  const auto r = gridstar::assemble_field(cube, o);
  const std::string csv = io::field_csv(r);
  CHECK(csv.rfind("x1,x2,x3,x4,b1_1,b1_2,b1_3,b1_4,b2_1,b2_2,b2_3,b2_4,margin,case\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == long(r.samples.size()) + 1);
  CHECK(io::fmt(0.1) == "0.10000000000000001");
  CHECK(io::fmt(2.0) == "2");
}

TEST_CASE("atomic write") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gridstar_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "out.json").string();
  io::atomic_write(path, "first\n");
  io::atomic_write(path, "second\n");
  CHECK(io::read_file(path) == "second\n");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  CHECK_THROWS_AS(io::read_file((dir / "missing").string()), io::FormatError);
  CHECK_THROWS_AS(io::atomic_write((dir / "no" / "such" / "x").string(), "x"), io::FormatError);
  fs::remove_all(dir);
}
