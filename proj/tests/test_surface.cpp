#include "doctest.h"

#include <random>
#include <set>

#include "gridstar/reduce.hpp"
#include "gridstar/starcomb.hpp"
#include "gridstar/surface.hpp"

using namespace gridstar;

namespace {

GriddedSurface surface_of(const std::vector<Cell3>& cells) {
  return GriddedSurface(boundary_of_3chain(cells));
}

// V - E + F straight from the faces.
long euler_oracle(const GriddedSurface& s) {
  std::set<Point4> v;
  std::set<std::pair<Point4, int>> e;
  for (const auto& f : s.faces()) {
    for (const auto& c : f.corners()) v.insert(c);
    for (const auto& g : edges_of_face(f)) e.insert({g.base, g.axis});
  }
  return long(v.size()) - long(e.size()) + long(s.size());
}

}  // namespace

TEST_CASE("3-cells") {
  const auto c = Cell3::make({0, 0, 0, 0}, 4, 1, 2);
  CHECK(c.axes == std::array<int, 3>{1, 2, 4});
  CHECK(c.faces().size() == 6);
  CHECK_THROWS(Cell3::make({0, 0, 0, 0}, 1, 1, 2));
  const std::vector<Cell3> twice{c, c};
  CHECK_THROWS_AS(boundary_of_3chain(twice), std::invalid_argument);
}

TEST_CASE("cube boundary is a sphere") {
  const auto s = surface_of(fixtures::cube());
  CHECK(s.size() == 6);
  const auto r = validate(s);
  CHECK(r.is_closed_manifold);
  CHECK(r.orientable);
  CHECK(r.euler_characteristic == 2);
  CHECK(r.euler_characteristic == euler_oracle(s));
  REQUIRE(r.components.size() == 1);
  CHECK(r.components[0].genus == 0);
  CHECK(r.star_histogram == std::map<int, std::size_t>{{1, 8}});
  CHECK(r.vertices == 8);
  CHECK(r.edges == 12);
  CHECK(s.flat_axis() == 4);
}

TEST_CASE("torus ring") {
  const auto s = surface_of(fixtures::torus_ring());
  const auto r = validate(s);
  CHECK(r.is_closed_manifold);
  CHECK(r.orientable);
  CHECK(r.euler_characteristic == 0);
  CHECK(r.euler_characteristic == euler_oracle(s));
  CHECK(r.genus_per_component == std::vector<int>{1});
  CHECK(r.orientation.size() == s.size());
}

TEST_CASE("boxes and two cells") {
  for (const auto& cells : {fixtures::two_cells(), fixtures::box(3, 1, 1), fixtures::box(2, 2, 2)}) {
    const auto s = surface_of(cells);
    const auto r = validate(s);
    CHECK(r.is_closed_manifold);
    CHECK(r.euler_characteristic == 2);
    CHECK(r.euler_characteristic == euler_oracle(s));
  }
  const auto r = validate(surface_of(fixtures::box(3, 1, 1)));
  CHECK(r.star_histogram == std::map<int, std::size_t>{{1, 8}, {3, 8}});
}

TEST_CASE("two components") {
  std::vector<Cell3> cells{Cell3::make({0, 0, 0, 0}, 1, 2, 3), Cell3::make({5, 0, 0, 0}, 1, 2, 4)};
  const auto s = surface_of(cells);
  const auto r = validate(s);
  CHECK(r.is_closed_manifold);
  CHECK(r.components.size() == 2);
  CHECK(r.euler_characteristic == 4);
  CHECK_FALSE(s.flat_axis().has_value());
}

TEST_CASE("non-manifold inputs") {
  // cubes meeting along an edge: four faces on that edge
  std::vector<Cell3> cells{Cell3::make({0, 0, 0, 0}, 1, 2, 3), Cell3::make({1, 1, 0, 0}, 1, 2, 3)};
  const auto r = validate(surface_of(cells));
  CHECK_FALSE(r.is_closed_manifold);
  CHECK_FALSE(r.violations.empty());
  CHECK(r.orientation.empty());

  // a single face has boundary edges
  const GriddedSurface one({GridFace::make({0, 0, 0, 0}, 1, 2)});
  CHECK_FALSE(validate(one).is_closed_manifold);
  CHECK_THROWS_AS(vertex_stars(one), SurfaceError);

  // cubes sharing only a vertex
  std::vector<Cell3> pinched{Cell3::make({0, 0, 0, 0}, 1, 2, 3), Cell3::make({1, 1, 1, 0}, 1, 2, 3)};
  CHECK_FALSE(validate(surface_of(pinched)).is_closed_manifold);
}

TEST_CASE("realized stars") {
  for (const auto& c : classify_all()) {
    INFO(c.representative.to_string());
    const auto s = surface_of(fixtures::realize_star(c.representative));
    const auto r = validate(s);
    CHECK(r.is_closed_manifold);
    const auto stars = vertex_stars(s);
    REQUIRE(stars.count(Point4{0, 0, 0, 0}) == 1);
    CHECK(stars.at(Point4{0, 0, 0, 0}) == c.representative);
    CHECK(stars_of(s).at(Point4{0, 0, 0, 0}) == c.id);
  }
}

TEST_CASE("random chains") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cells = fixtures::random_chain(seed, 8);
    CHECK(cells.size() == 8);
    CHECK(cells == fixtures::random_chain(seed, 8));
    const auto s = surface_of(cells);
    const auto r = validate(s);
    CHECK(r.euler_characteristic == euler_oracle(s));
    if (r.is_closed_manifold) {
      CHECK(r.violations.empty());
      std::size_t hist = 0;
      for (const auto& [id, n] : r.star_histogram) hist += n;
      CHECK(hist == r.vertices);
    } else {
      CHECK_FALSE(r.violations.empty());
    }
  }
}

TEST_CASE("named fixtures") {
  CHECK(fixtures::by_name("cube") == fixtures::cube());
  CHECK(fixtures::by_name("torus") == fixtures::torus_ring());
  CHECK_FALSE(fixtures::by_name("star:1,2,-1,4,3,-4,-3,-2").empty());
  CHECK_THROWS_AS(fixtures::by_name("klein"), std::invalid_argument);
}
