#include "doctest.h"

#include "gridstar/lattice.hpp"
#include "gridstar/star.hpp"

using namespace gridstar;

TEST_CASE("signed axis keys") {
  int expected = 0;
  for (int v : {1, 2, 3, 4, -1, -2, -3, -4}) {
    const auto a = SignedAxis::from_int(v);
    CHECK(a.key() == expected);
    CHECK(SignedAxis::from_key(expected) == a);
    CHECK(a.antipode().value() == -v);
    ++expected;
  }
  CHECK_THROWS_AS(SignedAxis::from_int(0), std::invalid_argument);
  CHECK_THROWS_AS(SignedAxis::from_int(5), std::invalid_argument);
  CHECK(SignedAxis::all().size() == 8);
}

TEST_CASE("plane classes") {
  CHECK(PlaneClass::of(3, 1) == PlaneClass{1, 3});
  CHECK(PlaneClass::of(1, 2).complement() == std::array<int, 2>{3, 4});
  CHECK(PlaneClass::of(2, 4).complement() == std::array<int, 2>{1, 3});
  int idx = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) CHECK(PlaneClass::of(i, j).index() == idx++);
}

TEST_CASE("local faces") {
  const auto f = LocalFace::make(2, -3);
  CHECK(f.plane() == PlaneClass{2, 3});
  CHECK(f.contains(SignedAxis::from_int(-3)));
  CHECK(f.other(SignedAxis::from_int(2)).value() == -3);
  CHECK(LocalFace::make(2, -3) == LocalFace::make(-3, 2));
  CHECK_THROWS_AS(LocalFace::make(1, -1), StarError);
  try {
    LocalFace::make(2, 2);
  } catch (const StarError& e) {
    CHECK(e.kind() == StarError::Kind::AntipodalFace);
  }
}

TEST_CASE("grid faces and edges") {
  const auto g = GridFace::make({0, 0, 0, 0}, 3, 1);
  CHECK(g.i == 1);
  CHECK(g.j == 3);
  CHECK(g.has_corner({1, 0, 1, 0}));
  CHECK_FALSE(g.has_corner({0, 1, 0, 0}));
  const auto e = edges_of_face(g);
  CHECK(e[0].axis == 1);
  CHECK(e[1].base == Point4{1, 0, 0, 0});
  CHECK(e[1].axis == 3);
  CHECK(e[2].base == Point4{0, 0, 1, 0});
  CHECK(e[3].axis == 3);
  CHECK(boundary_sign(0) == 1);
  CHECK(boundary_sign(2) == -1);
  CHECK_THROWS(GridFace::make({0, 0, 0, 0}, 2, 2));
}

TEST_CASE("local form round trip") {
  const Point4 v{2, -1, 0, 3};
  for (auto u : SignedAxis::all()) {
    for (auto w : SignedAxis::all()) {
      if (u.axis() == w.axis()) continue;
      const auto lf = LocalFace::make(u, w);
      const auto g = grid_face_at(v, lf);
      CHECK(g.has_corner(v));
      CHECK(local_face(v, g) == lf);
    }
  }
  const std::vector<GridFace> faces{grid_face_at(v, LocalFace::make(1, 2)),
                                    grid_face_at(v, LocalFace::make(-1, 2)),
                                    GridFace::make({9, 9, 9, 9}, 1, 2)};
  CHECK(local_faces_at(v, faces).size() == 2);
}

TEST_CASE("star canonical form") {
  const auto a = Star::from_cycle({2, -1, -2, 1});
  const auto b = Star::from_cycle({1, 2, -1, -2});
  const auto c = Star::from_cycle({-2, -1, 2, 1});
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a.to_ints() == std::vector<int>{1, 2, -1, -2});
  CHECK(a.code() == c.code());
  CHECK(a.faces().size() == 4);
  CHECK(a.has_face(LocalFace::make(-1, 2)));
  CHECK_FALSE(a.has_face(LocalFace::make(1, 3)));
  CHECK(a.position(SignedAxis::from_int(3)) == a.size());
  const auto [p, q] = a.neighbours(SignedAxis::from_int(1));
  CHECK(((p.value() == 2 && q.value() == -2) || (p.value() == -2 && q.value() == 2)));
}

TEST_CASE("star errors") {
  CHECK_THROWS_AS(Star::from_cycle({1, 2}), StarError);
  CHECK_THROWS_AS(Star::from_cycle({1, 2, 1}), StarError);
  CHECK_THROWS_AS(Star::from_cycle({1, -1, 2}), StarError);

  auto kind_of = [](std::vector<LocalFace> faces) {
    try {
      star_cycle(faces);
    } catch (const StarError& e) {
      return e.kind();
    }
    return StarError::Kind::Malformed;
  };
  CHECK(kind_of({LocalFace::make(1, 2), LocalFace::make(2, 3), LocalFace::make(1, 3),
                 LocalFace::make(1, 4)}) == StarError::Kind::DegreeViolation);
  CHECK(kind_of({LocalFace::make(1, 2), LocalFace::make(2, 3), LocalFace::make(1, 3),
                 LocalFace::make(-1, -2), LocalFace::make(-2, -3), LocalFace::make(-1, -3)}) ==
        StarError::Kind::Disconnected);
  const std::vector<LocalFace> tri{LocalFace::make(3, 1), LocalFace::make(1, 2),
                                   LocalFace::make(2, 3)};
  CHECK(star_cycle(tri) == Star::from_cycle({1, 2, 3}));
}
