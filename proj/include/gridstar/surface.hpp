#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridstar/lattice.hpp"
#include "gridstar/star.hpp"

namespace gridstar {

/// Unit 3-cell of the grid: base + [0,1] along three distinct axes i<j<k.
struct Cell3 {
  Point4 base{};
  std::array<int, 3> axes{1, 2, 3};

  static Cell3 make(Point4 base, int a, int b, int c);
  std::array<GridFace, 6> faces() const;

  friend bool operator==(const Cell3&, const Cell3&) = default;
  friend auto operator<=>(const Cell3&, const Cell3&) = default;
};

/// Mod-2 boundary of a set of 3-cells, sorted. Throws std::invalid_argument
/// on repeated cells.
std::vector<GridFace> boundary_of_3chain(std::span<const Cell3> cells);

/// Finite set of grid faces (kept sorted and unique).
class GriddedSurface {
 public:
  GriddedSurface() = default;
  explicit GriddedSurface(std::vector<GridFace> faces);

  const std::vector<GridFace>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  bool contains(const GridFace& f) const;

  std::vector<Point4> vertices() const;
  std::vector<GridEdge> edges() const;
  /// Faces incident to each edge, by index into faces().
  std::map<GridEdge, std::vector<std::size_t>> edge_incidence() const;
  /// Faces having each vertex as a corner, by index into faces().
  std::map<Point4, std::vector<std::size_t>> vertex_incidence() const;
  /// Some coordinate constant on every face, if any (axis 1..4).
  std::optional<int> flat_axis() const;

 private:
  std::vector<GridFace> faces_;
};

struct Violation {
  std::string location;
  std::string reason;
};

struct ComponentInfo {
  std::size_t faces = 0;
  long euler = 0;
  bool orientable = true;
  /// Orientable genus, or the crosscap number when not orientable.
  long genus = 0;
};

struct SurfaceReport {
  bool is_closed_manifold = false;
  bool orientable = false;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t face_count = 0;
  long euler_characteristic = 0;
  std::vector<ComponentInfo> components;
  std::vector<int> genus_per_component;
  std::map<int, std::size_t> star_histogram;  // class id -> vertex count
  std::vector<Violation> violations;
  /// +1/-1 per face (faces() order) of a coherent orientation; empty when the
  /// surface is not a closed orientable manifold.
  std::vector<int> orientation;
};

SurfaceReport validate(const GriddedSurface& s, int threads = 0);

class SurfaceError : public std::runtime_error {
 public:
  SurfaceError(const Point4& where, const std::string& what)
      : std::runtime_error(to_string(where) + ": " + what), where_(where) {}
  const Point4& where() const { return where_; }

 private:
  Point4 where_;
};

/// Star at every vertex. Throws SurfaceError when a vertex is not a manifold
/// point.
std::map<Point4, Star> vertex_stars(const GriddedSurface& s);

/// Class id of the star at every vertex.
std::map<Point4, int> stars_of(const GriddedSurface& s);

// Fixtures

namespace fixtures {

std::vector<Cell3> cube();
std::vector<Cell3> two_cells();
/// a x b x c box of cells in the 123 hyperplane.
std::vector<Cell3> box(int a, int b, int c);
/// 3x3x1 block of cells with the centre removed.
std::vector<Cell3> torus_ring();
/// Cells whose mod-2 boundary has the star s at the origin, from the
/// reduction certificate of s.
std::vector<Cell3> realize_star(const Star& s);
/// Connected random chain of `count` cells in all four axis-triple
/// orientations, reproducible from `seed`.
std::vector<Cell3> random_chain(std::uint64_t seed, int count);

/// Named fixture: cube, two-cell, box, torus, or "star:<cycle>" e.g.
/// "star:1,2,-1,3,4,-2". Throws std::invalid_argument.
std::vector<Cell3> by_name(const std::string& name);

}  // namespace fixtures

}  // namespace gridstar
