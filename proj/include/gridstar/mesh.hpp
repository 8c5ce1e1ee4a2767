#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gridstar/smooth.hpp"
#include "gridstar/surface.hpp"

namespace gridstar {

struct TriangleMesh {
  std::vector<Vec4> vertices;
  std::vector<Vec4> preimages;  // matching point of the gridded surface
  std::vector<std::array<std::size_t, 3>> triangles;
};

struct MeshCheck {
  bool closed = false;      // every edge in exactly two triangles
  bool oriented = false;    // every directed edge used once
  long euler = 0;
};

MeshCheck check_mesh(const TriangleMesh& mesh);

struct MeshReport {
  TriangleMesh mesh;
  MeshCheck check;
  /// Largest distance from a mesh vertex to the gridded surface.
  double vertex_deviation = 0.0;
  /// Largest |Phi(p) - p|; bounds the Hausdorff distance in both directions.
  double hausdorff_bound = 0.0;
};

/// Image of a surface point under the rounding map (flat interiors,
/// quarter-cylinder collars of radius 1/m on non-coplanar edges, coned vertex
/// patches).
class Rounding {
 public:
  Rounding(const GriddedSurface& s, int m);
  /// (s, t) in [0,1]^2 are local coordinates of face `face` along i and j.
  Vec4 map(std::size_t face, double s, double t) const;

 private:
  Vec4 collar(std::size_t face, double s, double t) const;

  const GriddedSurface& surface_;
  int m_;
  double h_;
  std::map<GridEdge, std::vector<std::size_t>> edge_inc_;
};

/// Throws MeshNotClosed, InvalidSubdivision, std::invalid_argument (odd or
/// non-positive arc_segments).
MeshReport rounded_mesh(const GriddedSurface& s, int m, int arc_segments, int threads = 0);

/// Distance from x to the nearest face of s.
double distance_to_surface(const GriddedSurface& s, const Vec4& x);

/// OBJ text: three columns when the surface lies in a coordinate hyperplane
/// (that coordinate dropped), otherwise "v x y z w".
std::string to_obj(const TriangleMesh& mesh, std::optional<int> flat_axis);

/// Sidecar describing the columns of a 4-column OBJ and a default 3D view.
std::string projection_sidecar(std::optional<int> flat_axis);

}  // namespace gridstar
