#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridstar/lattice.hpp"
#include "gridstar/star.hpp"
#include "gridstar/starcomb.hpp"
#include "gridstar/surface.hpp"

namespace gridstar {

using Vec4 = Eigen::Vector4d;

Vec4 axis_vector(SignedAxis a);
Vec4 axis_vector(int positive_axis);

/// Point of G(2,4) stored by an orthonormal basis.
struct Plane2 {
  Vec4 b1 = Vec4::UnitZ();
  Vec4 b2 = Vec4::UnitW();

  /// Gram-Schmidt on (v1, v2); throws std::invalid_argument if degenerate.
  static Plane2 span(const Vec4& v1, const Vec4& v2);
  /// Orthogonal complement of the coordinate plane {i,j}.
  static Plane2 complement(const PlaneClass& p);

  Eigen::Matrix4d projector() const;
  bool is_orthonormal(double tol = 1e-12) const;
};

/// sqrt(sum sin^2 of the principal angles) = |P1 - P2|_F / sqrt 2.
double grassmann_distance(const Plane2& a, const Plane2& b);

/// det[e_i, e_j, b1, b2] for the coordinate plane {i,j}.
double face_minor(const Plane2& p, const PlaneClass& plane);

/// min over the given planes of |det[e_i, e_j, b1, b2]|.
double margin(const Plane2& p, const std::vector<PlaneClass>& planes);

class SmoothError : public std::runtime_error {
 public:
  enum class Kind {
    OutOfDomain,
    CoplanarEdge,
    CertificationFailure,
    StitchMismatch,
    MeshNotClosed,
    InvalidSubdivision,
  };
  SmoothError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(SmoothError::Kind kind);

/// Throws InvalidSubdivision unless m >= 2.
void check_subdivision(int m);

// ---------------------------------------------------------------------------
// Cases 1 and 2

/// Complement of the face plane; y must lie in the face at distance >= 1/m
/// from its boundary (up to 1e-12), else OutOfDomain.
Plane2 field_case1(const GridFace& face, const Vec4& y, int m);

/// Collar geometry at a point z of the common edge of two faces.
struct EdgeRounding {
  Vec4 z = Vec4::Zero();
  Vec4 z_prime = Vec4::Zero();
  double radius = 0.5;
  SignedAxis d1;  // inward direction of the first face
  SignedAxis d2;  // inward direction of the second face
  int edge_axis = 1;
  int v12 = 4;  // remaining axis

  /// Throws CoplanarEdge when |d1| == |d2|.
  static EdgeRounding make(const Vec4& z, int edge_axis, SignedAxis d1, SignedAxis d2,
                           int m);
};

/// span{x - z', e_v12} where x is y moved along the edge onto l1 or l2.
Plane2 field_case2(const EdgeRounding& r, const Vec4& y);

/// The collar field at transverse distance tau*h inside the face with inward
/// direction d1, the other face having inward direction d2 (tau in [0,1]).
/// Coplanar edges give the face complement.
Plane2 collar_plane(int edge_axis, SignedAxis d1, SignedAxis d2, double tau);

// ---------------------------------------------------------------------------
// Case 3

struct PlaneSample {
  Vec4 point = Vec4::Zero();
  Plane2 plane;
  double margin = 0.0;
  int field_case = 1;
};

/// Field on the vertex patch of one star. Points are a e_u + b e_v (a, b in
/// [0,1], in units of 1/m) on face F_{u,v}.
class VertexField {
 public:
  VertexField(Star star, Plane2 seed);
  /// Field of (rep_star, rep_seed) pulled back along to_rep, where
  /// to_rep.apply(star) == rep_star.
  VertexField(Star rep_star, Plane2 rep_seed, const Symmetry& to_rep);

  const Star& star() const { return star_; }
  const Plane2& seed() const { return seed_; }

  /// u, v must form a face of the star; a along u, b along v.
  Plane2 at(SignedAxis u, SignedAxis v, double a, double b) const;
  /// Case-2 value at the link point e_x + s e_y of face F_{x,y}.
  Plane2 link_plane(SignedAxis x, SignedAxis y, double s) const;
  /// Field along the internal edge towards e_a, at radius rho.
  Plane2 edge_plane(SignedAxis a, double rho) const;

  /// Seed has every cycle-ordered face minor of one common nonzero sign.
  static bool seed_admissible(const Star& s, const Plane2& seed);
  /// Smallest |face minor| of the seed, negated when not admissible.
  static double seed_score(const Star& s, const Plane2& seed);
  /// Exact test for an admissible seed plane.
  static bool admissible_seed_exists(const Star& s);

 private:
  Plane2 rep_at(SignedAxis u, SignedAxis v, double a, double b) const;
  Plane2 rep_link(SignedAxis x, SignedAxis y, double s) const;
  Plane2 rep_edge(SignedAxis a, double rho) const;
  Plane2 to_star(const Plane2& p) const;

  Star star_;
  Plane2 seed_;
  Star rep_star_;
  Plane2 rep_seed_;
  Symmetry to_rep_;
  Eigen::Matrix4d back_ = Eigen::Matrix4d::Identity();  // rep -> star
};

struct Certification {
  double worst_margin = 0.0;
  double origin_margin = 0.0;
  int winding = 0;
  std::size_t samples = 0;
};

/// Samples a grid x grid lattice on each face of the patch and measures the
/// margin against every incident face.
Certification certify_field(const VertexField& f, int grid);

struct ClassCertificate {
  int class_id = 0;
  Star representative;
  Signature signature;
  bool seed_exists = false;
  bool certified = false;
  Plane2 seed;
  double origin_margin = 0.0;
  double worst_margin = 0.0;
  int winding = 0;
  std::string reason;
};

inline constexpr int kCertificationGrid = 33;
inline constexpr double kDefaultTolerance = 1e-6;

/// Certificate for one class (cached; deterministic).
ClassCertificate certify_class(int class_id, double tol = kDefaultTolerance);
std::vector<ClassCertificate> certify_all(int threads = 0,
                                          double tol = kDefaultTolerance);

/// Field of the class of s transported to s.
VertexField vertex_field(const Star& s, double tol = kDefaultTolerance);

/// Samples of the Case-3 field on the vertex patch of s at subdivision m, with
/// points relative to the vertex. Throws CertificationFailure.
std::vector<PlaneSample> field_case3(const Star& s, int m, int grid = kCertificationGrid,
                                     double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Whole surface

struct FieldOptions {
  int m = 4;
  int density = 4;  // samples per subsquare side
  double tol = kDefaultTolerance;
  int threads = 0;
};

struct FieldReport {
  std::vector<PlaneSample> samples;
  std::size_t count_by_case[3] = {0, 0, 0};
  double min_margin = 0.0;
  Vec4 worst_point = Vec4::Zero();
  double interface_12 = 0.0;   // Case-1/Case-2 disagreement
  double stitch = 0.0;         // max disagreement on any region boundary
  double lipschitz = 0.0;      // max distance / spacing between neighbours
  std::size_t below_tolerance = 0;
};

inline constexpr double kStitchTolerance = 1e-9;

/// Throws StitchMismatch, CertificationFailure, InvalidSubdivision.
FieldReport assemble_field(const GriddedSurface& s, const FieldOptions& opts);

}  // namespace gridstar
