#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridstar {

/// Integer lattice point of R^4.
using Point4 = std::array<int, 4>;

/// One of the eight signed unit directions +-e1..+-e4.
class SignedAxis {
 public:
  constexpr SignedAxis() = default;

  /// Throws std::invalid_argument unless v is in {-4..-1, 1..4}.
  static SignedAxis from_int(int v);

  constexpr int value() const { return value_; }
  constexpr int axis() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr SignedAxis antipode() const { return SignedAxis(-value_); }

  // Sort key placing positive axes first: 1,2,3,4,-1,-2,-3,-4 -> 0..7.
  constexpr int key() const { return value_ > 0 ? value_ - 1 : 3 - value_; }

  static constexpr SignedAxis from_key(int k) {
    return SignedAxis(k < 4 ? k + 1 : 3 - k);
  }

  friend constexpr bool operator==(SignedAxis a, SignedAxis b) {
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(SignedAxis a,
                                                    SignedAxis b) {
    return a.key() <=> b.key();
  }

  /// All eight axes in key order.
  static const std::array<SignedAxis, 8>& all();

 private:
  constexpr explicit SignedAxis(int v) : value_(static_cast<std::int8_t>(v)) {}
  std::int8_t value_ = 1;
};

/// Unordered pair of distinct positive axis indices {i,j}, i<j; one of the
/// six coordinate 2-planes.
struct PlaneClass {
  int i = 1;
  int j = 2;

  static PlaneClass of(int a, int b);
  /// The two axes not in this plane, ascending.
  std::array<int, 2> complement() const;
  /// Index 0..5 in the order 12,13,14,23,24,34.
  int index() const;

  friend bool operator==(const PlaneClass&, const PlaneClass&) = default;
  friend auto operator<=>(const PlaneClass&, const PlaneClass&) = default;
};

/// A square F_{u,v} = {a e_u + b e_v : 0 <= a,b <= 1} at the origin.
class LocalFace {
 public:
  /// Throws StarError(AntipodalFace) when |u| == |v|.
  static LocalFace make(SignedAxis u, SignedAxis v);
  static LocalFace make(int u, int v);

  SignedAxis first() const { return u_; }
  SignedAxis second() const { return v_; }
  PlaneClass plane() const { return PlaneClass::of(u_.axis(), v_.axis()); }
  bool contains(SignedAxis a) const { return u_ == a || v_ == a; }
  /// The other axis of the face; a must be one of the two.
  SignedAxis other(SignedAxis a) const { return u_ == a ? v_ : u_; }

  std::string to_string() const;

  friend bool operator==(const LocalFace&, const LocalFace&) = default;
  friend auto operator<=>(const LocalFace&, const LocalFace&) = default;

 private:
  LocalFace(SignedAxis u, SignedAxis v) : u_(u), v_(v) {}
  SignedAxis u_;
  SignedAxis v_;
};

/// Unit square of the integer grid: corners base, base+e_i, base+e_j,
/// base+e_i+e_j with 1 <= i < j <= 4.
struct GridFace {
  Point4 base{};
  int i = 1;
  int j = 2;

  static GridFace make(Point4 base, int a, int b);

  PlaneClass plane() const { return {i, j}; }
  std::array<Point4, 4> corners() const;
  bool has_corner(const Point4& p) const;

  friend bool operator==(const GridFace&, const GridFace&) = default;
  friend auto operator<=>(const GridFace&, const GridFace&) = default;
};

/// Unit segment [base, base + e_axis].
struct GridEdge {
  Point4 base{};
  int axis = 1;

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
  friend auto operator<=>(const GridEdge&, const GridEdge&) = default;
};

/// Error raised when a set of local faces is not a single manifold star.
class StarError : public std::runtime_error {
 public:
  enum class Kind { DegreeViolation, Disconnected, AntipodalFace, Malformed };

  StarError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(StarError::Kind kind);

Point4 operator+(const Point4& a, const Point4& b);
Point4 operator-(const Point4& a, const Point4& b);
Point4 unit_point(SignedAxis a);
std::string to_string(const Point4& p);

/// Boundary edges of f, in the order bottom, right, top, left.
std::array<GridEdge, 4> edges_of_face(const GridFace& f);

/// Sign (+1/-1) with which the counter-clockwise boundary of f traverses
/// the edge at position k of edges_of_face(f).
int boundary_sign(int k);

/// The local form F_{u,v} of face f seen from its corner v; f must have v as
/// a corner.
LocalFace local_face(const Point4& v, const GridFace& f);

/// Local forms of every face in `faces` that has v as a corner, sorted and
/// deduplicated.
std::vector<LocalFace> local_faces_at(const Point4& v,
                                      std::span<const GridFace> faces);

/// The grid face whose local form at v is lf.
GridFace grid_face_at(const Point4& v, const LocalFace& lf);

}  // namespace gridstar
