#include "gridstar/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace gridstar {

SignedAxis SignedAxis::from_int(int v) {
  if (v == 0 || v < -4 || v > 4) {
    throw std::invalid_argument("signed axis out of range: " +
                                std::to_string(v));
  }
  return SignedAxis(v);
}

const std::array<SignedAxis, 8>& SignedAxis::all() {
  static const std::array<SignedAxis, 8> axes = [] {
    std::array<SignedAxis, 8> a{};
    for (int k = 0; k < 8; ++k) a[k] = from_key(k);
    return a;
  }();
  return axes;
}

PlaneClass PlaneClass::of(int a, int b) {
  if (a == b || a < 1 || a > 4 || b < 1 || b > 4) {
    throw std::invalid_argument("invalid plane axes");
  }
  return a < b ? PlaneClass{a, b} : PlaneClass{b, a};
}

std::array<int, 2> PlaneClass::complement() const {
  std::array<int, 2> out{};
  int n = 0;
  for (int k = 1; k <= 4; ++k) {
    if (k != i && k != j) out[n++] = k;
  }
  return out;
}

int PlaneClass::index() const {
  static constexpr int table[5][5] = {{-1, -1, -1, -1, -1},
                                      {-1, -1, 0, 1, 2},
                                      {-1, -1, -1, 3, 4},
                                      {-1, -1, -1, -1, 5},
                                      {-1, -1, -1, -1, -1}};
  return table[i][j];
}

LocalFace LocalFace::make(SignedAxis u, SignedAxis v) {
  if (u.axis() == v.axis()) {
    throw StarError(StarError::Kind::AntipodalFace,
                    "face F_{" + std::to_string(u.value()) + "," +
                        std::to_string(v.value()) +
                        "} joins an axis with itself or its antipode");
  }
  return u < v ? LocalFace(u, v) : LocalFace(v, u);
}

LocalFace LocalFace::make(int u, int v) {
  return make(SignedAxis::from_int(u), SignedAxis::from_int(v));
}

std::string LocalFace::to_string() const {
  return "F_{" + std::to_string(u_.value()) + "," +
         std::to_string(v_.value()) + "}";
}

GridFace GridFace::make(Point4 base, int a, int b) {
  const PlaneClass p = PlaneClass::of(a, b);
  return GridFace{base, p.i, p.j};
}

std::array<Point4, 4> GridFace::corners() const {
  Point4 a = base, b = base, c = base;
  a[i - 1] += 1;
  b[j - 1] += 1;
  c[i - 1] += 1;
  c[j - 1] += 1;
  return {base, a, c, b};
}

bool GridFace::has_corner(const Point4& p) const {
  for (int k = 0; k < 4; ++k) {
    const int d = p[k] - base[k];
    if (k == i - 1 || k == j - 1) {
      if (d != 0 && d != 1) return false;
    } else if (d != 0) {
      return false;
    }
  }
  return true;
}

const char* to_string(StarError::Kind kind) {
  switch (kind) {
    case StarError::Kind::DegreeViolation: return "DegreeViolation";
    case StarError::Kind::Disconnected: return "Disconnected";
    case StarError::Kind::AntipodalFace: return "AntipodalFace";
    case StarError::Kind::Malformed: return "Malformed";
  }
  return "Unknown";
}

Point4 operator+(const Point4& a, const Point4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Point4 operator-(const Point4& a, const Point4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Point4 unit_point(SignedAxis a) {
  Point4 p{};
  p[a.axis() - 1] = a.sign();
  return p;
}

std::string to_string(const Point4& p) {
  std::ostringstream os;
  os << '(' << p[0] << ',' << p[1] << ',' << p[2] << ',' << p[3] << ')';
  return os.str();
}

std::array<GridEdge, 4> edges_of_face(const GridFace& f) {
  Point4 bi = f.base, bj = f.base;
  bi[f.i - 1] += 1;
  bj[f.j - 1] += 1;
  return {GridEdge{f.base, f.i}, GridEdge{bi, f.j}, GridEdge{bj, f.i},
          GridEdge{f.base, f.j}};
}

int boundary_sign(int k) { return k < 2 ? 1 : -1; }

LocalFace local_face(const Point4& v, const GridFace& f) {
  const int du = f.base[f.i - 1] == v[f.i - 1] ? 1 : -1;
  const int dv = f.base[f.j - 1] == v[f.j - 1] ? 1 : -1;
  return LocalFace::make(du * f.i, dv * f.j);
}

std::vector<LocalFace> local_faces_at(const Point4& v,
                                      std::span<const GridFace> faces) {
  std::vector<LocalFace> out;
  for (const auto& f : faces) {
    if (f.has_corner(v)) out.push_back(local_face(v, f));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GridFace grid_face_at(const Point4& v, const LocalFace& lf) {
  Point4 base = v;
  for (SignedAxis a : {lf.first(), lf.second()}) {
    if (a.sign() < 0) base[a.axis() - 1] -= 1;
  }
  return GridFace::make(base, lf.first().axis(), lf.second().axis());
}

}  // namespace gridstar
