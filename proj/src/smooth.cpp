#include "gridstar/smooth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "gridstar/parallel.hpp"
#include "gridstar/reduce.hpp"

namespace gridstar {

Vec4 axis_vector(SignedAxis a) {
  Vec4 v = Vec4::Zero();
  v[a.axis() - 1] = a.sign();
  return v;
}

Vec4 axis_vector(int positive_axis) {
  Vec4 v = Vec4::Zero();
  v[positive_axis - 1] = 1.0;
  return v;
}

Plane2 Plane2::span(const Vec4& v1, const Vec4& v2) {
  const double n1 = v1.norm();
  if (n1 < 1e-14) throw std::invalid_argument("degenerate plane basis");
  Plane2 p;
  p.b1 = v1 / n1;
  Vec4 w = v2 - p.b1.dot(v2) * p.b1;
  w -= p.b1.dot(w) * p.b1;
  const double n2 = w.norm();
  if (n2 < 1e-14 * std::max(1.0, v2.norm())) {
    throw std::invalid_argument("degenerate plane basis");
  }
  p.b2 = w / n2;
  return p;
}

Plane2 Plane2::complement(const PlaneClass& p) {
  const auto c = p.complement();
  return Plane2{axis_vector(c[0]), axis_vector(c[1])};
}

Eigen::Matrix4d Plane2::projector() const {
  return b1 * b1.transpose() + b2 * b2.transpose();
}

bool Plane2::is_orthonormal(double tol) const {
  return std::abs(b1.norm() - 1.0) <= tol && std::abs(b2.norm() - 1.0) <= tol &&
         std::abs(b1.dot(b2)) <= tol;
}

double grassmann_distance(const Plane2& a, const Plane2& b) {
  return (a.projector() - b.projector()).norm() / std::numbers::sqrt2;
}

namespace {

// Sign of the permutation (i,j,k,l) of (1,2,3,4).
int parity(std::array<int, 4> p) {
  int s = 1;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y)
      if (p[x] > p[y]) s = -s;
  return s;
}

// det[e_u, e_v, b1, b2] for signed axes.
double signed_minor(const Plane2& p, SignedAxis u, SignedAxis v) {
  const double m = face_minor(p, PlaneClass::of(u.axis(), v.axis()));
  const int order = u.axis() < v.axis() ? 1 : -1;
  return u.sign() * v.sign() * order * m;
}

}  // namespace

double face_minor(const Plane2& p, const PlaneClass& plane) {
  const auto c = plane.complement();
  const int k = c[0] - 1, l = c[1] - 1;
  const double pkl = p.b1[k] * p.b2[l] - p.b1[l] * p.b2[k];
  return parity({plane.i, plane.j, c[0], c[1]}) * pkl;
}

double margin(const Plane2& p, const std::vector<PlaneClass>& planes) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& pl : planes) m = std::min(m, std::abs(face_minor(p, pl)));
  return m;
}

const char* to_string(SmoothError::Kind kind) {
  switch (kind) {
    case SmoothError::Kind::OutOfDomain: return "OutOfDomain";
    case SmoothError::Kind::CoplanarEdge: return "CoplanarEdge";
    case SmoothError::Kind::CertificationFailure: return "CertificationFailure";
    case SmoothError::Kind::StitchMismatch: return "StitchMismatch";
    case SmoothError::Kind::MeshNotClosed: return "MeshNotClosed";
    case SmoothError::Kind::InvalidSubdivision: return "InvalidSubdivision";
  }
  return "Unknown";
}

void check_subdivision(int m) {
  if (m < 2) {
    throw SmoothError(SmoothError::Kind::InvalidSubdivision,
                      "subdivision m=" + std::to_string(m) + " below minimum 2");
  }
}

// ---------------------------------------------------------------------------
// Cases 1 and 2

Plane2 field_case1(const GridFace& face, const Vec4& y, int m) {
  check_subdivision(m);
  const double h = 1.0 / m;
  constexpr double eps = 1e-12;
  for (int k = 1; k <= 4; ++k) {
    const double d = y[k - 1] - face.base[k - 1];
    if (k == face.i || k == face.j) {
      if (d < h - eps || d > 1.0 - h + eps) {
        throw SmoothError(SmoothError::Kind::OutOfDomain,
                          "point outside the interior subsquares of the face");
      }
    } else if (std::abs(d) > eps) {
      throw SmoothError(SmoothError::Kind::OutOfDomain, "point not on the face");
    }
  }
  return Plane2::complement(face.plane());
}

namespace {

int remaining_axis(int a, int b, int c) {
  for (int k = 1; k <= 4; ++k)
    if (k != a && k != b && k != c) return k;
  return 0;
}

}  // namespace

EdgeRounding EdgeRounding::make(const Vec4& z, int edge_axis, SignedAxis d1,
                                SignedAxis d2, int m) {
  check_subdivision(m);
  if (d1.axis() == d2.axis()) {
    throw SmoothError(SmoothError::Kind::CoplanarEdge, "faces at the edge are coplanar");
  }
  if (d1.axis() == edge_axis || d2.axis() == edge_axis) {
    throw std::invalid_argument("inward direction along the edge");
  }
  EdgeRounding r;
  r.radius = 1.0 / m;
  r.z = z;
  r.z_prime = z + r.radius * (axis_vector(d1) + axis_vector(d2));
  r.d1 = d1;
  r.d2 = d2;
  r.edge_axis = edge_axis;
  r.v12 = remaining_axis(edge_axis, d1.axis(), d2.axis());
  return r;
}

Plane2 field_case2(const EdgeRounding& r, const Vec4& y) {
  constexpr double eps = 1e-12;
  Vec4 w = y - r.z;
  w[r.edge_axis - 1] = 0.0;
  const Vec4 u1 = axis_vector(r.d1), u2 = axis_vector(r.d2);
  const double c1 = w.dot(u1), c2 = w.dot(u2);
  const Vec4 rest = w - c1 * u1 - c2 * u2;
  const bool both = std::abs(c1) > eps && std::abs(c2) > eps;
  if (rest.norm() > eps || both || c1 < -eps || c2 < -eps ||
      std::max(c1, c2) > r.radius + eps) {
    throw SmoothError(SmoothError::Kind::OutOfDomain, "point outside the edge collar");
  }
  const Vec4 x = r.z + std::max(c1, 0.0) * u1 + std::max(c2, 0.0) * u2;
  return Plane2::span(x - r.z_prime, axis_vector(r.v12));
}

Plane2 collar_plane(int edge_axis, SignedAxis d1, SignedAxis d2, double tau) {
  if (d1.axis() == d2.axis()) {
    return Plane2::complement(PlaneClass::of(edge_axis, d1.axis()));
  }
  const Vec4 r = (tau - 1.0) * axis_vector(d1) - axis_vector(d2);
  return Plane2::span(r, axis_vector(remaining_axis(edge_axis, d1.axis(), d2.axis())));
}

// ---------------------------------------------------------------------------
// Affine chart of the planes transverse to a face: graphs of A from the
// complement to the face plane.

namespace {

using Mat2 = Eigen::Matrix2d;

struct FaceAxes {
  int i, j, k, l;  // zero-based; (i,j) face, (k,l) complement
};

FaceAxes face_axes(SignedAxis u, SignedAxis v) {
  const PlaneClass p = PlaneClass::of(u.axis(), v.axis());
  const auto c = p.complement();
  return {p.i - 1, p.j - 1, c[0] - 1, c[1] - 1};
}

Mat2 chart(const Plane2& p, const FaceAxes& f) {
  Mat2 q, r;
  q << p.b1[f.k], p.b2[f.k], p.b1[f.l], p.b2[f.l];
  r << p.b1[f.i], p.b2[f.i], p.b1[f.j], p.b2[f.j];
  const double det = q.determinant();
  if (std::abs(det) < 1e-13) {
    throw SmoothError(SmoothError::Kind::CertificationFailure,
                      "plane not transverse to the chart face");
  }
  return r * q.inverse();
}

Plane2 unchart(const Mat2& a, const FaceAxes& f) {
  Vec4 c1 = Vec4::Zero(), c2 = Vec4::Zero();
  c1[f.k] = 1.0;
  c2[f.l] = 1.0;
  c1[f.i] = a(0, 0);
  c1[f.j] = a(1, 0);
  c2[f.i] = a(0, 1);
  c2[f.j] = a(1, 1);
  return Plane2::span(c1, c2);
}

SignedAxis other_neighbour(const Star& s, SignedAxis x, SignedAxis not_this) {
  auto [p, q] = s.neighbours(x);
  return p == not_this ? q : p;
}

Plane2 transform(const Eigen::Matrix4d& m, const Plane2& p) {
  return Plane2::span(m * p.b1, m * p.b2);
}

}  // namespace

VertexField::VertexField(Star star, Plane2 seed)
    : star_(star), seed_(seed), rep_star_(star), rep_seed_(seed) {}

VertexField::VertexField(Star rep_star, Plane2 rep_seed, const Symmetry& to_rep)
    : rep_star_(rep_star), rep_seed_(rep_seed), to_rep_(to_rep) {
  back_ = to_rep.matrix().transpose();
  star_ = to_rep.inverse().apply(rep_star);
  seed_ = transform(back_, rep_seed);
}

Plane2 VertexField::to_star(const Plane2& p) const {
  return to_rep_ == Symmetry::identity() ? p : transform(back_, p);
}

Plane2 VertexField::rep_link(SignedAxis x, SignedAxis y, double s) const {
  const SignedAxis w = other_neighbour(rep_star_, x, y);
  return collar_plane(x.axis(), y, w, s);
}

Plane2 VertexField::rep_edge(SignedAxis a, double rho) const {
  auto [v, w] = rep_star_.neighbours(a);
  const SignedAxis f = std::min(v, w);
  const FaceAxes fa = face_axes(a, f);
  const Mat2 m = (1.0 - rho) * chart(rep_seed_, fa) + rho * chart(rep_link(a, f, 0.0), fa);
  return unchart(m, fa);
}

Plane2 VertexField::rep_at(SignedAxis u, SignedAxis v, double a, double b) const {
  const double rho = std::max(a, b);
  if (rho <= 0.0) return rep_seed_;
  SignedAxis x = u, y = v;
  double s = b / a;
  if (b > a) {
    x = v;
    y = u;
    s = a / b;
  }
  const FaceAxes fa = face_axes(u, v);
  const Mat2 as = chart(rep_seed_, fa);
  const Mat2 ab = chart(rep_link(x, y, s), fa);
  const Mat2 ab0 = chart(rep_link(x, y, 0.0), fa);
  const Mat2 ag = chart(rep_edge(x, rho), fa);
  const Mat2 ruled = (1.0 - rho) * as + rho * ab;
  const Mat2 ruled0 = (1.0 - rho) * as + rho * ab0;
  return unchart(ruled + (1.0 - s) * (ag - ruled0), fa);
}

Plane2 VertexField::at(SignedAxis u, SignedAxis v, double a, double b) const {
  return to_star(rep_at(to_rep_.apply(u), to_rep_.apply(v), a, b));
}

Plane2 VertexField::link_plane(SignedAxis x, SignedAxis y, double s) const {
  return to_star(rep_link(to_rep_.apply(x), to_rep_.apply(y), s));
}

Plane2 VertexField::edge_plane(SignedAxis a, double rho) const {
  return to_star(rep_edge(to_rep_.apply(a), rho));
}

double VertexField::seed_score(const Star& s, const Plane2& seed) {
  double lo = std::numeric_limits<double>::infinity();
  int pos = 0, neg = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double d = signed_minor(seed, s[k], s[k + 1]);
    lo = std::min(lo, std::abs(d));
    if (d > 0) ++pos;
    if (d < 0) ++neg;
  }
  return (pos == 0 || neg == 0) ? lo : -lo;
}

bool VertexField::seed_admissible(const Star& s, const Plane2& seed) {
  return seed_score(s, seed) > 0.0;
}

bool VertexField::admissible_seed_exists(const Star& s) {
  // Required sign of D_ij = det[e_i,e_j,b1,b2] per plane, 0 when free.
  std::array<int, 6> need{};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const SignedAxis u = s[k], v = s[k + 1];
    const int sign = u.sign() * v.sign() * (u.axis() < v.axis() ? 1 : -1);
    int& slot = need[PlaneClass::of(u.axis(), v.axis()).index()];
    if (slot == -sign) return false;
    slot = sign;
  }
  // Index order 12,13,14,23,24,34; D12 D34 - D13 D24 + D14 D23 = 0.
  const std::array<int, 3> terms{need[0] * need[5], -need[1] * need[4], need[2] * need[3]};
  if (std::find(terms.begin(), terms.end(), 0) != terms.end()) return true;
  return !(terms[0] == terms[1] && terms[1] == terms[2]);
}

// ---------------------------------------------------------------------------
// Certification

namespace {

int link_winding(const Star& s, const Plane2& seed) {
  Eigen::Matrix<double, 4, 2> b;
  b.col(0) = seed.b1;
  b.col(1) = seed.b2;
  const Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>>(b).householderQ();
  const Vec4 n1 = q.col(2), n2 = q.col(3);
  const auto link = squared_link(s);
  double total = 0.0;
  double prev = 0.0;
  bool first = true;
  double start = 0.0;
  for (std::size_t k = 0; k <= link.vertices.size(); ++k) {
    const Point4& p = link.vertices[k % link.vertices.size()];
    const Vec4 x(p[0], p[1], p[2], p[3]);
    const double px = n1.dot(x), py = n2.dot(x);
    if (std::hypot(px, py) < 1e-12) return 0;
    const double ang = std::atan2(py, px);
    if (first) {
      start = ang;
      first = false;
    } else {
      double d = ang - prev;
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
      total += d;
    }
    prev = ang;
  }
  (void)start;
  return std::abs(static_cast<int>(std::lround(total / (2 * std::numbers::pi))));
}

}  // namespace

Certification certify_field(const VertexField& f, int grid) {
  const Star& s = f.star();
  Certification c;
  std::vector<PlaneClass> all;
  for (const auto& face : s.faces()) all.push_back(face.plane());
  c.origin_margin = margin(f.seed(), all);
  c.worst_margin = c.origin_margin;
  c.samples = 1;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const SignedAxis u = s[k], v = s[k + 1];
    const PlaneClass own = PlaneClass::of(u.axis(), v.axis());
    const PlaneClass along_u =
        PlaneClass::of(u.axis(), other_neighbour(s, u, v).axis());
    const PlaneClass along_v =
        PlaneClass::of(v.axis(), other_neighbour(s, v, u).axis());
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        if (i == 0 && j == 0) continue;
        const double a = static_cast<double>(i) / (grid - 1);
        const double b = static_cast<double>(j) / (grid - 1);
        std::vector<PlaneClass> inc{own};
        if (j == 0) inc.push_back(along_u);
        if (i == 0) inc.push_back(along_v);
        double mg = 0.0;
        try {
          mg = margin(f.at(u, v, a, b), inc);
        } catch (const SmoothError&) {
          mg = 0.0;
        } catch (const std::invalid_argument&) {
          mg = 0.0;
        }
        c.worst_margin = std::min(c.worst_margin, mg);
        ++c.samples;
      }
    }
  }
  c.winding = link_winding(s, f.seed());
  return c;
}

namespace {

double radical_inverse(std::uint32_t n, std::uint32_t base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (n > 0) {
    r += f * (n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

Plane2 averaged_seed(const Star& s) {
  const VertexField probe(s, Plane2{});
  Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
  constexpr int kSamples = 9;
  int count = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const SignedAxis u = s[k], v = s[k + 1];
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      for (int t = 0; t < kSamples; ++t) {
        acc += probe.link_plane(x, y, static_cast<double>(t) / (kSamples - 1)).projector();
        ++count;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(acc / count);
  return Plane2::span(es.eigenvectors().col(3), es.eigenvectors().col(2));
}

Plane2 from_params(const Eigen::Matrix<double, 8, 1>& x) {
  return Plane2::span(x.head<4>(), x.tail<4>());
}

Eigen::Matrix<double, 8, 1> to_params(const Plane2& p) {
  Eigen::Matrix<double, 8, 1> x;
  x << p.b1, p.b2;
  return x;
}

double search_objective(const Star& s, const Plane2& seed) {
  if (!VertexField::seed_admissible(s, seed)) return VertexField::seed_score(s, seed);
  return certify_field(VertexField(s, seed), 9).worst_margin;
}

struct SeedChoice {
  Plane2 seed;
  bool admissible = false;
};

SeedChoice choose_seed(const Star& s) {
  constexpr std::uint32_t kHalton = 1024;
  constexpr std::array<std::uint32_t, 8> primes{2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<std::pair<double, Plane2>> scored;
  scored.emplace_back(VertexField::seed_score(s, averaged_seed(s)), averaged_seed(s));
  for (std::uint32_t n = 1; n <= kHalton; ++n) {
    Eigen::Matrix<double, 8, 1> x;
    for (int d = 0; d < 8; ++d) x[d] = 2.0 * radical_inverse(n, primes[d]) - 1.0;
    try {
      const Plane2 p = from_params(x);
      scored.emplace_back(VertexField::seed_score(s, p), p);
    } catch (const std::invalid_argument&) {
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  if (scored.front().first <= 0.0) return {scored.front().second, false};

  // Best certified margin among the leading candidates, then pattern search.
  Plane2 best = scored.front().second;
  double best_val = -1.0;
  for (std::size_t k = 0; k < std::min<std::size_t>(8, scored.size()); ++k) {
    if (scored[k].first <= 0.0) break;
    const double v = search_objective(s, scored[k].second);
    if (v > best_val) {
      best_val = v;
      best = scored[k].second;
    }
  }
  double step = 0.25;
  for (int iter = 0; iter < 40 && step > 1e-3; ++iter) {
    const auto x = to_params(best);
    Plane2 cand_best = best;
    double cand_val = best_val;
    for (int d = 0; d < 8; ++d) {
      for (double dir : {1.0, -1.0}) {
        auto y = x;
        y[d] += dir * step;
        try {
          const Plane2 p = from_params(y);
          const double v = search_objective(s, p);
          if (v > cand_val + 1e-12) {
            cand_val = v;
            cand_best = p;
          }
        } catch (const std::invalid_argument&) {
        }
      }
    }
    if (cand_val > best_val) {
      best = cand_best;
      best_val = cand_val;
    } else {
      step *= 0.5;
    }
  }
  return {best, true};
}

struct CertCache {
  std::vector<std::once_flag> once;
  std::vector<ClassCertificate> certs;
  explicit CertCache(std::size_t n) : once(n), certs(n) {}
};

CertCache& cert_cache() {
  static CertCache cache(classify_all().size());
  return cache;
}

ClassCertificate compute_certificate(const StarClass& cls) {
  ClassCertificate c;
  c.class_id = cls.id;
  c.representative = cls.representative;
  c.signature = cls.signature;
  c.seed_exists = VertexField::admissible_seed_exists(cls.representative);
  const SeedChoice choice = choose_seed(cls.representative);
  c.seed = choice.seed;
  const Certification cert =
      certify_field(VertexField(cls.representative, choice.seed), kCertificationGrid);
  c.origin_margin = cert.origin_margin;
  c.worst_margin = cert.worst_margin;
  c.winding = cert.winding;
  if (!c.seed_exists) {
    c.reason = "no plane at the vertex has all cycle-ordered face minors of one sign";
  } else if (!choice.admissible) {
    c.reason = "seed search found no admissible plane";
  }
  return c;
}

}  // namespace

ClassCertificate certify_class(int class_id, double tol) {
  const auto& classes = classify_all();
  if (class_id < 1 || class_id > static_cast<int>(classes.size())) {
    throw std::invalid_argument("no star class " + std::to_string(class_id));
  }
  auto& cache = cert_cache();
  const std::size_t k = static_cast<std::size_t>(class_id - 1);
  std::call_once(cache.once[k], [&] { cache.certs[k] = compute_certificate(classes[k]); });
  ClassCertificate c = cache.certs[k];
  c.certified = c.seed_exists && c.reason.empty() && c.worst_margin > tol;
  if (c.seed_exists && c.reason.empty() && !c.certified) {
    std::ostringstream os;
    os << "worst margin " << c.worst_margin << " not above tolerance " << tol;
    c.reason = os.str();
  }
  return c;
}

std::vector<ClassCertificate> certify_all(int threads, double tol) {
  const auto& classes = classify_all(threads);
  std::vector<ClassCertificate> out(classes.size());
  parallel_for(classes.size(), threads,
               [&](std::size_t k) { out[k] = certify_class(classes[k].id, tol); });
  return out;
}

VertexField vertex_field(const Star& s, double tol) {
  const StarClass& cls = class_of(s);
  const ClassCertificate cert = certify_class(cls.id, tol);
  if (!cert.certified) {
    std::ostringstream os;
    os << "star class " << cls.id << " " << cls.signature.to_string() << " "
       << cls.representative.to_string() << ": " << cert.reason
       << " (worst margin " << cert.worst_margin << ")";
    throw SmoothError(SmoothError::Kind::CertificationFailure, os.str());
  }
  const Canonical can = canonicalize(s);
  return VertexField(can.representative, cert.seed, can.symmetry);
}

std::vector<PlaneSample> field_case3(const Star& s, int m, int grid, double tol) {
  check_subdivision(m);
  if (grid < 2) throw std::invalid_argument("sample grid must be at least 2");
  const VertexField f = vertex_field(s, tol);
  const double h = 1.0 / m;
  std::vector<PlaneSample> out;
  std::vector<PlaneClass> all;
  for (const auto& face : s.faces()) all.push_back(face.plane());
  out.push_back({Vec4::Zero(), f.seed(), margin(f.seed(), all), 3});
  for (std::size_t k = 0; k < s.size(); ++k) {
    const SignedAxis u = s[k], v = s[k + 1];
    const PlaneClass own = PlaneClass::of(u.axis(), v.axis());
    const PlaneClass along_u = PlaneClass::of(u.axis(), other_neighbour(s, u, v).axis());
    const PlaneClass along_v = PlaneClass::of(v.axis(), other_neighbour(s, v, u).axis());
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        if (i == 0 && j == 0) continue;
        const double a = static_cast<double>(i) / (grid - 1);
        const double b = static_cast<double>(j) / (grid - 1);
        std::vector<PlaneClass> inc{own};
        if (j == 0) inc.push_back(along_u);
        if (i == 0) inc.push_back(along_v);
        PlaneSample ps;
        ps.point = h * (a * axis_vector(u) + b * axis_vector(v));
        ps.plane = f.at(u, v, a, b);
        ps.margin = margin(ps.plane, inc);
        ps.field_case = 3;
        out.push_back(ps);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-surface field

namespace {

struct SurfaceContext {
  const std::vector<GridFace>& faces;
  std::map<GridEdge, std::vector<std::size_t>> edge_inc;
  std::map<Point4, std::vector<std::size_t>> vertex_inc;
  std::map<Point4, VertexField> fields;
  int m, d, n;  // subdivision, density, n = m d grid steps per face
};

struct Evaluated {
  Plane2 plane;
  int field_case = 1;
};

// Inward direction of face g across its edge e.
SignedAxis inward(const GridFace& g, const GridEdge& e) {
  const int k = g.i == e.axis ? g.j : g.i;
  return SignedAxis::from_int(g.base[k - 1] == e.base[k - 1] ? k : -k);
}

std::size_t other_face(const SurfaceContext& ctx, const GridEdge& e, std::size_t f) {
  const auto& fs = ctx.edge_inc.at(e);
  return fs[0] == f ? fs[1] : fs[0];
}

Evaluated collar_eval(const SurfaceContext& ctx, std::size_t fi, int edge_pos, int dist) {
  const GridFace& f = ctx.faces[fi];
  const GridEdge e = edges_of_face(f)[edge_pos];
  const SignedAxis d1 = inward(f, e);
  const SignedAxis d2 = inward(ctx.faces[other_face(ctx, e, fi)], e);
  const double tau = static_cast<double>(dist) / ctx.d;
  return {collar_plane(e.axis, d1, d2, tau), d1.axis() == d2.axis() ? 1 : 2};
}

bool in_band(int x, const SurfaceContext& ctx) { return x >= ctx.d && x <= ctx.n - ctx.d; }

// Definition outside the corner patches; needs p or q inside [d, n-d].
Evaluated non_corner_eval(const SurfaceContext& ctx, std::size_t fi, int p, int q) {
  if (in_band(p, ctx)) {
    if (q <= ctx.d) return collar_eval(ctx, fi, 0, q);
    if (q >= ctx.n - ctx.d) return collar_eval(ctx, fi, 2, ctx.n - q);
  }
  if (in_band(q, ctx)) {
    if (p <= ctx.d) return collar_eval(ctx, fi, 3, p);
    if (p >= ctx.n - ctx.d) return collar_eval(ctx, fi, 1, ctx.n - p);
  }
  return {Plane2::complement(ctx.faces[fi].plane()), 1};
}

bool in_corner(const SurfaceContext& ctx, int p, int q) {
  const bool pc = p <= ctx.d || p >= ctx.n - ctx.d;
  const bool qc = q <= ctx.d || q >= ctx.n - ctx.d;
  return pc && qc;
}

Evaluated corner_eval(const SurfaceContext& ctx, std::size_t fi, int p, int q) {
  const GridFace& f = ctx.faces[fi];
  const bool low_p = p <= ctx.d, low_q = q <= ctx.d;
  Point4 v = f.base;
  if (!low_p) v[f.i - 1] += 1;
  if (!low_q) v[f.j - 1] += 1;
  const SignedAxis u = SignedAxis::from_int(low_p ? f.i : -f.i);
  const SignedAxis w = SignedAxis::from_int(low_q ? f.j : -f.j);
  const double a = static_cast<double>(low_p ? p : ctx.n - p) / ctx.d;
  const double b = static_cast<double>(low_q ? q : ctx.n - q) / ctx.d;
  return {ctx.fields.at(v).at(u, w, a, b), 3};
}

Evaluated eval(const SurfaceContext& ctx, std::size_t fi, int p, int q) {
  if (in_corner(ctx, p, q)) return corner_eval(ctx, fi, p, q);
  return non_corner_eval(ctx, fi, p, q);
}

Point4 scaled_point(const SurfaceContext& ctx, const GridFace& f, int p, int q) {
  Point4 k{};
  for (int c = 0; c < 4; ++c) k[c] = f.base[c] * ctx.n;
  k[f.i - 1] += p;
  k[f.j - 1] += q;
  return k;
}

bool face_contains_scaled(const SurfaceContext& ctx, const GridFace& g, const Point4& k,
                          int& p, int& q) {
  for (int c = 1; c <= 4; ++c) {
    const int off = k[c - 1] - g.base[c - 1] * ctx.n;
    if (c == g.i) p = off;
    else if (c == g.j) q = off;
    else if (off != 0) return false;
  }
  return p >= 0 && p <= ctx.n && q >= 0 && q <= ctx.n;
}

struct FaceResult {
  std::vector<PlaneSample> samples;
  double interface_12 = 0.0;
  double stitch = 0.0;
  double lipschitz = 0.0;
  std::string stitch_where;
};

FaceResult sample_face(const SurfaceContext& ctx, std::size_t fi) {
  FaceResult out;
  const GridFace& f = ctx.faces[fi];
  const int n = ctx.n;
  std::vector<Plane2> planes((n + 1) * (n + 1));
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const Evaluated ev = eval(ctx, fi, p, q);
      planes[p * (n + 1) + q] = ev.plane;
      const Point4 k = scaled_point(ctx, f, p, q);

      // Faces incident to the point.
      std::vector<std::size_t> inc{fi};
      const bool pe = p == 0 || p == n, qe = q == 0 || q == n;
      if (pe && qe) {
        Point4 v = f.base;
        if (p == n) v[f.i - 1] += 1;
        if (q == n) v[f.j - 1] += 1;
        inc = ctx.vertex_inc.at(v);
      } else if (pe || qe) {
        const int pos = qe ? (q == 0 ? 0 : 2) : (p == 0 ? 3 : 1);
        const GridEdge e = edges_of_face(f)[pos];
        inc = ctx.edge_inc.at(e);
      }
      std::vector<PlaneClass> inc_planes;
      for (std::size_t g : inc) inc_planes.push_back(ctx.faces[g].plane());

      PlaneSample ps;
      for (int c = 0; c < 4; ++c) ps.point[c] = static_cast<double>(k[c]) / n;
      ps.plane = ev.plane;
      ps.margin = margin(ev.plane, inc_planes);
      ps.field_case = ev.field_case;
      out.samples.push_back(ps);

      auto note = [&](double dist) {
        if (dist > out.stitch) {
          out.stitch = dist;
          out.stitch_where = to_string(f.base) + " axes " + std::to_string(f.i) +
                             std::to_string(f.j) + " sample (" + std::to_string(p) +
                             "," + std::to_string(q) + ")";
        }
      };

      // Case-1/Case-2 interface lines.
      if (!in_corner(ctx, p, q) && ev.field_case == 2) {
        const bool on_line = ((p == ctx.d || p == n - ctx.d) && in_band(q, ctx)) ||
                             ((q == ctx.d || q == n - ctx.d) && in_band(p, ctx));
        if (on_line) {
          const double dist =
              grassmann_distance(ev.plane, Plane2::complement(f.plane()));
          out.interface_12 = std::max(out.interface_12, dist);
          note(dist);
        }
      }
      // Corner patch boundary against the neighbouring collar or interior.
      if (in_corner(ctx, p, q) && (in_band(p, ctx) || in_band(q, ctx))) {
        note(grassmann_distance(ev.plane, non_corner_eval(ctx, fi, p, q).plane));
      }
      // Same point seen from the other faces.
      if (pe || qe) {
        for (std::size_t g : inc) {
          if (g == fi) continue;
          int pg = 0, qg = 0;
          if (!face_contains_scaled(ctx, ctx.faces[g], k, pg, qg)) continue;
          note(grassmann_distance(ev.plane, eval(ctx, g, pg, qg).plane));
        }
      }
    }
  }
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const Plane2& here = planes[p * (n + 1) + q];
      if (p < n) {
        out.lipschitz = std::max(
            out.lipschitz, grassmann_distance(here, planes[(p + 1) * (n + 1) + q]) * n);
      }
      if (q < n) {
        out.lipschitz =
            std::max(out.lipschitz, grassmann_distance(here, planes[p * (n + 1) + q + 1]) * n);
      }
    }
  }
  return out;
}

}  // namespace

FieldReport assemble_field(const GriddedSurface& s, const FieldOptions& opts) {
  check_subdivision(opts.m);
  if (opts.density < 1) throw std::invalid_argument("density must be at least 1");
  SurfaceContext ctx{s.faces(), s.edge_incidence(), s.vertex_incidence(), {}, opts.m,
                     opts.density, opts.m * opts.density};
  for (const auto& [e, fs] : ctx.edge_inc) {
    if (fs.size() != 2) {
      throw SmoothError(SmoothError::Kind::OutOfDomain,
                        "surface is not closed at edge " + to_string(e.base) + "+e" +
                            std::to_string(e.axis));
    }
  }
  const auto stars = vertex_stars(s);
  for (const auto& [v, st] : stars) {
    try {
      ctx.fields.emplace(v, vertex_field(st, opts.tol));
    } catch (const SmoothError& e) {
      throw SmoothError(e.kind(), "vertex " + to_string(v) + ": " + e.what());
    }
  }

  std::vector<FaceResult> per_face(ctx.faces.size());
  parallel_for(ctx.faces.size(), opts.threads,
               [&](std::size_t k) { per_face[k] = sample_face(ctx, k); });

  FieldReport r;
  r.min_margin = std::numeric_limits<double>::infinity();
  std::string stitch_where;
  for (auto& fr : per_face) {
    for (auto& ps : fr.samples) {
      ++r.count_by_case[ps.field_case - 1];
      if (ps.margin < r.min_margin) {
        r.min_margin = ps.margin;
        r.worst_point = ps.point;
      }
      if (ps.margin <= opts.tol) ++r.below_tolerance;
      r.samples.push_back(ps);
    }
    r.interface_12 = std::max(r.interface_12, fr.interface_12);
    if (fr.stitch > r.stitch) {
      r.stitch = fr.stitch;
      stitch_where = fr.stitch_where;
    }
    r.lipschitz = std::max(r.lipschitz, fr.lipschitz);
  }
  if (r.stitch > kStitchTolerance) {
    std::ostringstream os;
    os << "field definitions disagree by " << r.stitch << " at " << stitch_where;
    throw SmoothError(SmoothError::Kind::StitchMismatch, os.str());
  }
  return r;
}

}  // namespace gridstar
