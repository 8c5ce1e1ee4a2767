#include "gridstar/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "json.hpp"

#include "gridstar/parallel.hpp"

namespace gridstar {

MeshCheck check_mesh(const TriangleMesh& mesh) {
  std::map<std::pair<std::size_t, std::size_t>, int> undirected;
  std::set<std::pair<std::size_t, std::size_t>> directed;
  bool oriented = true;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = t[k], b = t[(k + 1) % 3];
      if (!directed.insert({a, b}).second) oriented = false;
      ++undirected[{std::min(a, b), std::max(a, b)}];
    }
  }
  MeshCheck c;
  c.closed = !mesh.triangles.empty();
  for (const auto& [e, n] : undirected) {
    if (n != 2) c.closed = false;
  }
  c.oriented = c.closed && oriented;
  c.euler = static_cast<long>(mesh.vertices.size()) - static_cast<long>(undirected.size()) +
            static_cast<long>(mesh.triangles.size());
  return c;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kEps = 1e-12;

Vec4 to_vec(const Point4& p) { return Vec4(p[0], p[1], p[2], p[3]); }

SignedAxis inward_dir(const GridFace& g, const GridEdge& e) {
  const int k = g.i == e.axis ? g.j : g.i;
  return SignedAxis::from_int(g.base[k - 1] == e.base[k - 1] ? k : -k);
}

}  // namespace

Rounding::Rounding(const GriddedSurface& s, int m)
    : surface_(s), m_(m), h_(1.0 / m), edge_inc_(s.edge_incidence()) {
  check_subdivision(m);
}

Vec4 Rounding::collar(std::size_t face, double s, double t) const {
  const GridFace& f = surface_.faces()[face];
  const Vec4 base = to_vec(f.base);
  const Vec4 ei = axis_vector(f.i), ej = axis_vector(f.j);
  const Vec4 y = base + s * ei + t * ej;
  auto band = [&](double x) { return x >= h_ - kEps && x <= 1.0 - h_ + kEps; };

  int pos = -1;
  double dist = 0.0;
  if (band(s) && t <= h_ + kEps) {
    pos = 0;
    dist = t;
  } else if (band(s) && t >= 1.0 - h_ - kEps) {
    pos = 2;
    dist = 1.0 - t;
  } else if (band(t) && s <= h_ + kEps) {
    pos = 3;
    dist = s;
  } else if (band(t) && s >= 1.0 - h_ - kEps) {
    pos = 1;
    dist = 1.0 - s;
  }
  if (pos < 0) return y;

  const GridEdge e = edges_of_face(f)[pos];
  const auto& fs = edge_inc_.at(e);
  const std::size_t other = fs[0] == face ? fs[1] : fs[0];
  const SignedAxis d1 = inward_dir(f, e);
  const SignedAxis d2 = inward_dir(surface_.faces()[other], e);
  if (d1.axis() == d2.axis()) return y;

  const Vec4 u1 = axis_vector(d1), u2 = axis_vector(d2);
  const Vec4 z = y - dist * u1;
  const Vec4 zp = z + h_ * (u1 + u2);
  const double tau = std::clamp(dist / h_, 0.0, 1.0);
  const double psi = 0.25 * std::numbers::pi * (1.0 - tau);
  return zp - h_ * (std::sin(psi) * u1 + std::cos(psi) * u2);
}

Vec4 Rounding::map(std::size_t face, double s, double t) const {
  const GridFace& f = surface_.faces()[face];
  const bool low_s = s <= h_ + kEps, high_s = s >= 1.0 - h_ - kEps;
  const bool low_t = t <= h_ + kEps, high_t = t >= 1.0 - h_ - kEps;
  if (!((low_s || high_s) && (low_t || high_t))) return collar(face, s, t);

  const double a = low_s ? s : 1.0 - s;
  const double b = low_t ? t : 1.0 - t;
  Vec4 v = to_vec(f.base);
  if (!low_s) v += axis_vector(f.i);
  if (!low_t) v += axis_vector(f.j);
  const double rho = std::max(a, b) / h_;
  if (rho <= kEps) return v;
  const double la = a / rho, lb = b / rho;
  const Vec4 r = collar(face, low_s ? la : 1.0 - la, low_t ? lb : 1.0 - lb);
  return v + rho * (r - v);
}

// ---------------------------------------------------------------------------

double distance_to_surface(const GriddedSurface& s, const Vec4& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : s.faces()) {
    double d2 = 0.0;
    for (int c = 1; c <= 4; ++c) {
      double lo = f.base[c - 1], hi = lo;
      if (c == f.i || c == f.j) hi += 1.0;
      const double nearest = std::clamp(x[c - 1], lo, hi);
      d2 += (x[c - 1] - nearest) * (x[c - 1] - nearest);
    }
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

MeshReport rounded_mesh(const GriddedSurface& s, int m, int arc_segments, int threads) {
  check_subdivision(m);
  if (arc_segments < 2 || arc_segments % 2 != 0) {
    throw std::invalid_argument("arc_segments must be a positive even number");
  }
  const SurfaceReport rep = validate(s, threads);
  if (!rep.is_closed_manifold) {
    throw SmoothError(SmoothError::Kind::OutOfDomain, "surface does not validate");
  }
  const Rounding rounding(s, m);
  const int n = m * (arc_segments / 2);
  const auto& faces = s.faces();

  MeshReport out;
  std::map<Point4, std::size_t> index;
  auto vertex = [&](std::size_t fi, int p, int q) {
    const GridFace& f = faces[fi];
    Point4 k{};
    for (int c = 0; c < 4; ++c) k[c] = f.base[c] * n;
    k[f.i - 1] += p;
    k[f.j - 1] += q;
    auto [it, fresh] = index.try_emplace(k, out.mesh.vertices.size());
    if (fresh) {
      const double sp = static_cast<double>(p) / n, tq = static_cast<double>(q) / n;
      out.mesh.vertices.push_back(rounding.map(fi, sp, tq));
      out.mesh.preimages.push_back(to_vec(f.base) + sp * axis_vector(f.i) +
                                   tq * axis_vector(f.j));
    }
    return it->second;
  };
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const int o = rep.orientation.empty() ? 1 : rep.orientation[fi];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const std::size_t a = vertex(fi, p, q), b = vertex(fi, p + 1, q),
                          c = vertex(fi, p + 1, q + 1), d = vertex(fi, p, q + 1);
        if (o > 0) {
          out.mesh.triangles.push_back({a, b, c});
          out.mesh.triangles.push_back({a, c, d});
        } else {
          out.mesh.triangles.push_back({a, c, b});
          out.mesh.triangles.push_back({a, d, c});
        }
      }
    }
  }
  out.check = check_mesh(out.mesh);
  if (!out.check.closed) {
    throw SmoothError(SmoothError::Kind::MeshNotClosed, "rounded mesh has boundary edges");
  }

  const std::size_t nv = out.mesh.vertices.size();
  std::vector<double> dev(nv), disp(nv);
  parallel_for(nv, threads, [&](std::size_t k) {
    dev[k] = distance_to_surface(s, out.mesh.vertices[k]);
    disp[k] = (out.mesh.vertices[k] - out.mesh.preimages[k]).norm();
  });
  for (std::size_t k = 0; k < nv; ++k) {
    out.vertex_deviation = std::max(out.vertex_deviation, dev[k]);
    out.hausdorff_bound = std::max(out.hausdorff_bound, disp[k]);
  }
  return out;
}

std::string to_obj(const TriangleMesh& mesh, std::optional<int> flat_axis) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "# %zu vertices, %zu triangles\n", mesh.vertices.size(),
                mesh.triangles.size());
  out += buf;
  for (const auto& v : mesh.vertices) {
    out += 'v';
    for (int c = 0; c < 4; ++c) {
      if (flat_axis && c == *flat_axis - 1) continue;
      std::snprintf(buf, sizeof buf, " %.17g", v[c]);
      out += buf;
    }
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", t[0] + 1, t[1] + 1, t[2] + 1);
    out += buf;
  }
  return out;
}

std::string projection_sidecar(std::optional<int> flat_axis) {
  nlohmann::ordered_json j;
  if (flat_axis) {
    j["columns"] = nlohmann::json::array();
    for (int c = 1; c <= 4; ++c)
      if (c != *flat_axis) j["columns"].push_back("x" + std::to_string(c));
    j["dropped_axis"] = *flat_axis;
  } else {
    j["columns"] = {"x1", "x2", "x3", "x4"};
    j["dropped_axis"] = nullptr;
    // oblique view folding x4 onto the diagonal
    j["view"] = {{1.0, 0.0, 0.0, 0.5}, {0.0, 1.0, 0.0, 0.5}, {0.0, 0.0, 1.0, 0.5}};
  }
  return j.dump(2) + "\n";
}

}  // namespace gridstar
