#include "gridstar/surface.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "gridstar/parallel.hpp"
#include "gridstar/reduce.hpp"
#include "gridstar/starcomb.hpp"

namespace gridstar {

Cell3 Cell3::make(Point4 base, int a, int b, int c) {
  std::array<int, 3> axes{a, b, c};
  std::sort(axes.begin(), axes.end());
  if (axes[0] < 1 || axes[2] > 4 || axes[0] == axes[1] || axes[1] == axes[2]) {
    throw std::invalid_argument("3-cell needs three distinct axes in 1..4");
  }
  return Cell3{base, axes};
}

std::array<GridFace, 6> Cell3::faces() const {
  std::array<GridFace, 6> out;
  std::size_t k = 0;
  for (int drop = 0; drop < 3; ++drop) {
    const int normal = axes[drop];
    const int a = axes[(drop + 1) % 3];
    const int b = axes[(drop + 2) % 3];
    Point4 top = base;
    top[normal - 1] += 1;
    out[k++] = GridFace::make(base, a, b);
    out[k++] = GridFace::make(top, a, b);
  }
  return out;
}

std::vector<GridFace> boundary_of_3chain(std::span<const Cell3> cells) {
  std::set<Cell3> seen;
  std::map<GridFace, int> parity;
  for (const auto& c : cells) {
    if (!seen.insert(c).second) {
      throw std::invalid_argument("repeated 3-cell at " + to_string(c.base));
    }
    for (const auto& f : c.faces()) parity[f] ^= 1;
  }
  std::vector<GridFace> out;
  for (const auto& [f, p] : parity) {
    if (p) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

GriddedSurface::GriddedSurface(std::vector<GridFace> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
}

bool GriddedSurface::contains(const GridFace& f) const {
  return std::binary_search(faces_.begin(), faces_.end(), f);
}

std::vector<Point4> GriddedSurface::vertices() const {
  std::set<Point4> vs;
  for (const auto& f : faces_) {
    for (const auto& c : f.corners()) vs.insert(c);
  }
  return {vs.begin(), vs.end()};
}

std::vector<GridEdge> GriddedSurface::edges() const {
  std::set<GridEdge> es;
  for (const auto& f : faces_) {
    for (const auto& e : edges_of_face(f)) es.insert(e);
  }
  return {es.begin(), es.end()};
}

std::map<GridEdge, std::vector<std::size_t>> GriddedSurface::edge_incidence() const {
  std::map<GridEdge, std::vector<std::size_t>> inc;
  for (std::size_t k = 0; k < faces_.size(); ++k) {
    for (const auto& e : edges_of_face(faces_[k])) inc[e].push_back(k);
  }
  return inc;
}

std::map<Point4, std::vector<std::size_t>> GriddedSurface::vertex_incidence() const {
  std::map<Point4, std::vector<std::size_t>> inc;
  for (std::size_t k = 0; k < faces_.size(); ++k) {
    for (const auto& c : faces_[k].corners()) inc[c].push_back(k);
  }
  return inc;
}

std::optional<int> GriddedSurface::flat_axis() const {
  if (faces_.empty()) return std::nullopt;
  for (int axis = 1; axis <= 4; ++axis) {
    const int level = faces_.front().base[axis - 1];
    const bool flat = std::all_of(faces_.begin(), faces_.end(), [&](const GridFace& f) {
      return f.i != axis && f.j != axis && f.base[axis - 1] == level;
    });
    if (flat) return axis;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string edge_name(const GridEdge& e) {
  return "edge " + to_string(e.base) + "+e" + std::to_string(e.axis);
}

}  // namespace

SurfaceReport validate(const GriddedSurface& s, int threads) {
  SurfaceReport r;
  const auto& faces = s.faces();
  const auto edge_inc = s.edge_incidence();
  const auto vertex_inc = s.vertex_incidence();
  r.face_count = faces.size();
  r.edges = edge_inc.size();
  r.vertices = vertex_inc.size();
  r.euler_characteristic = static_cast<long>(r.vertices) - static_cast<long>(r.edges) +
                           static_cast<long>(r.face_count);

  bool edges_ok = true;
  for (const auto& [e, fs] : edge_inc) {
    if (fs.size() != 2) {
      edges_ok = false;
      r.violations.push_back(
          {edge_name(e), "edge degree " + std::to_string(fs.size())});
    }
  }

  // Vertex stars.
  std::vector<std::pair<Point4, std::vector<std::size_t>>> verts(vertex_inc.begin(),
                                                                 vertex_inc.end());
  std::vector<std::optional<int>> class_ids(verts.size());
  std::vector<std::string> errors(verts.size());
  classify_all(threads);
  parallel_for(verts.size(), threads, [&](std::size_t k) {
    std::vector<GridFace> local;
    for (std::size_t idx : verts[k].second) local.push_back(faces[idx]);
    try {
      const Star st = star_cycle(local_faces_at(verts[k].first, local));
      class_ids[k] = class_of(st).id;
    } catch (const StarError& e) {
      errors[k] = std::string(to_string(e.kind())) + ": " + e.what();
    }
  });
  bool vertices_ok = true;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    if (class_ids[k]) {
      ++r.star_histogram[*class_ids[k]];
    } else {
      vertices_ok = false;
      r.violations.push_back({"vertex " + to_string(verts[k].first), errors[k]});
    }
  }
  r.is_closed_manifold = !faces.empty() && edges_ok && vertices_ok;
  if (faces.empty()) r.violations.push_back({"surface", "no faces"});

  // Components and orientation.
  UnionFind uf(faces.size());
  for (const auto& [e, fs] : edge_inc) {
    for (std::size_t k = 1; k < fs.size(); ++k) uf.unite(fs[0], fs[k]);
  }
  std::map<std::size_t, std::size_t> comp_index;
  std::vector<std::size_t> comp_of(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const std::size_t root = uf.find(k);
    auto it = comp_index.try_emplace(root, comp_index.size()).first;
    comp_of[k] = it->second;
  }
  r.components.resize(comp_index.size());
  for (std::size_t k = 0; k < faces.size(); ++k) ++r.components[comp_of[k]].faces;
  for (const auto& [e, fs] : edge_inc) --r.components[comp_of[fs[0]]].euler;
  for (const auto& [v, fs] : vertex_inc) ++r.components[comp_of[fs[0]]].euler;
  for (auto& c : r.components) c.euler += static_cast<long>(c.faces);

  // Edge position of each face edge, for the boundary signs.
  std::vector<int> orient(faces.size(), 0);
  std::vector<std::array<std::size_t, 4>> neighbour(faces.size());
  std::vector<std::array<int, 4>> nb_pos(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto es = edges_of_face(faces[k]);
    for (int p = 0; p < 4; ++p) {
      const auto& fs = edge_inc.at(es[p]);
      neighbour[k][p] = faces.size();
      if (fs.size() != 2) continue;
      const std::size_t other = fs[0] == k ? fs[1] : fs[0];
      neighbour[k][p] = other;
      const auto oes = edges_of_face(faces[other]);
      nb_pos[k][p] = static_cast<int>(std::find(oes.begin(), oes.end(), es[p]) - oes.begin());
    }
  }
  for (std::size_t start = 0; start < faces.size(); ++start) {
    if (orient[start] != 0) continue;
    orient[start] = 1;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      const std::size_t f = q.front();
      q.pop();
      for (int p = 0; p < 4; ++p) {
        const std::size_t g = neighbour[f][p];
        if (g == faces.size()) continue;
        // Opposite induced directions: o_f s_f = -o_g s_g.
        const int want = -orient[f] * boundary_sign(p) * boundary_sign(nb_pos[f][p]);
        if (orient[g] == 0) {
          orient[g] = want;
          q.push(g);
        } else if (orient[g] != want) {
          r.components[comp_of[g]].orientable = false;
        }
      }
    }
  }
  r.orientable = r.is_closed_manifold &&
                 std::all_of(r.components.begin(), r.components.end(),
                             [](const ComponentInfo& c) { return c.orientable; });
  for (auto& c : r.components) {
    c.genus = c.orientable ? (2 - c.euler) / 2 : 2 - c.euler;
    r.genus_per_component.push_back(static_cast<int>(c.genus));
  }
  if (r.orientable) r.orientation = orient;
  return r;
}

std::map<Point4, Star> vertex_stars(const GriddedSurface& s) {
  std::map<Point4, Star> out;
  const auto& faces = s.faces();
  for (const auto& [v, idx] : s.vertex_incidence()) {
    std::vector<GridFace> local;
    for (std::size_t k : idx) local.push_back(faces[k]);
    try {
      out.emplace(v, star_cycle(local_faces_at(v, local)));
    } catch (const StarError& e) {
      throw SurfaceError(v, e.what());
    }
  }
  return out;
}

std::map<Point4, int> stars_of(const GriddedSurface& s) {
  std::map<Point4, int> out;
  for (const auto& [v, st] : vertex_stars(s)) out.emplace(v, class_of(st).id);
  return out;
}

// ---------------------------------------------------------------------------

namespace fixtures {

std::vector<Cell3> cube() { return {Cell3::make({0, 0, 0, 0}, 1, 2, 3)}; }

std::vector<Cell3> two_cells() {
  return {Cell3::make({0, 0, 0, 0}, 1, 2, 3), Cell3::make({1, 0, 0, 0}, 1, 2, 3)};
}

std::vector<Cell3> box(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("box sides must be positive");
  std::vector<Cell3> out;
  for (int x = 0; x < a; ++x)
    for (int y = 0; y < b; ++y)
      for (int z = 0; z < c; ++z) out.push_back(Cell3::make({x, y, z, 0}, 1, 2, 3));
  return out;
}

std::vector<Cell3> torus_ring() {
  std::vector<Cell3> out;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != 1 || y != 1) out.push_back(Cell3::make({x, y, 0, 0}, 1, 2, 3));
  return out;
}

namespace {

Cell3 cell_at_origin(SignedAxis a, SignedAxis b, SignedAxis c) {
  Point4 base{};
  for (SignedAxis s : {a, b, c}) {
    if (s.sign() < 0) base[s.axis() - 1] = -1;
  }
  return Cell3::make(base, a.axis(), b.axis(), c.axis());
}

}  // namespace

std::vector<Cell3> realize_star(const Star& s) {
  std::set<Cell3> chain;
  auto toggle = [&](const Cell3& c) {
    if (!chain.erase(c)) chain.insert(c);
  };
  const auto cert = reduce(s);
  for (const auto& m : cert.moves) toggle(cell_at_origin(m.x, m.a, m.y));
  const Star& t = cert.terminal;
  if (t.size() == 3) {
    toggle(cell_at_origin(t[0], t[1], t[2]));
  } else {
    const int u = t[0].axis();
    const int v = t[1].axis();
    int w = 1;
    while (w == u || w == v) ++w;
    for (int su : {-1, 0}) {
      for (int sv : {-1, 0}) {
        Point4 base{};
        base[u - 1] = su;
        base[v - 1] = sv;
        toggle(Cell3::make(base, u, v, w));
      }
    }
  }
  return {chain.begin(), chain.end()};
}

std::vector<Cell3> random_chain(std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("cell count must be positive");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<Cell3> cells{Cell3::make({0, 0, 0, 0}, 1, 2, 3)};
  std::set<Cell3> present(cells.begin(), cells.end());
  int attempts = 0;
  while (static_cast<int>(cells.size()) < count && attempts < 1000 * count) {
    ++attempts;
    const Cell3& from = cells[pick(cells.size())];
    const GridFace f = from.faces()[pick(6)];
    std::vector<Cell3> candidates;
    for (int k = 1; k <= 4; ++k) {
      if (k == f.i || k == f.j) continue;
      for (int off : {-1, 0}) {
        Point4 base = f.base;
        base[k - 1] += off;
        Cell3 c = Cell3::make(base, f.i, f.j, k);
        if (!present.count(c)) candidates.push_back(c);
      }
    }
    if (candidates.empty()) continue;
    const Cell3 c = candidates[pick(candidates.size())];
    present.insert(c);
    cells.push_back(c);
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

std::vector<Cell3> by_name(const std::string& name) {
  if (name == "cube") return cube();
  if (name == "two-cell") return two_cells();
  if (name == "box") return box(3, 1, 1);
  if (name == "torus") return torus_ring();
  if (name.rfind("star:", 0) == 0) {
    std::vector<int> cycle;
    std::stringstream ss(name.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) cycle.push_back(std::stoi(tok));
    return realize_star(Star::from_ints(cycle));
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace fixtures

}  // namespace gridstar
