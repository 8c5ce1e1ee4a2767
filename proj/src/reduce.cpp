#include "gridstar/reduce.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

#include "gridstar/starcomb.hpp"

namespace gridstar {

bool operator<(const Move& l, const Move& r) {
  return std::make_tuple(l.a.key(), l.x.key(), l.y.key()) <
         std::make_tuple(r.a.key(), r.x.key(), r.y.key());
}

bool is_base_case(const Star& s) {
  if (s.size() == 3) return true;
  if (s.size() != 4) return false;
  return signature(s).entries() == std::vector<SigEntry>{SigEntry::Four};
}

std::vector<Move> legal_moves(const Star& s) {
  std::vector<Move> out;
  if (s.size() <= Star::kMinFaces) return out;
  for (SignedAxis a : s.cycle()) {
    auto [p, q] = s.neighbours(a);
    if (p.axis() == q.axis()) continue;
    if (s.has_face(LocalFace::make(p, q))) continue;
    out.push_back(q < p ? Move{q, a, p} : Move{p, a, q});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Star apply_move(const Star& s, const Move& m) {
  const auto legal = legal_moves(s);
  if (std::find(legal.begin(), legal.end(), m) == legal.end()) {
    throw ReduceError(ReduceError::Kind::IllegalMove,
                      "move removing " + std::to_string(m.a.value()) +
                          " is not legal on " + s.to_string());
  }
  std::vector<SignedAxis> cycle;
  for (SignedAxis b : s.cycle()) {
    if (b != m.a) cycle.push_back(b);
  }
  return Star::from_cycle(cycle);
}

ReductionCertificate reduce(const Star& s) {
  ReductionCertificate cert{s, {}, s};
  while (!is_base_case(cert.terminal)) {
    const auto moves = legal_moves(cert.terminal);
    if (moves.empty()) {
      throw ReduceError(ReduceError::Kind::Stuck,
                        "no legal move on " + cert.terminal.to_string());
    }
    cert.moves.push_back(moves.front());
    cert.terminal = apply_move(cert.terminal, moves.front());
  }
  return cert;
}

bool verify_certificate(const ReductionCertificate& c) {
  Star cur = c.start;
  try {
    for (const auto& m : c.moves) cur = apply_move(cur, m);
  } catch (const ReduceError&) {
    return false;
  }
  return cur == c.terminal && is_base_case(cur);
}

SquaredLink squared_link(const Star& s) {
  SquaredLink link;
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point4 eu = unit_point(s[k]);
    const Point4 ev = unit_point(s[k + 1]);
    link.vertices.push_back(eu);
    link.vertices.push_back(eu + ev);
  }
  const std::size_t m = link.vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    link.segments.emplace_back(link.vertices[k], link.vertices[(k + 1) % m]);
  }

  auto fail = [&](const std::string& why) {
    throw ReduceError(ReduceError::Kind::NotSimple,
                      "link of " + s.to_string() + " " + why);
  };
  std::set<Point4> distinct(link.vertices.begin(), link.vertices.end());
  if (distinct.size() != m) fail("revisits a vertex");
  if (distinct.count(Point4{0, 0, 0, 0})) fail("passes through the centre");
  std::set<std::pair<Point4, Point4>> seen;
  for (auto [p, q] : link.segments) {
    int diff = 0;
    for (int c = 0; c < 4; ++c) diff += std::abs(p[c] - q[c]);
    if (diff != 1) fail("has a non-unit segment");
    if (q < p) std::swap(p, q);
    if (!seen.insert({p, q}).second) fail("repeats a segment");
  }
  if (m % 2 != 0 || m > 16) fail("has a bad segment count");
  return link;
}

}  // namespace gridstar
