#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gridstar/star.hpp"

namespace gridstar {

/// Contraction of the two faces F_{x,a}, F_{a,y} into F_{x,y}; removes a from
/// the cycle.
struct Move {
  SignedAxis x;
  SignedAxis a;
  SignedAxis y;

  LocalFace removed_first() const { return LocalFace::make(x, a); }
  LocalFace removed_second() const { return LocalFace::make(a, y); }
  LocalFace added() const { return LocalFace::make(x, y); }

  friend bool operator==(const Move&, const Move&) = default;
};

/// Ordering used for the greedy choice: by (a, x, y) key.
bool operator<(const Move& l, const Move& r);

class ReduceError : public std::runtime_error {
 public:
  enum class Kind { Stuck, IllegalMove, NotSimple };
  ReduceError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ReductionCertificate {
  Star start;
  std::vector<Move> moves;
  Star terminal;
};

/// Triangle, or the planar star with signature (4).
bool is_base_case(const Star& s);

/// All legal contractions of s, sorted; x precedes y in key order.
std::vector<Move> legal_moves(const Star& s);

/// Result of applying m; throws ReduceError(IllegalMove) if m is not legal on s.
Star apply_move(const Star& s, const Move& m);

/// Greedy reduction (least legal move first) down to a base case.
ReductionCertificate reduce(const Star& s);
inline ReductionCertificate unknot_certificate(const Star& s) { return reduce(s); }

/// Replays a certificate; false if any move is illegal or the terminal is wrong.
bool verify_certificate(const ReductionCertificate& c);

/// Unit segment between two points of {-1,0,1}^4.
using Segment = std::pair<Point4, Point4>;

/// Boundary polygon of the star, as a cyclic list of 2n segments
/// e_{c0} -> e_{c0}+e_{c1} -> e_{c1} -> ... ; throws ReduceError(NotSimple).
struct SquaredLink {
  std::vector<Point4> vertices;  // polygon corners in cyclic order
  std::vector<Segment> segments;
};

SquaredLink squared_link(const Star& s);

}  // namespace gridstar
