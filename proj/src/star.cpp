#include "gridstar/star.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gridstar {

namespace {

// Least rotation/reflection of the cycle under SignedAxis ordering.
void canonical_rotation(std::array<SignedAxis, Star::kMaxFaces>& axes,
                        std::size_t n) {
  std::array<SignedAxis, Star::kMaxFaces> best = axes;
  std::array<SignedAxis, Star::kMaxFaces> cand{};
  bool first = true;
  for (std::size_t r = 0; r < n; ++r) {
    for (int dir : {1, -1}) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src =
            dir > 0 ? (r + k) % n : (r + n - k) % n;
        cand[k] = axes[src];
      }
      if (first || std::lexicographical_compare(cand.begin(), cand.begin() + n,
                                                best.begin(),
                                                best.begin() + n)) {
        best = cand;
        first = false;
      }
    }
  }
  axes = best;
}

}  // namespace

Star Star::from_cycle(std::span<const SignedAxis> cycle) {
  const std::size_t n = cycle.size();
  if (n < kMinFaces || n > kMaxFaces) {
    throw StarError(StarError::Kind::Malformed,
                    "star cycle length " + std::to_string(n) +
                        " outside [3,8]");
  }
  unsigned seen = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const unsigned bit = 1u << cycle[k].key();
    if (seen & bit) {
      throw StarError(StarError::Kind::Malformed,
                      "axis " + std::to_string(cycle[k].value()) +
                          " repeated in star cycle");
    }
    seen |= bit;
    if (cycle[k].axis() == cycle[(k + 1) % n].axis()) {
      throw StarError(StarError::Kind::AntipodalFace,
                      "cycle joins antipodal axes " +
                          std::to_string(cycle[k].value()) + " and " +
                          std::to_string(cycle[(k + 1) % n].value()));
    }
  }
  Star s;
  s.size_ = n;
  std::copy(cycle.begin(), cycle.end(), s.axes_.begin());
  canonical_rotation(s.axes_, n);
  return s;
}

Star Star::from_cycle(std::initializer_list<int> cycle) {
  return from_ints(std::span<const int>(cycle.begin(), cycle.size()));
}

Star Star::from_ints(std::span<const int> cycle) {
  std::vector<SignedAxis> axes;
  axes.reserve(cycle.size());
  for (int v : cycle) axes.push_back(SignedAxis::from_int(v));
  return from_cycle(axes);
}

std::vector<LocalFace> Star::faces() const {
  std::vector<LocalFace> out;
  out.reserve(size_);
  for (std::size_t k = 0; k < size_; ++k) {
    out.push_back(LocalFace::make(axes_[k], axes_[(k + 1) % size_]));
  }
  return out;
}

bool Star::contains(SignedAxis a) const { return position(a) < size_; }

std::size_t Star::position(SignedAxis a) const {
  for (std::size_t k = 0; k < size_; ++k) {
    if (axes_[k] == a) return k;
  }
  return size_;
}

bool Star::has_face(const LocalFace& f) const {
  const std::size_t p = position(f.first());
  if (p == size_) return false;
  return axes_[(p + 1) % size_] == f.second() ||
         axes_[(p + size_ - 1) % size_] == f.second();
}

std::pair<SignedAxis, SignedAxis> Star::neighbours(SignedAxis a) const {
  const std::size_t p = position(a);
  if (p == size_) {
    throw std::invalid_argument("axis " + std::to_string(a.value()) +
                                " not in star " + to_string());
  }
  return {axes_[(p + size_ - 1) % size_], axes_[(p + 1) % size_]};
}

std::vector<int> Star::to_ints() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < size_; ++k) out.push_back(axes_[k].value());
  return out;
}

std::string Star::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < size_; ++k) {
    if (k) os << ',';
    os << axes_[k].value();
  }
  os << ')';
  return os.str();
}

std::uint64_t Star::code() const {
  std::uint64_t c = size_;
  for (std::size_t k = 0; k < size_; ++k) {
    c = c * 8 + static_cast<std::uint64_t>(axes_[k].key());
  }
  return c;
}

std::strong_ordering operator<=>(const Star& a, const Star& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t k = 0; k < a.size_; ++k) {
    if (auto c = a.axes_[k] <=> b.axes_[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Star star_cycle(std::span<const LocalFace> faces) {
  std::vector<LocalFace> unique(faces.begin(), faces.end());
  std::sort(unique.begin(), unique.end());
  if (std::adjacent_find(unique.begin(), unique.end()) != unique.end()) {
    throw StarError(StarError::Kind::DegreeViolation,
                    "repeated face in star");
  }

  std::array<std::vector<SignedAxis>, 8> adjacency;
  for (const auto& f : unique) {
    adjacency[f.first().key()].push_back(f.second());
    adjacency[f.second().key()].push_back(f.first());
  }
  for (int k = 0; k < 8; ++k) {
    const std::size_t d = adjacency[k].size();
    if (d != 0 && d != 2) {
      throw StarError(StarError::Kind::DegreeViolation,
                      "axis " + std::to_string(SignedAxis::from_key(k).value()) +
                          " has degree " + std::to_string(d));
    }
  }
  if (unique.size() < Star::kMinFaces) {
    throw StarError(StarError::Kind::DegreeViolation,
                    "fewer than three faces at vertex");
  }

  // Walk the cycle through the first face.
  std::vector<SignedAxis> cycle;
  const SignedAxis start = unique.front().first();
  SignedAxis prev = start;
  SignedAxis cur = unique.front().second();
  cycle.push_back(start);
  while (cur != start) {
    cycle.push_back(cur);
    const auto& nb = adjacency[cur.key()];
    const SignedAxis next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (cycle.size() != unique.size()) {
    throw StarError(StarError::Kind::Disconnected,
                    "faces form several cycles (pinch point)");
  }
  return Star::from_cycle(cycle);
}

}  // namespace gridstar
