#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridstar/lattice.hpp"

namespace gridstar {

/// A squared-star at a vertex, stored as its cycle in the graph on the eight
/// signed axes (K8 minus the four antipodal edges). Consecutive axes u,v of
/// the cycle are the faces F_{u,v}. The cycle is kept in canonical form: the
/// lexicographically least rotation/reflection under SignedAxis ordering.
class Star {
 public:
  static constexpr std::size_t kMinFaces = 3;
  static constexpr std::size_t kMaxFaces = 8;

  Star() = default;

  /// Validates (3..8 distinct axes, no antipodal neighbours) and
  /// canonicalizes. Throws StarError(Malformed / AntipodalFace).
  static Star from_cycle(std::span<const SignedAxis> cycle);
  static Star from_cycle(std::initializer_list<int> cycle);
  static Star from_ints(std::span<const int> cycle);

  std::size_t size() const { return size_; }
  std::span<const SignedAxis> cycle() const { return {axes_.data(), size_}; }
  SignedAxis operator[](std::size_t k) const { return axes_[k % size_]; }

  std::vector<LocalFace> faces() const;
  bool contains(SignedAxis a) const;
  bool has_face(const LocalFace& f) const;
  /// Cycle neighbours of a (a must be in the star).
  std::pair<SignedAxis, SignedAxis> neighbours(SignedAxis a) const;
  /// Position of a in the cycle, or size() when absent.
  std::size_t position(SignedAxis a) const;

  std::vector<int> to_ints() const;
  std::string to_string() const;
  /// Dense integer encoding, unique per canonical star.
  std::uint64_t code() const;

  friend bool operator==(const Star& a, const Star& b) {
    return a.size_ == b.size_ && a.axes_ == b.axes_;
  }
  friend std::strong_ordering operator<=>(const Star& a, const Star& b);

 private:
  std::array<SignedAxis, kMaxFaces> axes_{};
  std::size_t size_ = 0;
};

/// Interprets each local face as an edge of K8 and returns the single cycle
/// they form. Throws StarError with kind DegreeViolation (some axis not of
/// degree 2), Disconnected (several cycles) or AntipodalFace.
Star star_cycle(std::span<const LocalFace> faces);

}  // namespace gridstar
