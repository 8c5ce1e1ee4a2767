#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridstar/star.hpp"

namespace gridstar {

// ---------------------------------------------------------------------------
// Signatures

/// Per-plane face count of a star. Two faces in one plane are Two when they
/// share a signed axis and TwoBar when antipodal (F_{a,b} and F_{-a,-b}).
enum class SigEntry { One = 1, TwoBar = 2, Two = 3, Three = 4, Four = 5 };

int numeric_value(SigEntry e);
const char* to_string(SigEntry e);  // "1", "2b", "2", "3", "4"

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<SigEntry> entries);  // sorts descending

  /// Parses "(2,2,2b)" (or "2,2,2b"); "2b" and "2̄" both denote TwoBar.
  static Signature parse(const std::string& text);

  const std::vector<SigEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int total() const;
  std::size_t count(SigEntry e) const;
  bool contains(SigEntry e) const { return count(e) > 0; }
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  // Descending symbol order: a signature with larger leading symbols sorts
  // first.
  friend bool operator<(const Signature& a, const Signature& b);

 private:
  std::vector<SigEntry> entries_;
};

Signature signature(const Star& s);

// ---------------------------------------------------------------------------
// Symmetries of the 4-cube

/// Signed permutation a -> signs[perm(|a|)] * sgn(a) * perm(|a|).
class Symmetry {
 public:
  Symmetry() = default;
  Symmetry(std::array<int, 4> perm, std::array<int, 4> signs);

  static const std::vector<Symmetry>& all();  // 384 elements, fixed order
  static Symmetry identity() { return {}; }

  const std::array<int, 4>& perm() const { return perm_; }
  const std::array<int, 4>& signs() const { return signs_; }

  SignedAxis apply(SignedAxis a) const;
  Star apply(const Star& s) const;
  LocalFace apply(const LocalFace& f) const;
  Symmetry inverse() const;
  /// (this * other)(a) = this(other(a)).
  Symmetry compose(const Symmetry& other) const;
  /// Orthogonal matrix M with M e_a = e_{apply(a)}.
  Eigen::Matrix4d matrix() const;
  std::string to_string() const;

  friend bool operator==(const Symmetry&, const Symmetry&) = default;

 private:
  std::array<int, 4> perm_{1, 2, 3, 4};
  std::array<int, 4> signs_{1, 1, 1, 1};
};

struct Canonical {
  Star representative;
  Symmetry symmetry;  // symmetry.apply(input) == representative
};

/// Least symmetry image of s; equal for all stars of one orbit.
Canonical canonicalize(const Star& s);

// ---------------------------------------------------------------------------
// Enumeration and classification

class InvalidRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every cycle of length n_min..n_max in K8 minus the antipodal edges, as
/// canonical stars, sorted. Throws InvalidRange unless 3 <= n_min <= n_max <= 8.
std::vector<Star> enumerate_stars(int n_min = 3, int n_max = 8);

struct StarClass {
  int id = 0;
  Star representative;
  Signature signature;
  std::size_t orbit_size = 0;
};

/// Orbits of all labeled stars under Symmetry::all(), sorted by
/// (size, signature, representative) and numbered from 1.
const std::vector<StarClass>& classify_all(int threads = 0);

/// Class of an arbitrary labeled star.
const StarClass& class_of(const Star& s);

class ClassificationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expected orbit counts per size n = 3..8 and the resulting total.
inline constexpr std::array<int, 6> kExpectedClassCounts{1, 3, 2, 5, 4, 5};
inline constexpr int kExpectedClassTotal = 20;

struct ClassificationCheck {
  std::array<int, 6> counts{};  // n = 3..8
  int total = 0;
  bool matches_expected = false;
  /// Signatures carried by more than one orbit (signature -> class ids).
  std::map<std::string, std::vector<int>> shared_signatures;
  bool signature_injective() const { return shared_signatures.empty(); }
};

ClassificationCheck check_classification(const std::vector<StarClass>& classes);

/// classify_all() that throws ClassificationMismatch when the orbit count
/// differs from kExpectedClassTotal.
const std::vector<StarClass>& classify_all_checked(int threads = 0);

/// Expected signature sets per n = 3..8.
const std::map<int, std::vector<Signature>>& expected_signature_table();

// ---------------------------------------------------------------------------
// Lemma verification

struct LemmaCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> counterexamples;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_passed() const;
};

/// Exhaustive checks over all labeled stars:
///  five_singles   no signature has five or more 1-entries;
///  signature3     3-containing signatures are (3,1,1),(3,1,1,1),(3,2,1,1),(3,3,1,1);
///  signature2     2/2b signatures without 3 for n <= 7 are in the lemma list;
///  signature2_realized   every signature of that list is realized;
///  three_twos     no (2,2,2,1) or (2,2,2,1,1) with any 2/2b mix.
LemmaReport check_lemmas();

const std::vector<Signature>& lemma_signature3_list();
const std::vector<Signature>& lemma_signature2_list();

// ---------------------------------------------------------------------------
// Reference representative table

struct ReferenceEntry {
  int n = 0;
  Signature claimed;
  std::vector<std::pair<int, int>> faces;  // as listed
};

/// The 20 reference representative face lists.
const std::vector<ReferenceEntry>& reference_examples();

struct ReferenceVerdict {
  ReferenceEntry entry;
  std::optional<Star> star;
  std::string error;  // empty when star is valid
  std::optional<int> class_id;
  bool signature_matches = false;
  /// For faulty entries: face lists one replacement away that form a star
  /// with the claimed signature.
  std::vector<std::vector<std::pair<int, int>>> suggestions;
};

std::vector<ReferenceVerdict> check_reference_examples();

}  // namespace gridstar
