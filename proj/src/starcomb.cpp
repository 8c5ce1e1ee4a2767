#include "gridstar/starcomb.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gridstar/parallel.hpp"

namespace gridstar {

// ---------------------------------------------------------------------------
// Signature

int numeric_value(SigEntry e) {
  switch (e) {
    case SigEntry::One: return 1;
    case SigEntry::TwoBar:
    case SigEntry::Two: return 2;
    case SigEntry::Three: return 3;
    case SigEntry::Four: return 4;
  }
  return 0;
}

const char* to_string(SigEntry e) {
  switch (e) {
    case SigEntry::One: return "1";
    case SigEntry::TwoBar: return "2b";
    case SigEntry::Two: return "2";
    case SigEntry::Three: return "3";
    case SigEntry::Four: return "4";
  }
  return "?";
}

Signature::Signature(std::vector<SigEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), std::greater<>());
}

Signature Signature::parse(const std::string& text) {
  std::vector<SigEntry> entries;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "1") entries.push_back(SigEntry::One);
    else if (token == "2") entries.push_back(SigEntry::Two);
    else if (token == "2b" || token == "2\xCC\x84") entries.push_back(SigEntry::TwoBar);
    else if (token == "3") entries.push_back(SigEntry::Three);
    else if (token == "4") entries.push_back(SigEntry::Four);
    else throw std::invalid_argument("bad signature symbol '" + token + "'");
    token.clear();
  };
  for (char c : text) {
    if (c == '(' || c == ')' || c == ' ') continue;
    if (c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return Signature(std::move(entries));
}

int Signature::total() const {
  int t = 0;
  for (auto e : entries_) t += numeric_value(e);
  return t;
}

std::size_t Signature::count(SigEntry e) const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), e));
}

std::string Signature::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) s += ',';
    s += gridstar::to_string(entries_[k]);
  }
  return s + ")";
}

bool operator<(const Signature& a, const Signature& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                      b.entries_.begin(), b.entries_.end(),
                                      std::greater<>());
}

Signature signature(const Star& s) {
  std::array<std::vector<LocalFace>, 6> by_plane;
  for (const auto& f : s.faces()) by_plane[f.plane().index()].push_back(f);

  std::vector<SigEntry> entries;
  for (const auto& group : by_plane) {
    switch (group.size()) {
      case 0: break;
      case 1: entries.push_back(SigEntry::One); break;
      case 2: {
        const bool shares = group[0].contains(group[1].first()) ||
                            group[0].contains(group[1].second());
        entries.push_back(shares ? SigEntry::Two : SigEntry::TwoBar);
        break;
      }
      case 3: entries.push_back(SigEntry::Three); break;
      default: entries.push_back(SigEntry::Four); break;
    }
  }
  return Signature(std::move(entries));
}

// ---------------------------------------------------------------------------
// Symmetry

Symmetry::Symmetry(std::array<int, 4> perm, std::array<int, 4> signs)
    : perm_(perm), signs_(signs) {
  std::array<int, 4> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{1, 2, 3, 4}) {
    throw std::invalid_argument("not a permutation of 1..4");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");
  }
}

const std::vector<Symmetry>& Symmetry::all() {
  static const std::vector<Symmetry> group = [] {
    std::vector<Symmetry> g;
    g.reserve(384);
    std::array<int, 4> perm{1, 2, 3, 4};
    do {
      for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 4> signs{};
        for (int k = 0; k < 4; ++k) signs[k] = (mask >> k) & 1 ? -1 : 1;
        g.emplace_back(perm, signs);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
  }();
  return group;
}

SignedAxis Symmetry::apply(SignedAxis a) const {
  const int image = perm_[a.axis() - 1];
  return SignedAxis::from_int(signs_[image - 1] * a.sign() * image);
}

Star Symmetry::apply(const Star& s) const {
  std::array<SignedAxis, Star::kMaxFaces> img{};
  for (std::size_t k = 0; k < s.size(); ++k) img[k] = apply(s[k]);
  return Star::from_cycle(std::span<const SignedAxis>(img.data(), s.size()));
}

LocalFace Symmetry::apply(const LocalFace& f) const {
  return LocalFace::make(apply(f.first()), apply(f.second()));
}

Symmetry Symmetry::inverse() const {
  std::array<int, 4> perm{}, signs{};
  for (int k = 0; k < 4; ++k) {
    // e_{k+1} -> signs[perm[k]] e_{perm[k]}; invert: e_{perm[k]} -> s e_{k+1}
    perm[perm_[k] - 1] = k + 1;
    signs[k] = signs_[perm_[k] - 1];
  }
  return Symmetry(perm, signs);
}

Symmetry Symmetry::compose(const Symmetry& other) const {
  std::array<int, 4> perm{}, signs{};
  for (int k = 1; k <= 4; ++k) {
    const SignedAxis img = apply(other.apply(SignedAxis::from_int(k)));
    perm[k - 1] = img.axis();
    signs[img.axis() - 1] = img.sign();
  }
  return Symmetry(perm, signs);
}

Eigen::Matrix4d Symmetry::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int k = 1; k <= 4; ++k) {
    const SignedAxis img = apply(SignedAxis::from_int(k));
    m(img.axis() - 1, k - 1) = img.sign();
  }
  return m;
}

std::string Symmetry::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int k = 1; k <= 4; ++k) {
    if (k > 1) os << ',';
    os << apply(SignedAxis::from_int(k)).value();
  }
  os << ']';
  return os.str();
}

Canonical canonicalize(const Star& s) {
  Canonical best{s, Symmetry::identity()};
  for (const auto& g : Symmetry::all()) {
    Star img = g.apply(s);
    if (img < best.representative) best = {img, g};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Cycles are rooted at their least axis; the reflection duplicate is dropped
// by requiring second < last.
void extend(std::vector<SignedAxis>& path, unsigned used, int n_min, int n_max,
            std::vector<Star>& out) {
  const SignedAxis root = path.front();
  const SignedAxis last = path.back();
  if (path.size() >= 3 && path.size() >= static_cast<std::size_t>(n_min) &&
      last.axis() != root.axis() && path[1] < last) {
    out.push_back(Star::from_cycle(path));
  }
  if (path.size() == static_cast<std::size_t>(n_max)) return;
  for (SignedAxis next : SignedAxis::all()) {
    if (next <= root || (used & (1u << next.key()))) continue;
    if (next.axis() == last.axis()) continue;
    path.push_back(next);
    extend(path, used | (1u << next.key()), n_min, n_max, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Star> enumerate_stars(int n_min, int n_max) {
  if (n_min < 3 || n_max > 8 || n_min > n_max) {
    throw InvalidRange("star size range [" + std::to_string(n_min) + "," +
                       std::to_string(n_max) + "] not within 3 <= min <= max <= 8");
  }
  std::vector<Star> out;
  for (SignedAxis root : SignedAxis::all()) {
    std::vector<SignedAxis> path{root};
    extend(path, 1u << root.key(), n_min, n_max, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct ClassIndex {
  std::vector<StarClass> classes;
  std::unordered_map<std::uint64_t, std::size_t> by_representative;
};

ClassIndex build_index(int threads) {
  const std::vector<Star> stars = enumerate_stars();
  std::vector<Star> reps(stars.size());
  parallel_for(stars.size(), threads,
               [&](std::size_t i) { reps[i] = canonicalize(stars[i]).representative; });

  std::map<Star, std::size_t> counts;
  for (const auto& r : reps) ++counts[r];

  ClassIndex index;
  for (const auto& [rep, count] : counts) {
    index.classes.push_back(StarClass{0, rep, signature(rep), count});
  }
  std::sort(index.classes.begin(), index.classes.end(),
            [](const StarClass& a, const StarClass& b) {
              if (a.representative.size() != b.representative.size()) {
                return a.representative.size() < b.representative.size();
              }
              if (!(a.signature == b.signature)) return a.signature < b.signature;
              return a.representative < b.representative;
            });
  for (std::size_t k = 0; k < index.classes.size(); ++k) {
    index.classes[k].id = static_cast<int>(k + 1);
    index.by_representative[index.classes[k].representative.code()] = k;
  }
  return index;
}

const ClassIndex& class_index(int threads) {
  static const ClassIndex index = build_index(threads);
  return index;
}

}  // namespace

const std::vector<StarClass>& classify_all(int threads) {
  return class_index(threads).classes;
}

const StarClass& class_of(const Star& s) {
  const auto& index = class_index(0);
  const Star rep = canonicalize(s).representative;
  return index.classes.at(index.by_representative.at(rep.code()));
}

ClassificationCheck check_classification(const std::vector<StarClass>& classes) {
  ClassificationCheck check;
  std::map<std::string, std::vector<int>> by_signature;
  for (const auto& c : classes) {
    ++check.counts[c.representative.size() - 3];
    ++check.total;
    by_signature[std::to_string(c.representative.size()) + ":" +
                 c.signature.to_string()]
        .push_back(c.id);
  }
  check.matches_expected = check.total == kExpectedClassTotal &&
                           check.counts == kExpectedClassCounts;
  for (auto& [sig, ids] : by_signature) {
    if (ids.size() > 1) check.shared_signatures[sig.substr(sig.find(':') + 1)] = ids;
  }
  return check;
}

const std::vector<StarClass>& classify_all_checked(int threads) {
  const auto& classes = classify_all(threads);
  const auto check = check_classification(classes);
  if (!check.matches_expected) {
    std::ostringstream os;
    os << "found " << check.total << " star classes (per size";
    for (int c : check.counts) os << ' ' << c;
    os << "), expected " << kExpectedClassTotal << " (per size";
    for (int c : kExpectedClassCounts) os << ' ' << c;
    os << ')';
    throw ClassificationMismatch(os.str());
  }
  return classes;
}

const std::map<int, std::vector<Signature>>& expected_signature_table() {
  static const std::map<int, std::vector<Signature>> table = [] {
    auto p = [](std::initializer_list<const char*> xs) {
      std::vector<Signature> v;
      for (const char* x : xs) v.push_back(Signature::parse(x));
      std::sort(v.begin(), v.end());
      return v;
    };
    return std::map<int, std::vector<Signature>>{
        {3, p({"(1,1,1)"})},
        {4, p({"(4)", "(2,2)", "(1,1,1,1)"})},
        {5, p({"(3,1,1)", "(2,1,1,1)"})},
        {6, p({"(3,1,1,1)", "(2,1,1,1,1)", "(2b,1,1,1,1)", "(2,2,2b)",
               "(2b,2b,2b)"})},
        {7, p({"(3,2,1,1)", "(2,2,1,1,1)", "(2,2b,1,1,1)", "(2b,2b,1,1,1)"})},
        {8, p({"(3,3,1,1)", "(2,2,1,1,1,1)", "(2,2b,1,1,1,1)", "(2,2,2b,2b)",
               "(2b,2b,2b,2b)"})},
    };
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Lemmas

bool LemmaReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.passed; });
}

const std::vector<Signature>& lemma_signature3_list() {
  static const std::vector<Signature> list = {
      Signature::parse("(3,1,1)"), Signature::parse("(3,1,1,1)"),
      Signature::parse("(3,2,1,1)"), Signature::parse("(3,3,1,1)")};
  return list;
}

const std::vector<Signature>& lemma_signature2_list() {
  static const std::vector<Signature> list = {
      Signature::parse("(2,2)"),         Signature::parse("(2,1,1,1)"),
      Signature::parse("(2,2,2b)"),      Signature::parse("(2b,2b,2b)"),
      Signature::parse("(2,2,1,1,1)"),   Signature::parse("(2,2b,1,1,1)"),
      Signature::parse("(2,1,1,1,1)"),   Signature::parse("(2b,1,1,1,1)")};
  return list;
}

LemmaReport check_lemmas() {
  const std::vector<Star> stars = enumerate_stars();
  // First star realizing each signature, keyed by the signature text.
  std::map<std::string, std::pair<Signature, Star>> realized;
  for (const auto& s : stars) {
    const Signature sig = signature(s);
    realized.try_emplace(sig.to_string(), sig, s);
  }
  auto in = [](const std::vector<Signature>& list, const Signature& sig) {
    return std::find(list.begin(), list.end(), sig) != list.end();
  };
  auto witness = [](const Signature& sig, const Star& s) {
    return sig.to_string() + " e.g. " + s.to_string();
  };

  LemmaCheck five{"five_singles", true, {}};
  LemmaCheck three{"signature3", true, {}};
  LemmaCheck two{"signature2", true, {}};
  LemmaCheck two_realized{"signature2_realized", true, {}};
  LemmaCheck three_twos{"three_twos", true, {}};

  for (const auto& [text, entry] : realized) {
    const auto& [sig, star] = entry;
    if (sig.count(SigEntry::One) >= 5) {
      five.passed = false;
      five.counterexamples.push_back(witness(sig, star));
    }
    if (sig.contains(SigEntry::Three) && !in(lemma_signature3_list(), sig)) {
      three.passed = false;
      three.counterexamples.push_back(witness(sig, star));
    }
    const std::size_t twos = sig.count(SigEntry::Two) + sig.count(SigEntry::TwoBar);
    if (twos > 0 && !sig.contains(SigEntry::Three) && sig.total() <= 7 &&
        !in(lemma_signature2_list(), sig)) {
      two.passed = false;
      two.counterexamples.push_back(witness(sig, star));
    }
    if (twos == 3 && sig.count(SigEntry::One) >= 1 &&
        sig.count(SigEntry::One) <= 2 && sig.size() == twos + sig.count(SigEntry::One)) {
      three_twos.passed = false;
      three_twos.counterexamples.push_back(witness(sig, star));
    }
  }
  for (const auto& sig : lemma_signature2_list()) {
    if (!realized.count(sig.to_string())) {
      two_realized.passed = false;
      two_realized.counterexamples.push_back(sig.to_string() + " not realized");
    }
  }
  return LemmaReport{{five, three, two, two_realized, three_twos}};
}

// ---------------------------------------------------------------------------
// Reference table

const std::vector<ReferenceEntry>& reference_examples() {
  using F = std::vector<std::pair<int, int>>;
  static const std::vector<ReferenceEntry> table = {
      {3, Signature::parse("(1,1,1)"), F{{1, 2}, {1, 3}, {2, 3}}},
      {4, Signature::parse("(4)"), F{{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}},
      {4, Signature::parse("(2,2)"), F{{1, 2}, {1, -2}, {2, 3}, {-2, 3}}},
      {4, Signature::parse("(1,1,1,1)"), F{{1, 2}, {2, 3}, {3, 4}, {1, 4}}},
      {5, Signature::parse("(3,1,1)"), F{{1, 2}, {-1, 2}, {-1, 3}, {-2, 3}, {1, -2}}},
      {5, Signature::parse("(2,1,1,1)"), F{{1, 2}, {-1, 2}, {1, 3}, {3, 4}, {-1, 4}}},
      {6, Signature::parse("(3,1,1,1)"),
       F{{1, 2}, {-1, 2}, {-1, 3}, {-2, 4}, {3, 4}, {1, -2}}},
      {6, Signature::parse("(2,1,1,1,1)"),
       F{{1, 2}, {-1, 2}, {-1, 3}, {-2, 3}, {-2, 4}, {1, 4}}},
      {6, Signature::parse("(2b,1,1,1,1)"),
       F{{1, 2}, {-1, -2}, {1, 3}, {-2, 3}, {2, 4}, {1, 4}}},
      {6, Signature::parse("(2,2,2b)"),
       F{{1, 2}, {-1, 2}, {1, 3}, {-1, -3}, {-2, 3}, {-2, 3}}},
      {6, Signature::parse("(2b,2b,2b)"),
       F{{1, 2}, {-1, -2}, {1, 3}, {-2, 3}, {2, -3}, {-1, -3}}},
      {7, Signature::parse("(3,2,1,1)"),
       F{{1, 2}, {-1, 2}, {-1, 4}, {3, -4}, {3, 4}, {-2, -4}, {1, -2}}},
      {7, Signature::parse("(2,2,1,1,1)"),
       F{{1, 2}, {-1, 2}, {-1, 4}, {3, 4}, {-2, 3}, {-2, -3}, {1, -3}}},
      {7, Signature::parse("(2,2b,1,1,1)"),
       F{{1, 2}, {-1, 2}, {1, -3}, {-1, 3}, {-2, 3}, {-2, 4}, {-3, 4}}},
      {7, Signature::parse("(2b,2b,1,1,1)"),
       F{{1, 2}, {-1, -2}, {1, -3}, {-1, 3}, {-2, -3}, {2, 4}, {3, 4}}},
      {8, Signature::parse("(3,3,1,1)"),
       F{{1, 2}, {-1, 2}, {-1, 4}, {3, -4}, {3, 4}, {-3, -4}, {-2, -3}, {1, -2}}},
      {8, Signature::parse("(2,2,1,1,1,1)"),
       F{{1, 2}, {2, -4}, {-1, 4}, {-1, -4}, {3, 4}, {-2, 3}, {-2, -3}, {1, -3}}},
      {8, Signature::parse("(2,2b,1,1,1,1)"),
       F{{1, -4}, {2, -4}, {-1, 2}, {-1, 4}, {3, 4}, {-2, 3}, {-2, -3}, {1, -3}}},
      {8, Signature::parse("(2,2,2b,2b)"),
       F{{1, 2}, {-1, 2}, {-1, 4}, {3, 4}, {-2, 3}, {-2, -3}, {1, -4}, {-3, -4}}},
      {8, Signature::parse("(2b,2b,2b,2b)"),
       F{{1, 2}, {-1, -2}, {1, 3}, {-1, -3}, {2, 4}, {-3, 4}, {-2, -4}, {3, -4}}},
  };
  return table;
}

namespace {

std::optional<Star> try_star(const std::vector<std::pair<int, int>>& faces,
                             std::string* error) {
  try {
    std::vector<LocalFace> lf;
    for (auto [u, v] : faces) lf.push_back(LocalFace::make(u, v));
    return star_cycle(lf);
  } catch (const StarError& e) {
    if (error) *error = std::string(to_string(e.kind())) + ": " + e.what();
    return std::nullopt;
  }
}

}  // namespace

std::vector<ReferenceVerdict> check_reference_examples() {
  std::vector<ReferenceVerdict> out;
  std::vector<LocalFace> all_faces;
  for (SignedAxis u : SignedAxis::all()) {
    for (SignedAxis v : SignedAxis::all()) {
      if (u < v && u.axis() != v.axis()) all_faces.push_back(LocalFace::make(u, v));
    }
  }

  for (const auto& entry : reference_examples()) {
    ReferenceVerdict verdict;
    verdict.entry = entry;
    verdict.star = try_star(entry.faces, &verdict.error);
    if (verdict.star) {
      verdict.class_id = class_of(*verdict.star).id;
      verdict.signature_matches = signature(*verdict.star) == entry.claimed;
    } else {
      std::set<std::vector<std::pair<int, int>>> seen;
      for (std::size_t k = 0; k < entry.faces.size(); ++k) {
        for (const auto& f : all_faces) {
          auto candidate = entry.faces;
          candidate[k] = {f.first().value(), f.second().value()};
          auto star = try_star(candidate, nullptr);
          if (!star || !(signature(*star) == entry.claimed)) continue;
          if (seen.insert(candidate).second) verdict.suggestions.push_back(candidate);
        }
      }
    }
    out.push_back(std::move(verdict));
  }
  return out;
}

}  // namespace gridstar
