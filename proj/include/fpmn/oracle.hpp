// Quotient-group oracles for G = F/L (or a quotient F/L' with L' >= L).
//
// Shipped backends:
//   FiniteIndexOracle  complete coset table; exact, finite
//   FreeImageOracle    generators mapped into an auxiliary free group; exact
//   AbelianOracle      F/L' with L' = L[F,F], via Smith normal form; exact
//
// All shipped backends are exact: equal() never answers unknown, and key()
// is a canonical string for the element.

#ifndef FPMN_ORACLE_HPP_
#define FPMN_ORACLE_HPP_

#include <cctype>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "coset.hpp"
#include "error.hpp"
#include "parse.hpp"
#include "presentation.hpp"
#include "snf.hpp"
#include "words.hpp"

namespace fpmn {

enum class Tri { no, yes, unknown };

template <class O>
concept GroupOracle = requires(const O& o, const typename O::element_type& g, Letter l) {
  { o.identity() } -> std::same_as<typename O::element_type>;
  { o.multiply(g, g) } -> std::same_as<typename O::element_type>;
  { o.invert(g) } -> std::same_as<typename O::element_type>;
  { o.image(l) } -> std::same_as<typename O::element_type>;
  { o.equal(g, g) } -> std::same_as<Tri>;
  { o.key(g) } -> std::convertible_to<std::string>;
  { o.exact() } -> std::same_as<bool>;
  { o.infinite() } -> std::same_as<Tri>;
  { o.describe() } -> std::convertible_to<std::string>;
};

/// Image of a word of F.
template <GroupOracle O>
typename O::element_type map_word(const O& oracle, const Word& w) {
  auto g = oracle.identity();
  for (Letter l : w)
    g = oracle.multiply(g, oracle.image(l));
  return g;
}

template <GroupOracle O>
bool is_identity(const O& oracle, const typename O::element_type& g) {
  return oracle.equal(g, oracle.identity()) == Tri::yes;
}

/// Fails unless every relator maps to the identity, i.e. the oracle's kernel
/// contains L.
template <GroupOracle O>
void check_consistent(const O& oracle, const Presentation& p) {
  for (const Word& r : p.relators)
    if (oracle.equal(map_word(oracle, r), oracle.identity()) != Tri::yes)
      fail(ErrorKind::refused, "backend",
           oracle.describe() + " does not send relator " + to_string(r, p.alphabet) +
               " to the identity");
}

class FiniteIndexOracle {
public:
  using element_type = std::size_t;

  FiniteIndexOracle(CosetTable table)
    : table_(std::move(table)) {
    table_.require_complete("backend");
    tr_ = transversal(table_);
  }

  element_type identity() const { return 0; }
  element_type image(Letter l) const { return static_cast<std::size_t>(table_.image(0, l)); }
  // cosets of a normal subgroup multiply as group elements: h_a h_b
  element_type multiply(element_type a, element_type b) const { return table_.trace(tr_[b], a); }
  element_type invert(element_type a) const { return table_.trace(tr_[a].inverse(), 0); }
  Tri equal(element_type a, element_type b) const { return a == b ? Tri::yes : Tri::no; }
  std::string key(element_type a) const { return std::to_string(a); }
  bool exact() const { return true; }
  Tri infinite() const { return Tri::no; }
  std::string describe() const { return "table"; }

  const CosetTable& table() const { return table_; }
  const Transversal& representatives() const { return tr_; }

private:
  CosetTable table_;
  Transversal tr_;
};

/// Generators of F sent to words of an auxiliary free group. The induced
/// quotient is F/L' with L' the kernel; consistency with a presentation
/// means L' >= L.
class FreeImageOracle {
public:
  using element_type = Word;

  FreeImageOracle(Alphabet aux, std::vector<Word> images, std::string spec)
    : aux_(std::move(aux)), images_(std::move(images)), spec_(std::move(spec)) {}

  /// Parses "x->1,y->t". Auxiliary generators are read off the targets as a
  /// letter followed by optional digits (t, t1, s2, ...), in order of first
  /// appearance. Unmapped generators go to the identity.
  static FreeImageOracle parse(std::string_view map, const Alphabet& source) {
    std::vector<std::string> entries = split_top_level(map);
    Alphabet aux;
    std::vector<std::pair<std::uint32_t, std::string>> targets;
    for (const std::string& entry : entries) {
      auto arrow = entry.find("->");
      if (arrow == std::string::npos)
        fail(ErrorKind::input, "backend", "expected 'generator->word' in '" + entry + "'");
      std::string from = impl::trim(std::string_view(entry).substr(0, arrow));
      std::string to = impl::trim(std::string_view(entry).substr(arrow + 2));
      std::uint32_t g = source.index(from);
      for (std::size_t i = 0; i < to.size();) {
        if (std::isalpha(static_cast<unsigned char>(to[i])) || to[i] == '_') {
          std::size_t j = i + 1;
          while (j < to.size() && std::isdigit(static_cast<unsigned char>(to[j])))
            ++j;
          std::string name = to.substr(i, j - i);
          if (!aux.find(name))
            aux.add(name);
          i = j;
        } else {
          ++i;
        }
      }
      targets.emplace_back(g, to);
    }
    std::vector<Word> images(source.size());
    std::vector<char> seen(source.size(), 0);
    for (const auto& [g, text] : targets) {
      if (seen[g])
        fail(ErrorKind::input, "backend", "generator '" + source.name(g) + "' mapped twice");
      seen[g] = 1;
      images[g] = parse_word(text, aux);
    }
    std::string spec = "free:";
    for (std::uint32_t g = 0; g < source.size(); ++g) {
      if (g > 0)
        spec += ",";
      spec += source.name(g) + "->" + to_string(images[g], aux);
    }
    return FreeImageOracle(std::move(aux), std::move(images), spec);
  }

  element_type identity() const { return {}; }
  element_type image(Letter l) const {
    const Word& w = images_.at(l.generator());
    return l.is_inverse() ? w.inverse() : w;
  }
  element_type multiply(const element_type& a, const element_type& b) const { return a * b; }
  element_type invert(const element_type& a) const { return a.inverse(); }
  Tri equal(const element_type& a, const element_type& b) const { return a == b ? Tri::yes : Tri::no; }
  std::string key(const element_type& a) const { return to_string(a, aux_); }
  bool exact() const { return true; }
  // a subgroup of a free group is infinite iff it is nontrivial
  Tri infinite() const {
    for (const Word& w : images_)
      if (!w.is_identity())
        return Tri::yes;
    return Tri::no;
  }
  std::string describe() const { return spec_; }

  const Alphabet& aux_alphabet() const { return aux_; }

private:
  static std::vector<std::string> split_top_level(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
      if (c == '(' || c == '[' || c == '{')
        ++depth;
      if (c == ')' || c == ']' || c == '}')
        --depth;
      if (c == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!impl::trim(cur).empty())
      out.push_back(cur);
    return out;
  }

  Alphabet aux_;
  std::vector<Word> images_;
  std::string spec_;
};

/// The abelianization of F/L: Z^rank / rowspace(relation matrix). Elements
/// are coordinates after the Smith column transform, reduced modulo the
/// invariants; unit invariants drop out.
class AbelianOracle {
public:
  using element_type = std::vector<Integer>;

  explicit AbelianOracle(const Presentation& p) : rank_(p.alphabet.size()) {
    SmithForm s = abelianized_invariants(p);
    moduli_.assign(rank_, 0);
    for (std::size_t i = 0; i < s.invariants.size(); ++i)
      moduli_[i] = s.invariants[i];
    free_rank_ = s.free_rank;
    for (std::uint32_t g = 0; g < rank_; ++g)
      images_.push_back(canonical(s.right[g]));
  }

  element_type identity() const { return element_type(rank_, 0); }
  element_type image(Letter l) const {
    return l.is_inverse() ? invert(images_[l.generator()]) : images_[l.generator()];
  }
  element_type multiply(const element_type& a, const element_type& b) const {
    element_type c(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
      c[i] = a[i] + b[i];
    return canonical(std::move(c));
  }
  element_type invert(const element_type& a) const {
    element_type c(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
      c[i] = -a[i];
    return canonical(std::move(c));
  }
  Tri equal(const element_type& a, const element_type& b) const { return a == b ? Tri::yes : Tri::no; }
  // coordinates of unit invariants are always 0 and are left out
  std::string key(const element_type& a) const {
    std::string out = "(";
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (moduli_[i] == 1)
        continue;
      if (!first)
        out += ",";
      out += a[i].str();
      first = false;
    }
    return out + ")";
  }
  bool exact() const { return true; }
  Tri infinite() const { return free_rank_ > 0 ? Tri::yes : Tri::no; }
  std::string describe() const { return "abelian"; }

  std::size_t free_rank() const { return free_rank_; }

private:
  element_type canonical(element_type v) const {
    for (std::size_t i = 0; i < rank_; ++i) {
      const Integer& d = moduli_[i];
      if (d == 0)
        continue;
      v[i] %= d;
      if (v[i] < 0)
        v[i] += d;
    }
    return v;
  }

  std::size_t rank_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> moduli_;  // 0 for free coordinates
  std::vector<element_type> images_;
};

/// Breadth-first walk of the Cayley graph from the identity, letters in
/// order. Each element is produced once, with its shortlex-least preimage.
template <GroupOracle O>
class CayleyEnumerator {
public:
  using element_type = typename O::element_type;

  struct Item {
    element_type element;
    Word preimage;
  };

  CayleyEnumerator(const O& oracle, std::size_t rank) : oracle_(oracle), rank_(rank) {
    queue_.push_back({oracle.identity(), Word()});
    seen_.insert(oracle.key(queue_.front().element));
  }

  std::optional<Item> next() {
    if (head_ == queue_.size())
      return std::nullopt;
    Item out = queue_[head_++];
    for (std::uint32_t code = 0; code < 2 * rank_; ++code) {
      Letter l = Letter::from_code(code);
      Word w = out.preimage;
      w.push_back(l);
      if (w.size() != out.preimage.size() + 1)
        continue;
      element_type g = oracle_.multiply(out.element, oracle_.image(l));
      if (seen_.insert(oracle_.key(g)).second)
        queue_.push_back({std::move(g), std::move(w)});
    }
    return out;
  }

private:
  const O& oracle_;
  std::size_t rank_;
  std::vector<Item> queue_;
  std::size_t head_ = 0;
  std::unordered_set<std::string> seen_;
};

/// Builds the backend named by `spec` ("table", "abelian" or "free:<map>")
/// and hands it to `fn`. The backend is checked against the relators of p.
template <class Fn>
decltype(auto) with_backend(std::string_view spec, const Presentation& p, Fn&& fn,
                            const EnumerationOptions& opt = {}) {
  if (spec == "table") {
    FiniteIndexOracle o(enumerate(p, opt));
    check_consistent(o, p);
    return fn(o);
  }
  if (spec == "abelian") {
    AbelianOracle o(p);
    check_consistent(o, p);
    return fn(o);
  }
  if (spec.starts_with("free:")) {
    FreeImageOracle o = FreeImageOracle::parse(spec.substr(5), p.alphabet);
    check_consistent(o, p);
    return fn(o);
  }
  fail(ErrorKind::input, "backend", "unknown backend '" + std::string(spec) +
                                        "' (expected table, abelian or free:<map>)");
}

} // namespace fpmn

#endif // FPMN_ORACLE_HPP_
