// Free-group words over a finite interned alphabet.
//
// Conventions used throughout the library:
//   x^f     = f^-1 x f
//   [u,v]   = u^-1 v^-1 u v
//   [a,b,c] = [[a,b],c]   (left-normalized)

#ifndef FPMN_WORDS_HPP_
#define FPMN_WORDS_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace fpmn {

/// A generator or its inverse. The code 2*generator + inverse doubles as the
/// coset-table column, so the natural order is (generator, sign) with the
/// positive letter first.
class Letter {
public:
  constexpr Letter() = default;
  constexpr Letter(std::uint32_t generator, bool inverse)
    : code_(2 * generator + (inverse ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t generator() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1u) != 0; }
  constexpr int sign() const { return is_inverse() ? -1 : 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  constexpr std::uint32_t code() const { return code_; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

private:
  std::uint32_t code_ = 0;
};

/// Freely reduced word. Every constructor reduces, so two words are equal in
/// the free group iff they compare equal.
class Word {
public:
  Word() = default;
  explicit Word(Letter l) : letters_{l} {}

  static Word reduce(std::span<const Letter> raw) {
    Word w;
    w.letters_.reserve(raw.size());
    for (Letter l : raw)
      w.push_back(l);
    return w;
  }
  static Word reduce(std::initializer_list<Letter> raw) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()));
  }

  static Word generator(std::uint32_t g, long exponent = 1) {
    Word w;
    Letter l(g, exponent < 0);
    for (long i = 0, n = exponent < 0 ? -exponent : exponent; i < n; ++i)
      w.letters_.push_back(l);
    return w;
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Appends one letter, cancelling against the last one if possible.
  void push_back(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse())
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(it->inverse());
    return w;
  }

  /// Segment [from, to) of a reduced word; segments are reduced as well.
  Word subword(std::size_t from, std::size_t to) const {
    Word w;
    w.letters_.assign(letters_.begin() + from, letters_.begin() + to);
    return w;
  }

  Word& operator*=(const Word& v) {
    std::size_t k = 0;
    std::size_t n = letters_.size();
    while (k < n && k < v.size() && letters_[n - 1 - k] == v.letters_[k].inverse())
      ++k;
    letters_.resize(n - k);
    letters_.insert(letters_.end(), v.letters_.begin() + k, v.letters_.end());
    return *this;
  }

  friend Word operator*(Word u, const Word& v) { return u *= v; }

  Word pow(long k) const {
    Word base = k < 0 ? inverse() : *this;
    Word result;
    for (long i = 0, n = k < 0 ? -k : k; i < n; ++i)
      result *= base;
    return result;
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Shortlex order: shorter first, then lexicographic by letter code.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size() <=> b.size(); c != 0)
      return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

private:
  std::vector<Letter> letters_;
};

/// u^f = f^-1 u f
inline Word conjugate(const Word& u, const Word& f) {
  return f.inverse() * u * f;
}

/// [u,v] = u^-1 v^-1 u v
inline Word commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

/// Left-normalized [a1, a2, ..., ak] = [[a1, ..., a(k-1)], ak].
inline Word commutator(std::span<const Word> terms) {
  if (terms.empty())
    return {};
  Word acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = commutator(acc, terms[i]);
  return acc;
}

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // conjugate(core, conjugator) == original
};

inline CyclicReduction cyclic_reduce(const Word& u) {
  std::size_t n = u.size();
  std::size_t k = 0;
  while (2 * k + 1 < n && u[k] == u[n - 1 - k].inverse())
    ++k;
  return {u.subword(k, n - k), u.subword(0, k).inverse()};
}

/// Exponent sum of each generator; the image of w in the abelianization.
inline std::vector<long> exponent_sums(const Word& w, std::size_t rank) {
  std::vector<long> v(rank, 0);
  for (Letter l : w)
    if (l.generator() < rank)
      v[l.generator()] += l.sign();
  return v;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (Letter l : w)
      h = h * 1000003u ^ std::hash<std::uint32_t>()(l.code());
    return h;
  }
};

/// Interned generator names. Declaration order fixes the letter order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names)
      add(n);
  }

  std::uint32_t add(const std::string& name) {
    if (name.empty())
      fail(ErrorKind::input, "words", "empty generator name");
    if (index_.count(name))
      fail(ErrorKind::input, "words", "duplicate generator '" + name + "'");
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  std::optional<std::uint32_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  std::uint32_t index(std::string_view name) const {
    if (auto i = find(name))
      return *i;
    fail(ErrorKind::input, "words", "unknown generator '" + std::string(name) + "'");
  }

  Letter letter(std::string_view name, int sign = 1) const {
    return Letter(index(name), sign < 0);
  }

  const std::string& name(std::uint32_t g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Reduces a raw sequence of (generator name, sign) pairs.
inline Word reduce(const Alphabet& alphabet,
                   std::span<const std::pair<std::string, int>> raw) {
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (const auto& [name, sign] : raw)
    letters.push_back(alphabet.letter(name, sign));
  return Word::reduce(letters);
}

/// Uniformly random reduced word of the given length over `rank` generators.
template <class Rng>
Word random_word(Rng& rng, std::size_t rank, std::size_t length) {
  std::uniform_int_distribution<std::uint32_t> first(0, static_cast<std::uint32_t>(2 * rank - 1));
  std::uniform_int_distribution<std::uint32_t> rest(0, static_cast<std::uint32_t>(2 * rank - 2));
  Word w;
  for (std::size_t i = 0; i < length; ++i) {
    std::uint32_t code = i == 0 ? first(rng) : rest(rng);
    // skip the code that would cancel the previous letter
    if (i > 0 && code >= w.back().inverse().code())
      ++code;
    w.push_back(Letter::from_code(code));
  }
  return w;
}

/// Renders a word as e.g. "x^-1*y^2*x"; the identity renders as "1".
/// Generators outside the alphabet print as g<index>.
inline std::string to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty())
    return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    long run = static_cast<long>(j - i);
    if (!out.empty())
      out += '*';
    std::uint32_t g = w[i].generator();
    out += g < alphabet.size() ? alphabet.name(g) : "g" + std::to_string(g);
    long e = w[i].is_inverse() ? -run : run;
    if (e != 1)
      out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

} // namespace fpmn

#endif // FPMN_WORDS_HPP_
