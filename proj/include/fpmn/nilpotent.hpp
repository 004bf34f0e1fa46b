// Magnus embedding into truncated noncommutative integer power series.
//
// A variable v maps to 1 + t_v. Truncating at degree c gives a faithful
// representation of the free c-nilpotent group, so a word is trivial there iff
// it lies in gamma_{c+1} of the free group.

#ifndef FPMN_NILPOTENT_HPP_
#define FPMN_NILPOTENT_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "snf.hpp"
#include "words.hpp"

namespace fpmn {

using Monomial = std::vector<std::uint32_t>;

/// Graded lexicographic: lower degree first, then lexicographic by variable.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  }
};

class TruncatedSeries {
public:
  using Terms = std::map<Monomial, Integer, GradedLex>;

  explicit TruncatedSeries(unsigned c) : class_(c) {
    if (c == 0)
      fail(ErrorKind::input, "nilpotent", "class must be at least 1");
  }

  static TruncatedSeries one(unsigned c) {
    TruncatedSeries s(c);
    s.terms_[{}] = 1;
    return s;
  }

  /// 1 + t_v
  static TruncatedSeries variable(std::uint32_t v, unsigned c) {
    TruncatedSeries s = one(c);
    s.terms_[{v}] = 1;
    return s;
  }

  unsigned nilpotency_class() const { return class_; }
  const Terms& terms() const { return terms_; }

  Integer coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  Integer constant() const { return coefficient({}); }

  bool is_identity() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
  }

  /// Lowest degree of a nonzero non-constant term.
  std::optional<std::size_t> lowest_degree() const {
    for (const auto& [m, coef] : terms_)
      if (!m.empty())
        return m.size();
    return std::nullopt;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.class_ == b.class_ && a.terms_ == b.terms_;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_class(a, b);
    TruncatedSeries out(a.class_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.size() + mb.size() > a.class_)
          continue;
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        out.add(m, ca * cb);
      }
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_class(a, b);
    TruncatedSeries out = a;
    for (const auto& [m, c] : b.terms_)
      out.add(m, c);
    return out;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_class(a, b);
    TruncatedSeries out = a;
    for (const auto& [m, c] : b.terms_)
      out.add(m, -c);
    return out;
  }

  /// Units have constant term 1: (1 + n)^-1 = sum_k (-n)^k, finite since n
  /// is nilpotent modulo the truncation.
  TruncatedSeries inverse() const {
    if (constant() != 1)
      fail(ErrorKind::input, "nilpotent", "inverse requires constant term 1");
    TruncatedSeries neg_n(class_);
    for (const auto& [m, c] : terms_)
      if (!m.empty())
        neg_n.terms_[m] = -c;
    TruncatedSeries result = one(class_);
    TruncatedSeries power = one(class_);
    for (unsigned k = 1; k <= class_; ++k) {
      power = power * neg_n;
      if (power.terms_.empty())
        break;
      result = result + power;
    }
    return result;
  }

  /// this * (1 + t_v)^{+-1}, in place.
  void multiply_letter(Letter l) {
    std::uint32_t v = l.generator();
    Terms out;
    for (const auto& [m, c] : terms_) {
      // 1 + t_v, or 1 - t_v + t_v^2 - ... for the inverse letter
      std::size_t max_k = l.is_inverse() ? class_ - m.size() : std::min<std::size_t>(1, class_ - m.size());
      Monomial cur = m;
      Integer coef = c;
      for (std::size_t k = 0; k <= max_k; ++k) {
        add_to(out, cur, coef);
        cur.push_back(v);
        if (l.is_inverse())
          coef = -coef;
      }
    }
    terms_ = std::move(out);
  }

  std::string to_string(const std::function<std::string(std::uint32_t)>& name) const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      bool neg = c < 0;
      Integer mag = neg ? Integer(-c) : c;
      if (!out.empty())
        out += neg ? " - " : " + ";
      else if (neg)
        out += "-";
      if (m.empty() || mag != 1)
        out += mag.str();
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0 || mag != 1)
          out += '*';
        out += "t_" + name(m[i]);
      }
    }
    return out;
  }

private:
  static void check_class(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.class_ != b.class_)
      fail(ErrorKind::input, "nilpotent", "class mismatch");
  }

  static void add_to(Terms& terms, const Monomial& m, const Integer& c) {
    if (c == 0)
      return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms.erase(it);
    }
  }

  void add(const Monomial& m, const Integer& c) { add_to(terms_, m, c); }

  unsigned class_;
  Terms terms_;
};

/// Magnus image of w truncated at degree c; variables are the generator
/// indices of w's letters.
inline TruncatedSeries magnus(const Word& w, unsigned c) {
  TruncatedSeries s = TruncatedSeries::one(c);
  for (Letter l : w)
    s.multiply_letter(l);
  return s;
}

/// Position of a free-group element in the lower central series.
struct LcsDegree {
  std::optional<std::size_t> degree;  // empty: the identity (infinite degree)

  bool infinite() const { return !degree.has_value(); }
  friend bool operator==(const LcsDegree&, const LcsDegree&) = default;
};

/// Largest d with w in gamma_d: the lowest degree of a non-constant term of
/// the Magnus image. Classes are tried upward from 1, so the cost is that of
/// the answer rather than of |w|.
inline LcsDegree lcs_degree(const Word& w) {
  if (w.is_identity())
    return {};
  for (unsigned c = 1; c <= w.size(); ++c) {
    TruncatedSeries s = magnus(w, c);
    if (auto d = s.lowest_degree())
      return {d};
  }
  fail(ErrorKind::internal, "nilpotent", "nontrivial word with no Magnus term up to its length");
}

struct ClassResult {
  unsigned c = 1;
  bool swapped = false;  // true when B plays the role of M
  std::size_t degree_m = 0;
  std::size_t degree_n = 0;
};

/// Class c with the M-side inside gamma_c(L) but not gamma_{c+1}(L), after
/// orienting the sides so that the N-side escapes gamma_2(L).
/// `rewrite` maps a member of L to a word over a free basis of L (or over any
/// alphabet in which it computes the same lower-central degrees).
inline ClassResult compute_class(const std::vector<Word>& a, const std::vector<Word>& b,
                                 const std::function<Word(const Word&)>& rewrite) {
  auto side_degree = [&](const std::vector<Word>& side, const char* label) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const Word& w : side) {
      LcsDegree d = lcs_degree(rewrite(w));
      if (!d.infinite())
        best = std::min(best, *d.degree);
    }
    if (best == std::numeric_limits<std::size_t>::max())
      fail(ErrorKind::input, "class", std::string(label) + " side is trivial");
    return best;
  };
  ClassResult r;
  r.degree_m = side_degree(a, "M");
  r.degree_n = side_degree(b, "N");
  if (r.degree_n >= 2 && r.degree_m >= 2)
    fail(ErrorKind::internal, "class",
         "both sides lie in gamma_2(L); the rewriter does not describe L = MN");
  if (r.degree_n == 1) {
    r.c = static_cast<unsigned>(r.degree_m);
  } else {
    r.swapped = true;
    r.c = static_cast<unsigned>(r.degree_n);
  }
  return r;
}

} // namespace fpmn

#endif // FPMN_NILPOTENT_HPP_
