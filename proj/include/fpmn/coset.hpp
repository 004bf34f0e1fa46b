// Todd-Coxeter enumeration of the cosets of L = ncl(relators) in the free
// group, Schreier transversals, Reidemeister-Schreier rewriting into the free
// basis of L, and the abelianization of F/L.
//
// L is normal, so its left and right cosets coincide; a "coset" below is
// simply an element of the quotient group F/L, and row 0 is L itself.

#ifndef FPMN_COSET_HPP_
#define FPMN_COSET_HPP_

#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"
#include "snf.hpp"
#include "words.hpp"

namespace fpmn {

enum class TableStatus { complete, overflowed };

/// Action of the free group on the cosets of L. Column Letter::code() holds
/// the image of each coset under that letter.
class CosetTable {
public:
  static constexpr std::int32_t undefined = -1;

  CosetTable() = default;
  CosetTable(std::size_t rank, std::vector<std::vector<std::int32_t>> rows, TableStatus status,
             std::size_t max_cosets)
    : rank_(rank), rows_(std::move(rows)), status_(status), max_cosets_(max_cosets) {}

  TableStatus status() const { return status_; }
  bool complete() const { return status_ == TableStatus::complete; }
  std::size_t size() const { return rows_.size(); }
  std::size_t rank() const { return rank_; }
  std::size_t max_cosets() const { return max_cosets_; }

  std::int32_t image(std::size_t coset, Letter l) const { return rows_[coset][l.code()]; }

  void require_complete(const char* stage) const {
    if (!complete())
      fail(ErrorKind::limit, stage,
           "coset enumeration overflowed at " + std::to_string(max_cosets_) + " cosets");
  }

  /// Coset reached by reading w from `start`.
  std::size_t trace(const Word& w, std::size_t start = 0) const {
    std::size_t c = start;
    for (Letter l : w)
      c = static_cast<std::size_t>(rows_[c][l.code()]);
    return c;
  }

private:
  std::size_t rank_ = 0;
  std::vector<std::vector<std::int32_t>> rows_;
  TableStatus status_ = TableStatus::overflowed;
  std::size_t max_cosets_ = 0;
};

struct EnumerationOptions {
  std::size_t max_cosets = 100000;
  bool lookahead = true;
};

namespace impl {

// HLT enumeration with coincidence processing, plus a lookahead pass before
// giving up on space.
class HltEnumerator {
public:
  HltEnumerator(const Presentation& p, const EnumerationOptions& opt)
    : ncols_(2 * p.alphabet.size()), max_(opt.max_cosets), lookahead_(opt.lookahead) {
    for (const Word& r : p.relators) {
      std::vector<std::uint32_t> cols;
      for (Letter l : r)
        cols.push_back(l.code());
      if (!cols.empty())
        relators_.push_back(std::move(cols));
    }
  }

  CosetTable run() {
    if (max_ == 0)
      fail(ErrorKind::input, "coset", "max_cosets must be positive");
    new_coset();
    std::size_t alpha = 0;
    while (alpha < live_.size()) {
      if (!is_live(alpha)) {
        ++alpha;
        continue;
      }
      if (!process(alpha)) {
        // out of space: compact, then look ahead, then give up
        alpha = compact(alpha);
        if (allocated() >= max_ && lookahead_) {
          lookahead();
          alpha = compact(alpha);
        }
        if (allocated() >= max_)
          return CosetTable(ncols_ / 2, {}, TableStatus::overflowed, max_);
        continue;
      }
      ++alpha;
    }
    return standardize();
  }

private:
  static constexpr std::int32_t undef = CosetTable::undefined;

  std::size_t allocated() const { return live_.size(); }
  bool is_live(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }
  std::int32_t& cell(std::size_t c, std::uint32_t col) { return table_[c * ncols_ + col]; }
  static std::uint32_t inv(std::uint32_t col) { return col ^ 1u; }

  std::int32_t new_coset() {
    auto c = static_cast<std::int32_t>(live_.size());
    live_.push_back(1);
    parent_.push_back(c);
    table_.insert(table_.end(), ncols_, undef);
    return c;
  }

  bool define(std::size_t c, std::uint32_t col) {
    if (allocated() >= max_)
      return false;
    std::int32_t d = new_coset();
    cell(c, col) = d;
    cell(static_cast<std::size_t>(d), inv(col)) = static_cast<std::int32_t>(c);
    return true;
  }

  // returns false when a definition was needed but no space is left
  bool process(std::size_t alpha) {
    for (const auto& r : relators_) {
      if (!scan(alpha, r, true))
        return false;
      if (!is_live(alpha))
        return true;
    }
    for (std::uint32_t col = 0; col < ncols_; ++col)
      if (cell(alpha, col) == undef && !define(alpha, col))
        return false;
    return true;
  }

  bool scan(std::size_t alpha, const std::vector<std::uint32_t>& w, bool fill) {
    std::size_t f = alpha, b = alpha;
    std::size_t i = 0, j = w.size();  // unscanned part is w[i, j)
    for (;;) {
      while (i < j && cell(f, w[i]) != undef) {
        f = static_cast<std::size_t>(cell(f, w[i]));
        ++i;
      }
      if (i == j) {
        if (f != b)
          coincidence(f, b);
        return true;
      }
      while (j > i && cell(b, inv(w[j - 1])) != undef) {
        b = static_cast<std::size_t>(cell(b, inv(w[j - 1])));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        // deduction
        cell(f, w[i]) = static_cast<std::int32_t>(b);
        cell(b, inv(w[i])) = static_cast<std::int32_t>(f);
        return true;
      }
      if (!fill)
        return true;
      if (!define(f, w[i]))
        return false;
    }
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != static_cast<std::int32_t>(r))
      r = static_cast<std::size_t>(parent_[r]);
    while (parent_[c] != static_cast<std::int32_t>(r)) {
      std::size_t next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int32_t>(r);
      c = next;
    }
    return r;
  }

  void merge(std::size_t a, std::size_t b, std::deque<std::size_t>& queue) {
    std::size_t ra = rep(a), rb = rep(b);
    if (ra == rb)
      return;
    std::size_t lo = std::min(ra, rb), hi = std::max(ra, rb);
    parent_[hi] = static_cast<std::int32_t>(lo);
    live_[hi] = 0;
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t g = queue.front();
      queue.pop_front();
      for (std::uint32_t col = 0; col < ncols_; ++col) {
        std::int32_t d = cell(g, col);
        if (d == undef)
          continue;
        auto dd = static_cast<std::size_t>(d);
        cell(dd, inv(col)) = undef;
        std::size_t mu = rep(g), nu = rep(dd);
        if (cell(mu, col) != undef) {
          merge(nu, static_cast<std::size_t>(cell(mu, col)), queue);
        } else if (cell(nu, inv(col)) != undef) {
          merge(mu, static_cast<std::size_t>(cell(nu, inv(col))), queue);
        } else {
          cell(mu, col) = static_cast<std::int32_t>(nu);
          cell(nu, inv(col)) = static_cast<std::int32_t>(mu);
        }
      }
    }
  }

  void lookahead() {
    for (std::size_t c = 0; c < allocated(); ++c) {
      if (!is_live(c))
        continue;
      for (const auto& r : relators_) {
        scan(c, r, false);
        if (!is_live(c))
          break;
      }
    }
  }

  // Removes dead rows keeping the relative order; returns alpha's new index
  // (or the index of the first live row after it).
  std::size_t compact(std::size_t alpha) {
    std::vector<std::int32_t> remap(allocated(), undef);
    std::size_t n = 0;
    std::size_t new_alpha = static_cast<std::size_t>(-1);
    for (std::size_t c = 0; c < allocated(); ++c) {
      if (c >= alpha && new_alpha == static_cast<std::size_t>(-1) && is_live(c))
        new_alpha = n;
      if (is_live(c))
        remap[c] = static_cast<std::int32_t>(n++);
    }
    if (new_alpha == static_cast<std::size_t>(-1))
      new_alpha = n;
    std::vector<std::int32_t> table(n * ncols_, undef);
    for (std::size_t c = 0; c < allocated(); ++c) {
      if (!is_live(c))
        continue;
      for (std::uint32_t col = 0; col < ncols_; ++col) {
        std::int32_t d = cell(c, col);
        table[static_cast<std::size_t>(remap[c]) * ncols_ + col] =
            d == undef ? undef : remap[static_cast<std::size_t>(d)];
      }
    }
    table_ = std::move(table);
    live_.assign(n, 1);
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    return new_alpha;
  }

  // Renumbers live cosets in breadth-first order from coset 0, scanning
  // columns in letter order.
  CosetTable standardize() {
    std::vector<std::int32_t> order(allocated(), undef);
    std::vector<std::size_t> queue{0};
    order[0] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t c = queue[qi];
      for (std::uint32_t col = 0; col < ncols_; ++col) {
        std::int32_t d = cell(c, col);
        if (d == undef)
          fail(ErrorKind::internal, "coset", "incomplete row in a closed enumeration");
        auto dd = static_cast<std::size_t>(d);
        if (!is_live(dd))
          fail(ErrorKind::internal, "coset", "live row points at a dead coset");
        if (order[dd] == undef) {
          order[dd] = static_cast<std::int32_t>(queue.size());
          queue.push_back(dd);
        }
      }
    }
    std::vector<std::vector<std::int32_t>> rows(queue.size(), std::vector<std::int32_t>(ncols_));
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::uint32_t col = 0; col < ncols_; ++col)
        rows[k][col] = order[static_cast<std::size_t>(cell(queue[k], col))];
    return CosetTable(ncols_ / 2, std::move(rows), TableStatus::complete, max_);
  }

  std::uint32_t ncols_;
  std::size_t max_;
  bool lookahead_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<char> live_;
};

} // namespace impl

/// Enumerates the cosets of ncl(relators) in F. A complete table has exactly
/// [F : L] rows, numbered in breadth-first order under the letter order.
/// Overflow is not evidence of infinite index.
inline CosetTable enumerate(const Presentation& p, const EnumerationOptions& opt = {}) {
  p.validate();
  return impl::HltEnumerator(p, opt).run();
}

inline CosetTable enumerate(const Presentation& p, std::size_t max_cosets) {
  EnumerationOptions opt;
  opt.max_cosets = max_cosets;
  return enumerate(p, opt);
}

/// Schreier representatives h_0 = 1, h_1, ... with coset_of(h_k) = k.
struct Transversal {
  std::vector<Word> representatives;

  std::size_t size() const { return representatives.size(); }
  const Word& operator[](std::size_t k) const { return representatives[k]; }
};

/// Breadth-first spanning tree of a standardized table; each representative
/// is the shortlex-least word reaching its coset and the set is prefix-closed.
inline Transversal transversal(const CosetTable& t) {
  t.require_complete("transversal");
  Transversal tr;
  tr.representatives.assign(t.size(), Word());
  std::vector<char> seen(t.size(), 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t c = queue[qi];
    for (std::uint32_t code = 0; code < 2 * t.rank(); ++code) {
      Letter l = Letter::from_code(code);
      auto d = static_cast<std::size_t>(t.image(c, l));
      if (!seen[d]) {
        seen[d] = 1;
        Word h = tr.representatives[c];
        h.push_back(l);
        tr.representatives[d] = std::move(h);
        queue.push_back(d);
      }
    }
  }
  return tr;
}

inline std::size_t coset_of(const CosetTable& t, const Word& f) {
  t.require_complete("coset_of");
  return t.trace(f);
}

/// Free basis of L: the nontrivial Schreier generators h_k x (h_{k.x})^-1,
/// one per (coset, positive generator) pair off the spanning tree.
class SchreierBasis {
public:
  SchreierBasis(const CosetTable& t, const Transversal& tr) : table_(&t) {
    t.require_complete("schreier");
    index_.assign(t.size() * t.rank(), -1);
    for (std::size_t k = 0; k < t.size(); ++k)
      for (std::uint32_t g = 0; g < t.rank(); ++g) {
        Letter x(g, false);
        auto target = static_cast<std::size_t>(t.image(k, x));
        Word s = tr[k] * Word(x) * tr[target].inverse();
        if (s.is_identity())
          continue;
        index_[k * t.rank() + g] = static_cast<std::int32_t>(elements_.size());
        elements_.push_back(std::move(s));
        edges_.emplace_back(k, g);
      }
  }

  std::size_t size() const { return elements_.size(); }
  const Word& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Word>& elements() const { return elements_; }
  /// (coset, generator) of the i-th basis element.
  std::pair<std::size_t, std::uint32_t> edge(std::size_t i) const { return edges_[i]; }
  /// Basis index of edge (coset, generator), or -1 for a tree edge.
  std::int32_t index(std::size_t coset, std::uint32_t g) const {
    return index_[coset * table_->rank() + g];
  }

  /// Expression of w (which must lie in L) as a word over the basis, letter i
  /// standing for element(i).
  Word rewrite(const Word& w) const {
    const CosetTable& t = *table_;
    Word out;
    std::size_t c = 0;
    for (Letter l : w) {
      if (!l.is_inverse()) {
        std::int32_t s = index(c, l.generator());
        if (s >= 0)
          out.push_back(Letter(static_cast<std::uint32_t>(s), false));
        c = static_cast<std::size_t>(t.image(c, l));
      } else {
        auto d = static_cast<std::size_t>(t.image(c, l));
        std::int32_t s = index(d, l.generator());
        if (s >= 0)
          out.push_back(Letter(static_cast<std::uint32_t>(s), true));
        c = d;
      }
    }
    if (c != 0)
      fail(ErrorKind::input, "rewrite", "word is not in the subgroup L");
    return out;
  }

  /// Inverse of rewrite: multiplies out a basis word.
  Word evaluate(const Word& expr) const {
    Word w;
    for (Letter l : expr)
      w *= l.is_inverse() ? elements_[l.generator()].inverse() : elements_[l.generator()];
    return w;
  }

private:
  const CosetTable* table_;
  std::vector<Word> elements_;
  std::vector<std::pair<std::size_t, std::uint32_t>> edges_;
  std::vector<std::int32_t> index_;
};

inline Word rewrite_in_subgroup(const CosetTable& t, const Transversal& tr, const Word& w) {
  return SchreierBasis(t, tr).rewrite(w);
}

/// Relator exponent-sum matrix: rows are relators, columns generators.
inline IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m;
  for (const Word& r : p.relators) {
    auto sums = exponent_sums(r, p.alphabet.size());
    m.emplace_back(sums.begin(), sums.end());
  }
  return m;
}

/// Abelian invariants of F/L. free_rank > 0 proves [F : L] is infinite.
inline SmithForm abelianized_invariants(const Presentation& p) {
  return smith_normal_form(relation_matrix(p), p.alphabet.size());
}

} // namespace fpmn

#endif // FPMN_COSET_HPP_
