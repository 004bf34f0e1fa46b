// Reference implementations used only by the tests. Each one computes the
// same answer as a library routine by a different, brute-force route.

#ifndef FPMN_TESTS_SUPPORT_HPP_
#define FPMN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fpmn/parse.hpp"
#include "fpmn/presentation.hpp"
#include "fpmn/words.hpp"

namespace fpmn::testing {

inline Presentation make_presentation(const std::vector<std::string>& gens, const std::string& relators) {
  Presentation p;
  p.alphabet = Alphabet(gens);
  if (!relators.empty())
    p.relators = parse_word_list(relators, p.alphabet);
  return p;
}

inline Word w(const std::string& text, const Alphabet& a) { return parse_word(text, a); }

// ---- permutation realizations ----------------------------------------------

using Perm = std::vector<int>;

inline Perm compose(const Perm& p, const Perm& q) {  // apply p, then q
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}

inline Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

inline Perm evaluate(const Word& w, const std::vector<Perm>& gens, std::size_t degree) {
  Perm r(degree);
  std::iota(r.begin(), r.end(), 0);
  for (Letter l : w)
    r = compose(r, l.is_inverse() ? invert(gens[l.generator()]) : gens[l.generator()]);
  return r;
}

inline std::size_t generated_order(const std::vector<Perm>& gens, std::size_t degree) {
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& g : gens) {
      Perm h = compose(queue[i], g);
      if (seen.insert(h).second)
        queue.push_back(h);
    }
  return seen.size();
}

/// Largest order of a group generated by an assignment of the generators to
/// permutations of at most `max_degree` points satisfying every relator.
/// Each such group is a quotient of the presented group, so the result is a
/// lower bound for its order, attained when it acts faithfully on that many
/// points.
inline std::size_t permutation_realization_order(const Presentation& p, std::size_t max_degree = 5) {
  std::size_t best = 1;
  std::size_t rank = p.alphabet.size();
  for (std::size_t degree = 1; degree <= max_degree; ++degree) {
    std::vector<Perm> all;
    Perm q(degree);
    std::iota(q.begin(), q.end(), 0);
    do
      all.push_back(q);
    while (std::next_permutation(q.begin(), q.end()));
    std::vector<std::size_t> pick(rank, 0);
    while (true) {
      std::vector<Perm> gens;
      for (std::size_t i : pick)
        gens.push_back(all[i]);
      bool ok = true;
      for (const Word& r : p.relators) {
        Perm e = evaluate(r, gens, degree);
        for (std::size_t i = 0; i < degree && ok; ++i)
          ok = e[i] == static_cast<int>(i);
        if (!ok)
          break;
      }
      if (ok)
        best = std::max(best, generated_order(gens, degree));
      std::size_t k = 0;
      while (k < rank && ++pick[k] == all.size())
        pick[k++] = 0;
      if (k == rank)
        break;
    }
  }
  return best;
}

// ---- subgroups of free groups by enumeration --------------------------------

/// Nielsen conditions N1-N3 on Y and its inverses.
inline bool nielsen_reduced(const std::vector<Word>& y) {
  std::vector<Word> sym;
  for (const Word& g : y) {
    if (g.is_identity())
      return false;
    sym.push_back(g);
    sym.push_back(g.inverse());
  }
  for (std::size_t i = 0; i < sym.size(); ++i)
    for (std::size_t j = 0; j < sym.size(); ++j) {
      if (i != j && sym[i] == sym[j])
        return false;
      Word uv = sym[i] * sym[j];
      if (uv.is_identity())
        continue;
      if (uv.size() < sym[i].size() || uv.size() < sym[j].size())
        return false;
      for (std::size_t k = 0; k < sym.size(); ++k) {
        if ((sym[j] * sym[k]).is_identity())
          continue;
        Word uvw = uv * sym[k];
        if (uvw.size() + sym[j].size() <= sym[i].size() + sym[k].size())
          return false;
      }
    }
  return true;
}

/// All elements of <y> of length <= max_len, for Nielsen-reduced y. Reduced
/// products of a Nielsen-reduced set never get shorter as factors are
/// appended, so pruning at max_len loses nothing.
inline std::set<Word> subgroup_ball(const std::vector<Word>& y, std::size_t max_len) {
  std::vector<Word> sym;
  for (const Word& g : y) {
    sym.push_back(g);
    sym.push_back(g.inverse());
  }
  std::set<Word> out{Word()};
  std::vector<std::pair<Word, int>> frontier{{Word(), -1}};
  while (!frontier.empty()) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [word, last] : frontier)
      for (std::size_t i = 0; i < sym.size(); ++i) {
        if (last >= 0 && static_cast<std::size_t>(last) == (i ^ 1u))
          continue;
        Word p = word * sym[i];
        if (p.size() > max_len)
          continue;
        out.insert(p);
        next.emplace_back(p, static_cast<int>(i));
      }
    frontier = std::move(next);
  }
  return out;
}

/// Every reduced word of length <= max_len over `rank` generators.
inline std::vector<Word> all_words(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::uint32_t code = 0; code < 2 * rank; ++code) {
        Word v = out[i];
        v.push_back(Letter::from_code(code));
        if (v.size() == len)
          out.push_back(std::move(v));
      }
    begin = end;
  }
  return out;
}

// ---- right-angled Artin groups ----------------------------------------------

/// Word problem in the graph group whose generators commute exactly when
/// `commute(i, j)` holds: a letter cancels against a later inverse when every
/// letter in between commutes with it. Greedy cancellation decides triviality.
template <class Commute>
bool raag_trivial(std::vector<std::pair<std::uint32_t, int>> w, Commute commute) {
  bool changed = true;
  while (changed && !w.empty()) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].first == w[i].first && w[j].second == -w[i].second) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (w[j].first != w[i].first && !commute(w[i].first, w[j].first))
          break;
      }
  }
  return w.empty();
}

} // namespace fpmn::testing

#endif // FPMN_TESTS_SUPPORT_HPP_
