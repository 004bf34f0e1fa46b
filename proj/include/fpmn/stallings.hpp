// Stallings subgroup graphs with folding history.
//
// Every vertex v carries an implicit reference word r(v) (the label of some
// path from the basepoint in the unfolded petal graph, r(base) = 1) and every
// edge e: o -a-> t carries a history word H(e) over the input generators with
//
//     eval(H(e)) == r(o) * a * r(t)^-1.
//
// Reading a closed path at the basepoint and multiplying the histories of
// the traversed edges therefore yields an expression of the path label in the
// input generators. Folds re-express histories so the invariant survives.

#ifndef FPMN_STALLINGS_HPP_
#define FPMN_STALLINGS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coset.hpp"
#include "error.hpp"
#include "words.hpp"

namespace fpmn {

class SubgroupGraph {
public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::uint32_t gen;
    Word history;  // over the input generators
    bool alive = true;
  };

  /// Folded core graph of <gens>. Identity generators are ignored. With a
  /// non-null `shuffle`, pending folds are processed in random order.
  static SubgroupGraph build(const std::vector<Word>& gens, std::mt19937_64* shuffle = nullptr) {
    SubgroupGraph g;
    g.new_vertex();
    g.shuffle_ = shuffle;
    for (const Word& w : gens)
      g.add_generator_unfolded(w);
    g.fold();
    g.trim();
    g.shuffle_ = nullptr;
    return g;
  }

  /// Graph of L read off a complete coset table: vertices are cosets, the
  /// basepoint is coset 0. Histories are over the Schreier basis of L: tree
  /// edges carry the identity, edge i of the basis carries letter i.
  static SubgroupGraph from_coset_table(const CosetTable& t, const SchreierBasis& basis) {
    t.require_complete("stallings");
    SubgroupGraph g;
    g.vertex_count_ = t.size();
    g.alive_.assign(t.size(), 1);
    g.incident_.assign(t.size(), {});
    g.input_count_ = basis.size();
    for (std::size_t k = 0; k < t.size(); ++k)
      for (std::uint32_t x = 0; x < t.rank(); ++x) {
        auto target = static_cast<std::size_t>(t.image(k, Letter(x, false)));
        std::int32_t s = basis.index(k, x);
        Word h = s >= 0 ? Word(Letter(static_cast<std::uint32_t>(s), false)) : Word();
        g.add_edge(k, target, x, std::move(h));
      }
    g.pending_.clear();
    return g;
  }

  /// Adds one more generator and refolds. Generators are numbered in the
  /// order they were supplied across build and add_generator calls.
  void add_generator(const Word& w) {
    add_generator_unfolded(w);
    fold();
    trim();
  }

  std::size_t input_count() const { return input_count_; }
  std::size_t basepoint() const { return 0; }

  std::size_t vertex_count() const {
    return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1));
  }

  std::size_t edge_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.alive; }));
  }

  /// Rank of the subgroup: E - V + 1 for a connected core graph.
  std::size_t rank() const { return edge_count() + 1 - vertex_count(); }

  bool is_folded() const {
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      if (!alive_[v])
        continue;
      std::map<std::uint32_t, std::size_t> seen;
      for (std::size_t e : incident_[v]) {
        const Edge& ed = edges_[e];
        if (!ed.alive)
          continue;
        if (ed.from == v && ++seen[2 * ed.gen] > 1)
          return false;
        if (ed.to == v && ++seen[2 * ed.gen + 1] > 1)
          return false;
      }
    }
    return true;
  }

  bool contains(const Word& w) const {
    auto end = walk(w, nullptr);
    return end && *end == 0;
  }

  /// Expression of w over the input generators (letter i = generator i),
  /// assembled from edge histories along the closed path that reads w.
  Word express(const Word& w) const {
    Word expr;
    auto end = walk(w, &expr);
    if (!end || *end != 0)
      fail(ErrorKind::input, "express", "word is not in the subgroup");
    return expr;
  }

  /// Basepoint-rooted BFS relabelling; equal strings iff equal subgroups.
  std::string canonical_form() const {
    if (vertex_count_ == 0)
      return {};
    std::vector<std::int64_t> order(vertex_count_, -1);
    std::vector<std::size_t> queue{0};
    order[0] = 0;
    std::ostringstream out;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t v = queue[qi];
      // outgoing half-edges by letter code
      std::vector<std::pair<std::uint32_t, std::size_t>> half;
      for (std::size_t e : incident_[v]) {
        const Edge& ed = edges_[e];
        if (!ed.alive)
          continue;
        if (ed.from == v)
          half.emplace_back(2 * ed.gen, ed.to);
        if (ed.to == v)
          half.emplace_back(2 * ed.gen + 1, ed.from);
      }
      std::sort(half.begin(), half.end());
      for (auto [code, w] : half) {
        if (order[w] < 0) {
          order[w] = static_cast<std::int64_t>(queue.size());
          queue.push_back(w);
        }
        out << order[v] << ':' << code << ':' << order[w] << ';';
      }
    }
    return out.str();
  }

  friend bool equals(const SubgroupGraph& a, const SubgroupGraph& b) {
    return a.canonical_form() == b.canonical_form();
  }

  /// Live edges, for inspection and DOT output.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const Edge& e : edges_)
      if (e.alive)
        out.push_back(e);
    return out;
  }

  std::string to_dot(const Alphabet& alphabet) const {
    std::ostringstream out;
    out << "digraph subgroup {\n  node [shape=circle];\n  v0 [shape=doublecircle];\n";
    for (const Edge& e : edges_)
      if (e.alive)
        out << "  v" << e.from << " -> v" << e.to << " [label=\""
            << (e.gen < alphabet.size() ? alphabet.name(e.gen) : "g" + std::to_string(e.gen))
            << "\"];\n";
    out << "}\n";
    return out.str();
  }

private:
  std::size_t new_vertex() {
    alive_.push_back(1);
    incident_.emplace_back();
    return vertex_count_++;
  }

  void add_edge(std::size_t from, std::size_t to, std::uint32_t gen, Word history) {
    std::size_t id = edges_.size();
    edges_.push_back({from, to, gen, std::move(history), true});
    incident_[from].push_back(id);
    if (to != from)
      incident_[to].push_back(id);
    pending_.push_back(from);
    pending_.push_back(to);
  }

  // Petal at the basepoint; only the closing edge carries the generator.
  void add_generator_unfolded(const Word& w) {
    if (vertex_count_ == 0)
      new_vertex();
    std::uint32_t id = static_cast<std::uint32_t>(input_count_++);
    if (w.is_identity())
      return;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool last = i + 1 == w.size();
      std::size_t next = last ? 0 : new_vertex();
      Word h = last ? Word(Letter(id, false)) : Word();
      Letter l = w[i];
      if (!l.is_inverse()) {
        add_edge(prev, next, l.generator(), std::move(h));
      } else {
        // the edge runs next -> prev; its history is the inverse traversal
        add_edge(next, prev, l.generator(), h.inverse());
      }
      prev = next;
    }
  }

  // history of traversing e out of v along the letter it presents at v
  Word traversal(const Edge& e, bool forward) const {
    return forward ? e.history : e.history.inverse();
  }

  struct HalfEdge {
    std::size_t edge;
    bool forward;  // leaves v along e.from -> e.to
    std::size_t other;
  };

  std::optional<std::pair<HalfEdge, HalfEdge>> find_fold(std::size_t v) const {
    std::map<std::uint32_t, HalfEdge> seen;
    for (std::size_t e : incident_[v]) {
      const Edge& ed = edges_[e];
      if (!ed.alive)
        continue;
      for (int dir = 0; dir < 2; ++dir) {
        bool forward = dir == 0;
        if ((forward && ed.from != v) || (!forward && ed.to != v))
          continue;
        std::uint32_t code = 2 * ed.gen + (forward ? 0u : 1u);
        HalfEdge h{e, forward, forward ? ed.to : ed.from};
        auto [it, inserted] = seen.emplace(code, h);
        if (!inserted && it->second.edge != e)
          return std::make_pair(it->second, h);
      }
    }
    return std::nullopt;
  }

  void fold() {
    while (!pending_.empty()) {
      std::size_t pick = pending_.size() - 1;
      if (shuffle_)
        pick = std::uniform_int_distribution<std::size_t>(0, pending_.size() - 1)(*shuffle_);
      std::size_t v = pending_[pick];
      pending_[pick] = pending_.back();
      pending_.pop_back();
      if (!alive_[v])
        continue;
      auto f = find_fold(v);
      if (!f)
        continue;
      fold_pair(v, f->first, f->second);
      pending_.push_back(v);
    }
  }

  void fold_pair(std::size_t v, HalfEdge h1, HalfEdge h2) {
    std::size_t t1 = h1.other, t2 = h2.other;
    if (t2 < t1) {
      std::swap(h1, h2);
      std::swap(t1, t2);
    }
    // eval(T2^-1 T1) == r(t2) r(t1)^-1
    Word t1h = traversal(edges_[h1.edge], h1.forward);
    Word t2h = traversal(edges_[h2.edge], h2.forward);
    if (t1 != t2) {
      Word d = t2h.inverse() * t1h;
      Word d_inv = d.inverse();
      for (std::size_t e : incident_[t2]) {
        Edge& ed = edges_[e];
        if (!ed.alive)
          continue;
        if (ed.from == t2) {
          ed.history = d_inv * ed.history;
          ed.from = t1;
        }
        if (ed.to == t2) {
          ed.history = ed.history * d;
          ed.to = t1;
        }
        incident_[t1].push_back(e);
      }
      incident_[t2].clear();
      alive_[t2] = 0;
      dedup_incident(t1);
    }
    // h1 and h2 are now parallel with equal evaluations; keep the smaller history
    Edge& e1 = edges_[h1.edge];
    Edge& e2 = edges_[h2.edge];
    if (e2.history < e1.history)
      e1.history = e2.history;
    e2.alive = false;
    pending_.push_back(t1);
    if (v != t1)
      pending_.push_back(v);
  }

  void dedup_incident(std::size_t v) {
    auto& inc = incident_[v];
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    inc.erase(std::remove_if(inc.begin(), inc.end(), [&](std::size_t e) { return !edges_[e].alive; }),
              inc.end());
  }

  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t e : incident_[v]) {
      const Edge& ed = edges_[e];
      if (!ed.alive)
        continue;
      d += (ed.from == v) + (ed.to == v);
    }
    return d;
  }

  // Removes hanging trees; closed reduced paths at the basepoint never enter them.
  void trim() {
    std::vector<std::size_t> stack;
    for (std::size_t v = 1; v < vertex_count_; ++v)
      if (alive_[v] && degree(v) <= 1)
        stack.push_back(v);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (!alive_[v] || v == 0 || degree(v) > 1)
        continue;
      for (std::size_t e : incident_[v]) {
        Edge& ed = edges_[e];
        if (!ed.alive)
          continue;
        ed.alive = false;
        std::size_t w = ed.from == v ? ed.to : ed.from;
        if (w != 0 && alive_[w] && degree(w) <= 1)
          stack.push_back(w);
      }
      incident_[v].clear();
      alive_[v] = 0;
    }
  }

  std::optional<std::size_t> step(std::size_t v, Letter l, Word* expr) const {
    for (std::size_t e : incident_[v]) {
      const Edge& ed = edges_[e];
      if (!ed.alive || ed.gen != l.generator())
        continue;
      if (!l.is_inverse() && ed.from == v) {
        if (expr)
          *expr *= ed.history;
        return ed.to;
      }
      if (l.is_inverse() && ed.to == v) {
        if (expr)
          *expr *= ed.history.inverse();
        return ed.from;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> walk(const Word& w, Word* expr) const {
    if (vertex_count_ == 0)
      return w.is_identity() ? std::optional<std::size_t>(0) : std::nullopt;
    std::size_t v = 0;
    for (Letter l : w) {
      auto next = step(v, l, expr);
      if (!next)
        return std::nullopt;
      v = *next;
    }
    return v;
  }

  std::size_t vertex_count_ = 0;
  std::size_t input_count_ = 0;
  std::vector<char> alive_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> pending_;
  std::mt19937_64* shuffle_ = nullptr;
};

inline SubgroupGraph build_subgroup_graph(const std::vector<Word>& gens) {
  return SubgroupGraph::build(gens);
}

} // namespace fpmn

#endif // FPMN_STALLINGS_HPP_
