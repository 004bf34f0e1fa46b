// Wreath-product images of free-group words and non-finite-presentability
// witnesses.
//
// G = F/L is accessed through an oracle. The homomorphism psi sends a
// generator x to x~ a_(x,1), where x~ is the image of x in G and a_(x,h) are
// free generators indexed by X x G, with G acting on the right by
// a_(x,h)^g = a_(x,hg). Elements of the semidirect product are written g*T
// with the G-part on the left, so (g1 T1)(g2 T2) = g1 g2 T1^g2 T2.
//
// Reading f = l_1 ... l_k, the letter l_i contributes
//   a_(x, s_{i+1})       if l_i = x,
//   a_(x, s_i)^-1        if l_i = x^-1,
// where s_i is the image in G of the suffix l_i ... l_k. Restricted to L the
// tail is a homomorphism into a free group whose lower central series cuts
// out gamma_{c+1}(L) at every c, which is what compute_class relies on.

#ifndef FPMN_WREATH_HPP_
#define FPMN_WREATH_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "nilpotent.hpp"
#include "oracle.hpp"
#include "presentation.hpp"
#include "words.hpp"

namespace fpmn {

/// An element of G together with a word of F mapping onto it.
template <GroupOracle O>
struct GElem {
  typename O::element_type value;
  Word preimage;
};

/// a_(generator, g)^exponent, exponent = +-1.
template <GroupOracle O>
struct TailLetter {
  std::uint32_t generator;
  GElem<O> index;
  std::string key;  // oracle key of index.value
  int exponent;
};

template <GroupOracle O>
struct WreathImage {
  GElem<O> g_part;
  std::vector<TailLetter<O>> tail;  // freely reduced
};

namespace impl {

template <GroupOracle O>
void push_tail(std::vector<TailLetter<O>>& tail, TailLetter<O> l) {
  if (!tail.empty()) {
    const TailLetter<O>& b = tail.back();
    if (b.generator == l.generator && b.exponent == -l.exponent && b.key == l.key) {
      tail.pop_back();
      return;
    }
  }
  tail.push_back(std::move(l));
}

} // namespace impl

template <GroupOracle O>
WreathImage<O> psi_expand(const Word& f, const O& oracle) {
  std::size_t k = f.size();
  // suffix[i] = image of f[i..k)
  std::vector<typename O::element_type> suffix(k + 1, oracle.identity());
  for (std::size_t i = k; i-- > 0;)
    suffix[i] = oracle.multiply(oracle.image(f[i]), suffix[i + 1]);
  WreathImage<O> img{{suffix[0], f}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    Letter l = f[i];
    std::size_t at = l.is_inverse() ? i : i + 1;
    TailLetter<O> t{l.generator(), {suffix[at], f.subword(at, k)}, oracle.key(suffix[at]), l.sign()};
    impl::push_tail(img.tail, std::move(t));
  }
  return img;
}

/// Image of the product, computed from the factors' images.
template <GroupOracle O>
WreathImage<O> multiply(const WreathImage<O>& a, const WreathImage<O>& b, const O& oracle) {
  WreathImage<O> out{{oracle.multiply(a.g_part.value, b.g_part.value), a.g_part.preimage * b.g_part.preimage}, {}};
  for (const TailLetter<O>& t : a.tail) {
    auto g = oracle.multiply(t.index.value, b.g_part.value);
    std::string key = oracle.key(g);
    impl::push_tail(out.tail, {t.generator, {std::move(g), t.index.preimage * b.g_part.preimage}, std::move(key), t.exponent});
  }
  for (const TailLetter<O>& t : b.tail)
    impl::push_tail(out.tail, t);
  return out;
}

/// Conjugation by g in the semidirect product, for an image lying in W:
/// every second component is multiplied by g on the right.
template <GroupOracle O>
WreathImage<O> shift(const WreathImage<O>& a, const GElem<O>& g, const O& oracle) {
  if (!is_identity(oracle, a.g_part.value))
    fail(ErrorKind::internal, "wreath", "shift applied to an image outside W");
  WreathImage<O> out{a.g_part, {}};
  for (const TailLetter<O>& t : a.tail) {
    auto h = oracle.multiply(t.index.value, g.value);
    std::string key = oracle.key(h);
    out.tail.push_back({t.generator, {std::move(h), t.index.preimage * g.preimage}, std::move(key), t.exponent});
  }
  return out;
}

/// Tail as a word over consecutive variable ids, one per distinct bi-index in
/// order of first appearance.
template <GroupOracle O>
Word tail_word(const std::vector<TailLetter<O>>& tail) {
  std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> ids;
  std::vector<Letter> letters;
  for (const TailLetter<O>& t : tail) {
    auto [it, inserted] = ids.try_emplace({t.generator, t.key}, static_cast<std::uint32_t>(ids.size()));
    letters.emplace_back(it->second, t.exponent < 0);
  }
  return Word::reduce(letters);
}

template <GroupOracle O>
std::string tail_to_string(const std::vector<TailLetter<O>>& tail, const Alphabet& alphabet) {
  if (tail.empty())
    return "1";
  std::string out;
  for (const TailLetter<O>& t : tail) {
    if (!out.empty())
      out += '*';
    out += "a(" + alphabet.name(t.generator) + "," + t.key + ")";
    if (t.exponent < 0)
      out += "^-1";
  }
  return out;
}

/// Distinct second components of the tail, in order of appearance.
template <GroupOracle O>
std::vector<GElem<O>> support(const WreathImage<O>& img) {
  std::vector<GElem<O>> out;
  std::set<std::string> seen;
  for (const TailLetter<O>& t : img.tail)
    if (seen.insert(t.key).second)
      out.push_back(t.index);
  return out;
}

/// f in gamma_{c+1}(L): trivial G-part and trivial Magnus image of the tail
/// truncated at degree c.
template <GroupOracle O>
bool gamma_membership(const Word& f, const O& oracle, unsigned c) {
  if (!oracle.exact())
    fail(ErrorKind::refused, "wreath", "gamma membership needs an exact backend");
  WreathImage<O> img = psi_expand(f, oracle);
  if (!is_identity(oracle, img.g_part.value))
    return false;
  return magnus(tail_word(img.tail), c).is_identity();
}

template <GroupOracle O>
struct ZSet {
  std::vector<GElem<O>> elements;

  bool contains(const typename O::element_type& g, const O& oracle) const {
    for (const GElem<O>& z : elements)
      if (oracle.equal(g, z.value) != Tri::no)
        return true;
    return false;
  }
};

template <GroupOracle O>
void add_to_z(ZSet<O>& z, GElem<O> g, const O& oracle) {
  std::string key = oracle.key(g.value);
  for (GElem<O>& e : z.elements)
    if (oracle.key(e.value) == key) {
      if (g.preimage < e.preimage)
        e.preimage = std::move(g.preimage);
      return;
    }
  z.elements.push_back(std::move(g));
}

/// Identity plus every quotient h g^-1 of two support elements across all
/// tails of Y. Closed under inverses since the pairs range both ways.
template <GroupOracle O>
ZSet<O> z_from(const std::vector<Word>& y, const O& oracle, unsigned c, const Alphabet& alphabet) {
  ZSet<O> z;
  add_to_z(z, {oracle.identity(), Word()}, oracle);
  std::vector<GElem<O>> supp;
  for (const Word& w : y) {
    if (!gamma_membership(w, oracle, c))
      fail(ErrorKind::input, "z_from",
           "Y element " + to_string(w, alphabet) + " is not in gamma_" + std::to_string(c + 1) + "(L)");
    for (GElem<O>& g : support(psi_expand(w, oracle)))
      supp.push_back(std::move(g));
  }
  for (const GElem<O>& h : supp)
    for (const GElem<O>& g : supp)
      add_to_z(z, {oracle.multiply(h.value, oracle.invert(g.value)), h.preimage * g.preimage.inverse()}, oracle);
  return z;
}

/// First g in breadth-first order such that every quotient h h'^-1 with h in
/// the support of u shifted by g and h' in the support of v is definitely
/// outside Z.
template <GroupOracle O>
GElem<O> find_shift(const WreathImage<O>& u, const WreathImage<O>& v, const ZSet<O>& z, const O& oracle,
                    std::size_t rank, std::size_t budget) {
  std::vector<GElem<O>> su = support(u), sv = support(v);
  if (su.empty() || sv.empty())
    fail(ErrorKind::input, "find_shift", "empty support");
  CayleyEnumerator<O> walk(oracle, rank);
  for (std::size_t tried = 0; tried < budget; ++tried) {
    auto next = walk.next();
    if (!next)
      fail(ErrorKind::refused, "find_shift", "backend group is finite; no separating shift exists");
    bool ok = true;
    for (const GElem<O>& h : su) {
      auto hg = oracle.multiply(h.value, next->element);
      for (const GElem<O>& h2 : sv)
        if (z.contains(oracle.multiply(hg, oracle.invert(h2.value)), oracle)) {
          ok = false;
          break;
        }
      if (!ok)
        break;
    }
    if (ok)
      return {std::move(next->element), std::move(next->preimage)};
  }
  fail(ErrorKind::limit, "find_shift", "enumeration budget of " + std::to_string(budget) + " elements exhausted");
}

struct Lemma2Verdict {
  bool distant = false;       // (i) cross supports pairwise Z-distant
  bool u_nontrivial = false;  // (ii) Magnus image of the shifted u tail
  bool v_nontrivial = false;  // (iii) Magnus image of the v tail
  std::string failure;        // first failing hypothesis, empty on success

  bool passed() const { return distant && u_nontrivial && v_nontrivial; }
};

template <GroupOracle O>
Lemma2Verdict lemma2_certify(const WreathImage<O>& u_shifted, const WreathImage<O>& v, const ZSet<O>& z,
                             unsigned c, const O& oracle) {
  Lemma2Verdict r;
  r.distant = true;
  for (const GElem<O>& h : support(u_shifted))
    for (const GElem<O>& h2 : support(v)) {
      auto q = oracle.multiply(h.value, oracle.invert(h2.value));
      if (z.contains(q, oracle) && r.distant) {
        r.distant = false;
        r.failure = "(i) quotient " + oracle.key(q) + " of support elements lies in Z";
      }
    }
  if (support(u_shifted).empty() || support(v).empty()) {
    r.distant = false;
    r.failure = "(i) empty support";
  }
  r.u_nontrivial = !magnus(tail_word(u_shifted.tail), c).is_identity();
  r.v_nontrivial = !magnus(tail_word(v.tail), c).is_identity();
  if (r.failure.empty() && !r.u_nontrivial)
    r.failure = "(ii) u tail is trivial at class " + std::to_string(c);
  if (r.failure.empty() && !r.v_nontrivial)
    r.failure = "(iii) v tail is trivial at class " + std::to_string(c);
  return r;
}

/// Rewriter for compute_class over an oracle: members of L go to their tails.
template <GroupOracle O>
std::function<Word(const Word&)> tail_rewriter(const O& oracle, const Alphabet& alphabet) {
  return [&oracle, &alphabet](const Word& w) {
    WreathImage<O> img = psi_expand(w, oracle);
    if (!is_identity(oracle, img.g_part.value))
      fail(ErrorKind::input, "class", to_string(w, alphabet) + " does not lie in L");
    return tail_word(img.tail);
  };
}

struct ZEntry {
  std::string key;
  Word preimage;
};

/// Proof that omega = [u^f, v] lies in [M,N] but not in the normal closure
/// of Y. Plain data, so it serializes and rechecks without the producing
/// oracle.
struct Witness {
  std::string backend;
  MNPresentation input;
  std::vector<Word> y;
  Word u, v;
  bool swapped = false;  // u taken from N and v from M
  unsigned c = 1;
  Word f;
  std::string g;  // oracle key of the image of f
  Word omega;
  std::vector<ZEntry> z;
  Lemma2Verdict verdict;
  std::string u_tail, v_tail;  // shifted u tail and v tail, for display
};

struct WitnessOptions {
  std::size_t budget = 100000;  // shift candidates
};

namespace impl {

template <GroupOracle O>
const Word& pick_nontrivial(const std::vector<Word>& side, const O& oracle, unsigned c, const char* label) {
  for (const Word& w : side)
    if (!magnus(tail_word(psi_expand(w, oracle).tail), c).is_identity())
      return w;
  fail(ErrorKind::internal, "witness",
       std::string("no ") + label + "-side generator escapes gamma_" + std::to_string(c + 1) + "(L)");
}

template <GroupOracle O>
std::vector<ZEntry> z_entries(const ZSet<O>& z, const O& oracle) {
  std::vector<ZEntry> out;
  for (const GElem<O>& e : z.elements)
    out.push_back({oracle.key(e.value), e.preimage});
  return out;
}

} // namespace impl

template <GroupOracle O>
Witness theorem1_witness(const MNPresentation& in, const std::vector<Word>& y, const O& oracle,
                         const WitnessOptions& opt = {}) {
  if (!oracle.exact())
    fail(ErrorKind::refused, "witness", "backend is not exact");
  if (oracle.infinite() == Tri::no)
    fail(ErrorKind::refused, "witness", "backend group " + oracle.describe() + " is finite");
  check_consistent(oracle, in.presentation());
  const Alphabet& alpha = in.alphabet;

  ClassResult cls = compute_class(in.m, in.n, tail_rewriter(oracle, alpha));
  const std::vector<Word>& side_u = cls.swapped ? in.n : in.m;
  const std::vector<Word>& side_v = cls.swapped ? in.m : in.n;

  Witness w;
  w.backend = oracle.describe();
  w.input = in;
  w.y = y;
  w.c = cls.c;
  w.swapped = cls.swapped;
  w.u = impl::pick_nontrivial(side_u, oracle, w.c, "M");
  w.v = impl::pick_nontrivial(side_v, oracle, w.c, "N");

  ZSet<O> z = z_from(y, oracle, w.c, alpha);
  WreathImage<O> ui = psi_expand(w.u, oracle), vi = psi_expand(w.v, oracle);
  GElem<O> g = find_shift(ui, vi, z, oracle, alpha.size(), opt.budget);
  WreathImage<O> us = shift(ui, g, oracle);

  w.f = g.preimage;
  w.g = oracle.key(g.value);
  w.omega = commutator(conjugate(w.u, w.f), w.v);
  w.z = impl::z_entries(z, oracle);
  w.verdict = lemma2_certify(us, vi, z, w.c, oracle);
  w.u_tail = tail_to_string(us.tail, alpha);
  w.v_tail = tail_to_string(vi.tail, alpha);
  if (!w.verdict.passed())
    fail(ErrorKind::verification, "lemma2", w.verdict.failure);
  return w;
}

/// Re-validates a witness from its recorded data alone: rebuilds the backend,
/// recomputes class, Z and the three hypotheses, and compares. Returns the
/// list of discrepancies (empty when the witness stands).
inline std::vector<std::string> recheck_witness(const Witness& w) {
  std::vector<std::string> problems;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok)
      problems.push_back(what);
  };
  const Alphabet& alpha = w.input.alphabet;
  w.input.validate();
  const std::vector<Word>& side_u = w.swapped ? w.input.n : w.input.m;
  const std::vector<Word>& side_v = w.swapped ? w.input.m : w.input.n;
  expect(std::find(side_u.begin(), side_u.end(), w.u) != side_u.end(), "u is not a listed normal generator");
  expect(std::find(side_v.begin(), side_v.end(), w.v) != side_v.end(), "v is not a listed normal generator");
  expect(w.omega == commutator(conjugate(w.u, w.f), w.v), "omega is not [u^f, v]");

  auto body = [&](const auto& oracle) {
    using O = std::decay_t<decltype(oracle)>;
    expect(oracle.infinite() != Tri::no, "backend group is finite");
    ClassResult cls = compute_class(w.input.m, w.input.n, tail_rewriter(oracle, alpha));
    expect(cls.c == w.c, "class mismatch: recomputed " + std::to_string(cls.c));
    expect(cls.swapped == w.swapped, "orientation mismatch");
    if (cls.c != w.c)
      return 0;

    ZSet<O> z = z_from(w.y, oracle, w.c, alpha);
    std::set<std::string> keys, recorded;
    for (const GElem<O>& e : z.elements)
      keys.insert(oracle.key(e.value));
    for (const ZEntry& e : w.z) {
      recorded.insert(e.key);
      expect(oracle.key(map_word(oracle, e.preimage)) == e.key,
             "Z entry " + e.key + " does not match its preimage");
    }
    expect(keys == recorded, "Z differs from the recomputed support closure");

    GElem<O> g{map_word(oracle, w.f), w.f};
    expect(oracle.key(g.value) == w.g, "recorded shift does not match the image of f");
    WreathImage<O> us = shift(psi_expand(w.u, oracle), g, oracle);
    WreathImage<O> vi = psi_expand(w.v, oracle);
    Lemma2Verdict v = lemma2_certify(us, vi, z, w.c, oracle);
    expect(v.distant == w.verdict.distant, "verdict (i) differs");
    expect(v.u_nontrivial == w.verdict.u_nontrivial, "verdict (ii) differs");
    expect(v.v_nontrivial == w.verdict.v_nontrivial, "verdict (iii) differs");
    expect(v.passed(), v.failure.empty() ? "hypotheses fail" : v.failure);
    return 0;
  };
  // refusals from the backend or from z_from are findings about the witness
  try {
    with_backend(w.backend, w.input.presentation(), body);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::internal || e.kind() == ErrorKind::limit)
      throw;
    problems.push_back(e.what());
  }
  return problems;
}

} // namespace fpmn

#endif // FPMN_WREATH_HPP_
