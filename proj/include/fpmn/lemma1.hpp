// Finite presentation of F/[M,N] when L = MN has finite index.
//
// With M1 <= M and N1 <= N finitely generated, generating L, and normally
// generating M and N, the relators [m^h, n] over generators m of M1, n of N1
// and coset representatives h of L normally generate [M,N]. Certificates make
// the induction behind that claim explicit: each one lists conjugates of
// relators whose product freely equals a requested [m^f, n].

#ifndef FPMN_LEMMA1_HPP_
#define FPMN_LEMMA1_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coset.hpp"
#include "error.hpp"
#include "presentation.hpp"
#include "stallings.hpp"
#include "words.hpp"

namespace fpmn {

enum class Side { m, n };

/// How a lifted generator was obtained: conjugate(source word, conjugator).
struct Provenance {
  Side side;
  std::size_t source;  // index into A (side m) or B (side n)
  Word conjugator;
};

struct LiftedGenerators {
  std::vector<Word> m_gens;
  std::vector<Word> n_gens;
  std::vector<Provenance> m_provenance;
  std::vector<Provenance> n_provenance;
  std::size_t rounds = 0;

  /// m_gens followed by n_gens; the input order of the subgroup graph.
  std::vector<Word> all() const {
    std::vector<Word> out = m_gens;
    out.insert(out.end(), n_gens.begin(), n_gens.end());
    return out;
  }
};

struct SaturationOptions {
  std::size_t max_rounds = 6;
};

/// Finds generators of M1 and N1. Round 0 takes every a^h and b^h over the
/// transversal; each later round conjugates all current generators by the
/// Schreier basis of L (both signs). Generators already in the span are
/// skipped, except that A and B themselves are always kept so the normal
/// closures stay M and N. Stops once the span equals L.
inline LiftedGenerators saturate(const std::vector<Word>& a, const std::vector<Word>& b,
                                 const CosetTable& table, const Transversal& tr,
                                 const SchreierBasis& basis, const SaturationOptions& opt = {}) {
  table.require_complete("saturate");
  LiftedGenerators lg;
  SubgroupGraph span = SubgroupGraph::build({});
  const SubgroupGraph target = SubgroupGraph::from_coset_table(table, basis);

  auto add = [&](Side side, const Word& w, Provenance prov, bool force) {
    if (w.is_identity())
      return;
    auto& gens = side == Side::m ? lg.m_gens : lg.n_gens;
    if (std::find(gens.begin(), gens.end(), w) != gens.end())
      return;
    if (!force && span.contains(w))
      return;
    gens.push_back(w);
    (side == Side::m ? lg.m_provenance : lg.n_provenance).push_back(std::move(prov));
    span.add_generator(w);
  };

  for (std::size_t i = 0; i < a.size(); ++i)
    add(Side::m, a[i], {Side::m, i, {}}, true);
  for (std::size_t i = 0; i < b.size(); ++i)
    add(Side::n, b[i], {Side::n, i, {}}, true);
  for (std::size_t k = 1; k < tr.size(); ++k) {
    for (std::size_t i = 0; i < a.size(); ++i)
      add(Side::m, conjugate(a[i], tr[k]), {Side::m, i, tr[k]}, false);
    for (std::size_t i = 0; i < b.size(); ++i)
      add(Side::n, conjugate(b[i], tr[k]), {Side::n, i, tr[k]}, false);
  }

  while (!equals(span, target)) {
    if (lg.rounds == opt.max_rounds)
      fail(ErrorKind::limit, "saturate",
           "span still differs from L after " + std::to_string(opt.max_rounds) +
               " rounds (span rank " + std::to_string(span.rank()) + ", " +
               std::to_string(span.vertex_count()) + " vertices; L has rank " +
               std::to_string(target.rank()) + ")");
    ++lg.rounds;
    auto m_now = lg.m_gens;
    auto n_now = lg.n_gens;
    auto m_prov = lg.m_provenance;
    auto n_prov = lg.n_provenance;
    for (std::size_t s = 0; s < basis.size(); ++s)
      for (int sign : {1, -1}) {
        Word c = sign > 0 ? basis.element(s) : basis.element(s).inverse();
        for (std::size_t i = 0; i < m_now.size(); ++i)
          add(Side::m, conjugate(m_now[i], c),
              {Side::m, m_prov[i].source, m_prov[i].conjugator * c}, false);
        for (std::size_t i = 0; i < n_now.size(); ++i)
          add(Side::n, conjugate(n_now[i], c),
              {Side::n, n_prov[i].source, n_prov[i].conjugator * c}, false);
      }
  }
  return lg;
}

/// Relators [m^{h_k}, n], deduplicated by free equality.
struct RelatorSet {
  using Triple = std::array<std::size_t, 3>;  // (m index, coset k, n index)

  std::vector<Word> relators;
  std::vector<Triple> origin;  // first triple producing each relator
  /// Every formal triple -> position in `relators`, or nullopt when the
  /// commutator is freely trivial.
  std::map<Triple, std::optional<std::size_t>> index;

  std::size_t size() const { return relators.size(); }
  std::size_t formal_count() const { return index.size(); }
};

inline RelatorSet present(const LiftedGenerators& lg, const Transversal& tr) {
  RelatorSet r;
  std::unordered_map<Word, std::size_t, WordHash> seen;
  for (std::size_t m = 0; m < lg.m_gens.size(); ++m)
    for (std::size_t k = 0; k < tr.size(); ++k)
      for (std::size_t n = 0; n < lg.n_gens.size(); ++n) {
        Word w = commutator(conjugate(lg.m_gens[m], tr[k]), lg.n_gens[n]);
        RelatorSet::Triple t{m, k, n};
        if (w.is_identity()) {
          r.index[t] = std::nullopt;
          continue;
        }
        auto [it, inserted] = seen.emplace(w, r.relators.size());
        if (inserted) {
          r.relators.push_back(w);
          r.origin.push_back(t);
        }
        r.index[t] = it->second;
      }
  return r;
}

struct CertificateStep {
  Word conjugator;
  std::size_t relator;
  int exponent;  // +1 or -1

  friend bool operator==(const CertificateStep&, const CertificateStep&) = default;
};

/// Claims target == prod_i (relators[step_i.relator]^{step_i.conjugator})^{step_i.exponent}.
struct Certificate {
  Word target;
  std::vector<CertificateStep> steps;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Multiplies the certificate out by free reduction alone.
inline Word evaluate_certificate(const Certificate& c, const std::vector<Word>& relators) {
  Word product;
  for (const auto& s : c.steps) {
    if (s.relator >= relators.size())
      fail(ErrorKind::verification, "verify",
           "relator index " + std::to_string(s.relator) + " out of range");
    if (s.exponent != 1 && s.exponent != -1)
      fail(ErrorKind::verification, "verify", "exponent must be +1 or -1");
    Word r = conjugate(relators[s.relator], s.conjugator);
    product *= s.exponent > 0 ? r : r.inverse();
  }
  return product;
}

inline bool verify_certificate(const Certificate& c, const std::vector<Word>& relators) {
  return evaluate_certificate(c, relators) == c.target;
}

inline bool verify_certificate(const Certificate& c, const RelatorSet& r) {
  return verify_certificate(c, r.relators);
}

/// Everything derive_certificate needs, built once per presentation.
struct Lemma1Context {
  MNPresentation input;
  CosetTable table;
  Transversal transversal;
  std::vector<Word> schreier_basis;
  LiftedGenerators lifted;
  SubgroupGraph span;  // graph of m_gens ++ n_gens, histories over that order
  RelatorSet relators;

  static Lemma1Context build(const MNPresentation& p, const EnumerationOptions& enum_opt = {},
                             const SaturationOptions& sat_opt = {}) {
    p.validate();
    Lemma1Context ctx;
    ctx.input = p;
    ctx.table = enumerate(p.presentation(), enum_opt);
    ctx.table.require_complete("present");
    ctx.transversal = fpmn::transversal(ctx.table);
    SchreierBasis basis(ctx.table, ctx.transversal);
    ctx.schreier_basis = basis.elements();
    ctx.lifted = saturate(p.m, p.n, ctx.table, ctx.transversal, basis, sat_opt);
    ctx.span = SubgroupGraph::build(ctx.lifted.all());
    ctx.relators = present(ctx.lifted, ctx.transversal);
    return ctx;
  }
};

namespace impl {

inline Certificate conjugated(const Certificate& c, const Word& w) {
  Certificate out{conjugate(c.target, w), {}};
  out.steps.reserve(c.steps.size());
  for (const auto& s : c.steps)
    out.steps.push_back({s.conjugator * w, s.relator, s.exponent});
  return out;
}

inline Certificate inverted(const Certificate& c) {
  Certificate out{c.target.inverse(), {}};
  out.steps.reserve(c.steps.size());
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it)
    out.steps.push_back({it->conjugator, it->relator, -it->exponent});
  return out;
}

inline Certificate concat(const Certificate& a, const Certificate& b) {
  Certificate out{a.target * b.target, a.steps};
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

class CertificateBuilder {
public:
  CertificateBuilder(const Lemma1Context& ctx, std::size_t m, const Word& f, std::size_t max_steps)
    : ctx_(ctx), m_(m), max_steps_(max_steps) {
    coset_ = coset_of(ctx.table, f);
    const Word& h = ctx.transversal[coset_];
    Word w = h.inverse() * f;
    expr_ = ctx.span.express(w);
    // prefixes[j] = h u_1 ... u_j
    prefixes_.push_back(h);
    for (Letter u : expr_) {
      Word g = generator_word(u.generator());
      prefixes_.push_back(prefixes_.back() * (u.is_inverse() ? g.inverse() : g));
    }
    if (prefixes_.back() != f)
      fail(ErrorKind::internal, "certify", "decomposition f = h * u_1 ... u_s does not reproduce f");
    memo_.resize(expr_.size() + 1);
  }

  Certificate run(std::size_t n) { return cert(expr_.size(), n); }

private:
  bool is_m_side(std::uint32_t g) const { return g < ctx_.lifted.m_gens.size(); }

  const Word& generator_word(std::uint32_t g) const {
    const auto& lg = ctx_.lifted;
    return is_m_side(g) ? lg.m_gens[g] : lg.n_gens[g - lg.m_gens.size()];
  }

  Certificate relator_step(std::size_t m, std::size_t k, std::size_t n) const {
    const auto& r = ctx_.relators;
    Word target = commutator(conjugate(ctx_.lifted.m_gens[m], ctx_.transversal[k]),
                             ctx_.lifted.n_gens[n]);
    auto it = r.index.find({m, k, n});
    if (it == r.index.end())
      fail(ErrorKind::internal, "certify", "missing relator triple");
    if (!it->second)
      return {target, {}};
    return {target, {{Word(), *it->second, 1}}};
  }

  // [mu^e, n] for an m-side generator mu, from the untwisted relators
  Certificate base_commutator(std::size_t mu, bool inverse, std::size_t n) const {
    Certificate c = relator_step(mu, 0, n);
    if (!inverse)
      return c;
    // [p^-1, q] = ([p,q]^{p^-1})^-1
    return inverted(conjugated(c, ctx_.lifted.m_gens[mu].inverse()));
  }

  void budget(const Certificate& c) const {
    if (c.steps.size() > max_steps_)
      fail(ErrorKind::limit, "certify",
           "certificate exceeds " + std::to_string(max_steps_) + " steps");
  }

  // certificate for [m^{prefix_j}, n_gens[n]]
  const Certificate& cert(std::size_t j, std::size_t n) {
    auto found = memo_[j].find(n);
    if (found != memo_[j].end())
      return found->second;
    Certificate result;
    if (j == 0) {
      result = relator_step(m_, coset_, n);
    } else {
      Letter u = expr_[j - 1];
      Word p = conjugate(ctx_.lifted.m_gens[m_], prefixes_[j - 1]);
      const Word& nw = ctx_.lifted.n_gens[n];
      if (!is_m_side(u.generator())) {
        // m^f = p^{nu^e} = p c with c = [p, nu^e]; then
        // [p c, n] = [p, n]^c * c^-1 * c^n
        std::size_t nu = u.generator() - ctx_.lifted.m_gens.size();
        Certificate c = cert(j - 1, nu);
        if (u.is_inverse()) {
          // [p, q^-1] = ([p, q]^{q^-1})^-1
          c = inverted(conjugated(c, ctx_.lifted.n_gens[nu].inverse()));
        }
        const Certificate& pn = cert(j - 1, n);
        result = concat(concat(conjugated(pn, c.target), inverted(c)), conjugated(c, nw));
      } else {
        // m^f = a^-1 p a with a = mu^e; [a^-1 p a, n] = [p, a n a^-1]^a.
        // a n a^-1 = n d with d = [n, a^-1] = [a^-1, n]^-1, and
        // [p, n d] = (d^-1)^p * d * [p, n]^d
        std::size_t mu = u.generator();
        Word a = u.is_inverse() ? ctx_.lifted.m_gens[mu].inverse() : ctx_.lifted.m_gens[mu];
        Certificate d = inverted(base_commutator(mu, !u.is_inverse(), n));
        const Certificate& pn = cert(j - 1, n);
        Certificate inner =
            concat(concat(conjugated(inverted(d), p), d), conjugated(pn, d.target));
        result = conjugated(inner, a);
      }
    }
    budget(result);
    return memo_[j].emplace(n, std::move(result)).first->second;
  }

  const Lemma1Context& ctx_;
  std::size_t m_;
  std::size_t max_steps_;
  std::size_t coset_ = 0;
  Word expr_;
  std::vector<Word> prefixes_;
  std::vector<std::map<std::size_t, Certificate>> memo_;
};

} // namespace impl

/// Certificate for [m^f, n] with m = m_gens[m], n = n_gens[n], following the
/// induction on f = h_k u_1 ... u_s: an N-side letter is absorbed using the
/// certificate for (m, prefix, u_s), an M-side letter by conjugating n with
/// u_s and correcting through the untwisted relators [u_s, n].
inline Certificate derive_certificate(const Lemma1Context& ctx, std::size_t m, const Word& f,
                                      std::size_t n, std::size_t max_steps = 5'000'000) {
  if (m >= ctx.lifted.m_gens.size() || n >= ctx.lifted.n_gens.size())
    fail(ErrorKind::input, "certify", "generator index out of range");
  Certificate c = impl::CertificateBuilder(ctx, m, f, max_steps).run(n);
  Word expected = commutator(conjugate(ctx.lifted.m_gens[m], f), ctx.lifted.n_gens[n]);
  if (c.target != expected)
    fail(ErrorKind::internal, "certify", "derived target differs from [m^f, n]");
  return c;
}

} // namespace fpmn

#endif // FPMN_LEMMA1_HPP_
