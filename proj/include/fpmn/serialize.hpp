// JSON forms of certificates and witnesses. Words are stored in the text
// syntax of parse.hpp; since words are kept reduced, a parse/print round
// trip is the identity and documents reproduce byte for byte.

#ifndef FPMN_SERIALIZE_HPP_
#define FPMN_SERIALIZE_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "lemma1.hpp"
#include "parse.hpp"
#include "presentation.hpp"
#include "wreath.hpp"
#include "words.hpp"

namespace fpmn {

using Json = nlohmann::ordered_json;

/// A certificate with the context needed to check it on its own.
struct CertificateDocument {
  MNPresentation input;
  std::vector<Word> relators;
  Word m, f, n;
  Certificate certificate;
};

namespace impl {

inline Json words_json(const std::vector<Word>& ws, const Alphabet& a) {
  Json out = Json::array();
  for (const Word& w : ws)
    out.push_back(to_string(w, a));
  return out;
}

inline Json input_json(const MNPresentation& p) {
  return Json{{"generators", p.alphabet.names()},
              {"M", words_json(p.m, p.alphabet)},
              {"N", words_json(p.n, p.alphabet)}};
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::input, "json", std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, "json", std::string("field '") + key + "': " + e.what());
  }
}

inline Word word_field(const Json& j, const char* key, const Alphabet& a) {
  return parse_word(field<std::string>(j, key), a);
}

inline std::vector<Word> words_field(const Json& j, const char* key, const Alphabet& a) {
  std::vector<Word> out;
  for (const std::string& s : field<std::vector<std::string>>(j, key))
    out.push_back(parse_word(s, a));
  return out;
}

inline MNPresentation input_from_json(const Json& j) {
  MNPresentation p;
  p.alphabet = Alphabet(field<std::vector<std::string>>(j, "generators"));
  p.m = words_field(j, "M", p.alphabet);
  p.n = words_field(j, "N", p.alphabet);
  p.validate();
  return p;
}

} // namespace impl

inline Json to_json(const CertificateDocument& d) {
  const Alphabet& a = d.input.alphabet;
  Json steps = Json::array();
  for (const CertificateStep& s : d.certificate.steps)
    steps.push_back(Json{{"conj", to_string(s.conjugator, a)}, {"rel", s.relator}, {"exp", s.exponent}});
  Json j = impl::input_json(d.input);
  j = Json{{"kind", "certificate"}, {"generators", j["generators"]}, {"M", j["M"]}, {"N", j["N"]},
           {"relators", impl::words_json(d.relators, a)},
           {"m", to_string(d.m, a)}, {"f", to_string(d.f, a)}, {"n", to_string(d.n, a)},
           {"target", to_string(d.certificate.target, a)},
           {"steps", std::move(steps)}};
  return j;
}

inline CertificateDocument certificate_from_json(const Json& j) {
  if (impl::field<std::string>(j, "kind") != "certificate")
    fail(ErrorKind::input, "json", "not a certificate document");
  CertificateDocument d;
  d.input = impl::input_from_json(j);
  const Alphabet& a = d.input.alphabet;
  d.relators = impl::words_field(j, "relators", a);
  d.m = impl::word_field(j, "m", a);
  d.f = impl::word_field(j, "f", a);
  d.n = impl::word_field(j, "n", a);
  d.certificate.target = impl::word_field(j, "target", a);
  Json steps = impl::field<Json>(j, "steps");
  if (!steps.is_array())
    fail(ErrorKind::input, "json", "steps must be an array");
  for (const Json& s : steps) {
    auto rel = impl::field<long long>(s, "rel");
    if (rel < 0)
      fail(ErrorKind::input, "json", "negative relator index");
    d.certificate.steps.push_back(
        {impl::word_field(s, "conj", a), static_cast<std::size_t>(rel), impl::field<int>(s, "exp")});
  }
  return d;
}

/// Checks a certificate document from scratch: the step product must freely
/// equal the target, the target must be [m^f, n], m and n must be conjugates
/// of listed normal generators from M and N, and the relator list must be the
/// one recomputed from M and N. Returns the discrepancies.
inline std::vector<std::string> recheck_certificate(const CertificateDocument& d,
                                                    const EnumerationOptions& enum_opt = {},
                                                    const SaturationOptions& sat_opt = {}) {
  std::vector<std::string> problems;
  const Alphabet& a = d.input.alphabet;
  auto conjugate_of = [](const Word& w, const std::vector<Word>& side) {
    Word core = cyclic_reduce(w).core;
    for (const Word& s : side) {
      Word sc = cyclic_reduce(s).core;
      if (sc.size() != core.size())
        continue;
      for (std::size_t r = 0; r < sc.size(); ++r)
        if (sc.subword(r, sc.size()) * sc.subword(0, r) == core)
          return true;
    }
    return false;
  };
  try {
    Word product = evaluate_certificate(d.certificate, d.relators);
    if (product != d.certificate.target)
      problems.push_back("step product " + to_string(product, a) + " differs from the target");
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  if (d.certificate.target != commutator(conjugate(d.m, d.f), d.n))
    problems.push_back("target is not [m^f, n]");
  if (!conjugate_of(d.m, d.input.m))
    problems.push_back("m is not a conjugate of an M generator");
  if (!conjugate_of(d.n, d.input.n))
    problems.push_back("n is not a conjugate of an N generator");
  Lemma1Context ctx = Lemma1Context::build(d.input, enum_opt, sat_opt);
  if (ctx.relators.relators != d.relators)
    problems.push_back("relator list differs from the one presented by M and N");
  return problems;
}

inline Json to_json(const Witness& w) {
  const Alphabet& a = w.input.alphabet;
  Json z = Json::array();
  for (const ZEntry& e : w.z)
    z.push_back(Json{{"key", e.key}, {"preimage", to_string(e.preimage, a)}});
  Json in = impl::input_json(w.input);
  return Json{{"kind", "witness"},
              {"backend", w.backend},
              {"generators", in["generators"]},
              {"M", in["M"]},
              {"N", in["N"]},
              {"Y", impl::words_json(w.y, a)},
              {"class", w.c},
              {"swapped", w.swapped},
              {"u", to_string(w.u, a)},
              {"v", to_string(w.v, a)},
              {"f", to_string(w.f, a)},
              {"g", w.g},
              {"omega", to_string(w.omega, a)},
              {"Z", std::move(z)},
              {"u_tail", w.u_tail},
              {"v_tail", w.v_tail},
              {"checks", Json{{"distant", w.verdict.distant},
                              {"u_nontrivial", w.verdict.u_nontrivial},
                              {"v_nontrivial", w.verdict.v_nontrivial}}}};
}

inline Witness witness_from_json(const Json& j) {
  if (impl::field<std::string>(j, "kind") != "witness")
    fail(ErrorKind::input, "json", "not a witness document");
  Witness w;
  w.input = impl::input_from_json(j);
  const Alphabet& a = w.input.alphabet;
  w.backend = impl::field<std::string>(j, "backend");
  w.y = impl::words_field(j, "Y", a);
  w.c = impl::field<unsigned>(j, "class");
  w.swapped = impl::field<bool>(j, "swapped");
  w.u = impl::word_field(j, "u", a);
  w.v = impl::word_field(j, "v", a);
  w.f = impl::word_field(j, "f", a);
  w.g = impl::field<std::string>(j, "g");
  w.omega = impl::word_field(j, "omega", a);
  for (const Json& e : impl::field<Json>(j, "Z"))
    w.z.push_back({impl::field<std::string>(e, "key"), impl::word_field(e, "preimage", a)});
  w.u_tail = impl::field<std::string>(j, "u_tail");
  w.v_tail = impl::field<std::string>(j, "v_tail");
  Json checks = impl::field<Json>(j, "checks");
  w.verdict.distant = impl::field<bool>(checks, "distant");
  w.verdict.u_nontrivial = impl::field<bool>(checks, "u_nontrivial");
  w.verdict.v_nontrivial = impl::field<bool>(checks, "v_nontrivial");
  return w;
}

} // namespace fpmn

#endif // FPMN_SERIALIZE_HPP_
