#include <catch_amalgamated.hpp>

#include "fpmn/serialize.hpp"

using namespace fpmn;

namespace {

const Alphabet xy({"x", "y"});

Word W(const char* s) { return parse_word(s, xy); }

MNPresentation mn(const char* m, const char* n) {
  return {xy, parse_word_list(m, xy), parse_word_list(n, xy)};
}

CertificateDocument e2_document(const char* f) {
  MNPresentation in = mn("x", "y^2");
  Lemma1Context ctx = Lemma1Context::build(in);
  return {in, ctx.relators.relators, ctx.lifted.m_gens[1], W(f), ctx.lifted.n_gens[0],
          derive_certificate(ctx, 1, W(f), 0)};
}

Witness e3_witness() {
  return theorem1_witness(mn("x", "x"), {W("[x^y, x]")}, FreeImageOracle::parse("x->1,y->t", xy));
}

} // namespace

TEST_CASE("certificate documents round trip byte for byte", "[serialize]") {
  for (const char* f : {"1", "y^3", "x^2 y^-1 x", "y^-5 x y^2"}) {
    CertificateDocument d = e2_document(f);
    std::string text = to_json(d).dump(2);
    CertificateDocument back = certificate_from_json(Json::parse(text));
    CHECK(to_json(back).dump(2) == text);
    CHECK(back.certificate.steps.size() == d.certificate.steps.size());
    CHECK(recheck_certificate(back).empty());
  }
}

TEST_CASE("tampered certificates are rejected", "[serialize]") {
  Json good = to_json(e2_document("y^3"));
  REQUIRE(good["steps"].size() >= 2);

  Json j = good;
  j["steps"][0]["exp"] = -j["steps"][0]["exp"].get<int>();
  CHECK_FALSE(recheck_certificate(certificate_from_json(j)).empty());

  j = good;
  j["steps"].erase(j["steps"].size() - 1);
  CHECK_FALSE(recheck_certificate(certificate_from_json(j)).empty());

  j = good;
  j["f"] = "y^2";
  CHECK_FALSE(recheck_certificate(certificate_from_json(j)).empty());

  // consistent target and steps, but m is not a conjugate of x
  CertificateDocument d = e2_document("y");
  d.m = W("x^2");
  d.certificate.target = commutator(conjugate(d.m, d.f), d.n);
  d.certificate.steps = {{Word(), 0, 1}};
  d.relators = {d.certificate.target};
  auto problems = recheck_certificate(d);
  CHECK(problems.size() >= 2);

  j = good;
  j["relators"][0] = "x";
  CHECK_FALSE(recheck_certificate(certificate_from_json(j)).empty());

  j = good;
  j["steps"][0]["rel"] = 40;
  CHECK_FALSE(recheck_certificate(certificate_from_json(j)).empty());
}

TEST_CASE("malformed documents are input errors", "[serialize]") {
  Json good = to_json(e2_document("y"));
  auto expect_input = [](const Json& j) {
    try {
      certificate_from_json(j);
      FAIL("expected an input error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::input);
    }
  };
  Json j = good;
  j.erase("target");
  expect_input(j);
  j = good;
  j["kind"] = "witness";
  expect_input(j);
  j = good;
  j["steps"][0]["rel"] = -1;
  expect_input(j);
  j = good;
  j["m"] = "z";
  expect_input(j);
  j = good;
  j["steps"] = "none";
  expect_input(j);
}

TEST_CASE("witness documents round trip byte for byte", "[serialize]") {
  Witness w = e3_witness();
  std::string text = to_json(w).dump(2);
  Witness back = witness_from_json(Json::parse(text));
  CHECK(to_json(back).dump(2) == text);
  CHECK(recheck_witness(back).empty());

  Json j = Json::parse(text);
  CHECK(j["backend"] == "free:x->1,y->t");
  CHECK(j["omega"] == "y^-2*x^-1*y^2*x^-1*y^-2*x*y^2*x");
  CHECK(j["Z"].size() == 3);
}

TEST_CASE("tampered witnesses are rejected", "[serialize]") {
  Json good = to_json(e3_witness());

  Json j = good;
  j["Z"].erase(j["Z"].size() - 1);
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["class"] = 2;
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["omega"] = "[x^y, x]";
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["checks"]["distant"] = false;
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["f"] = "y";
  j["g"] = "t";
  j["omega"] = "[x^y, x]";
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["u"] = "x^2";
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());

  j = good;
  j["backend"] = "free:x->s,y->t";
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());
  j = good;
  j["backend"] = "cyclic";
  CHECK_FALSE(recheck_witness(witness_from_json(j)).empty());
}
