#include <catch_amalgamated.hpp>

#include <random>

#include "fpmn/coset.hpp"
#include "support.hpp"

using namespace fpmn;
using fpmn::testing::make_presentation;

namespace {

std::vector<Presentation> finite_examples() {
  return {
      make_presentation({"a", "b"}, "a, b"),
      make_presentation({"x", "y"}, "x, y^2"),
      make_presentation({"x", "y"}, "x^2, y^2, (xy)^3"),
      make_presentation({"x", "y"}, "x^4, y^2, (xy)^2"),
      make_presentation({"x", "y"}, "x^2, y^3, (xy)^3"),
      make_presentation({"x", "y", "z"}, "x^2, y, z^3, [x,z]"),
  };
}

} // namespace

TEST_CASE("enumeration of small quotients", "[coset]") {
  CHECK(enumerate(make_presentation({"a", "b"}, "a, b")).size() == 1);
  CosetTable e2 = enumerate(make_presentation({"x", "y"}, "x, y^2"));
  REQUIRE(e2.complete());
  CHECK(e2.size() == 2);
  CHECK(enumerate(make_presentation({"x", "y"}, "x^2, y^2, (xy)^3")).size() == 6);
}

TEST_CASE("orders agree with permutation realizations", "[coset]") {
  for (const Presentation& p : finite_examples())
    CHECK(enumerate(p).size() == testing::permutation_realization_order(p));
}

TEST_CASE("every relator closes at every coset", "[coset]") {
  for (const Presentation& p : finite_examples()) {
    CosetTable t = enumerate(p);
    REQUIRE(t.complete());
    for (std::size_t c = 0; c < t.size(); ++c)
      for (const Word& r : p.relators)
        REQUIRE(t.trace(r, c) == c);
  }
}

TEST_CASE("infinite index overflows instead of looping", "[coset]") {
  CosetTable t = enumerate(make_presentation({"x", "y"}, "x"), 500);
  CHECK_FALSE(t.complete());
  CHECK_THROWS_AS(t.require_complete("test"), Error);
  try {
    t.require_complete("test");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::limit);
  }
}

TEST_CASE("transversal is BFS shortlex and prefix closed", "[coset]") {
  Presentation e2 = make_presentation({"x", "y"}, "x, y^2");
  Transversal tr = transversal(enumerate(e2));
  REQUIRE(tr.size() == 2);
  CHECK(tr[0].is_identity());
  CHECK(tr[1] == parse_word("y", e2.alphabet));

  CHECK(transversal(enumerate(make_presentation({"a", "b"}, "a, b"))).size() == 1);

  for (const Presentation& p : finite_examples()) {
    CosetTable t = enumerate(p);
    Transversal r = transversal(t);
    for (std::size_t k = 0; k < r.size(); ++k) {
      REQUIRE(coset_of(t, r[k]) == k);
      if (k > 0) {
        Word prefix = r[k].subword(0, r[k].size() - 1);
        bool found = false;
        for (std::size_t j = 0; j < r.size(); ++j)
          found = found || r[j] == prefix;
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("coset_of traces words", "[coset]") {
  Presentation e2 = make_presentation({"x", "y"}, "x, y^2");
  CosetTable t = enumerate(e2);
  CHECK(coset_of(t, Word()) == 0);
  CHECK(coset_of(t, parse_word("y^3", e2.alphabet)) == 1);
  CHECK(coset_of(t, parse_word("x y^2", e2.alphabet)) == 0);
}

TEST_CASE("Schreier rewriting", "[coset]") {
  Presentation e2 = make_presentation({"x", "y"}, "x, y^2");
  const Alphabet& a = e2.alphabet;
  CosetTable t = enumerate(e2);
  Transversal tr = transversal(t);
  SchreierBasis basis(t, tr);
  // basis over the transversal {1, y}: x, y x y^-1, y^2
  REQUIRE(basis.size() == 3);
  CHECK(rewrite_in_subgroup(t, tr, Word()).is_identity());

  Word y2 = basis.rewrite(parse_word("y^2", a));
  REQUIRE(y2.size() == 1);
  CHECK(basis.element(y2[0].generator()) == parse_word("y^2", a));

  // y^-1 x y = (y^2)^-1 (y x y^-1) (y^2) over this basis
  Word conj = basis.rewrite(parse_word("y^-1 x y", a));
  CHECK(conj.size() == 3);
  CHECK(basis.evaluate(conj) == parse_word("y^-1 x y", a));
  CHECK_THROWS_AS(basis.rewrite(parse_word("y", a)), Error);
}

TEST_CASE("rewriting round trip on random members of L", "[coset]") {
  std::mt19937_64 rng(17);
  for (const Presentation& p : finite_examples()) {
    CosetTable t = enumerate(p);
    Transversal tr = transversal(t);
    SchreierBasis basis(t, tr);
    for (int i = 0; i < 100; ++i) {
      Word f = random_word(rng, p.alphabet.size(), rng() % 12);
      Word w = f * tr[coset_of(t, f)].inverse();
      REQUIRE(coset_of(t, w) == 0);
      REQUIRE(basis.evaluate(basis.rewrite(w)) == w);
    }
  }
}

TEST_CASE("Schreier basis has rank 1 + n(r - 1)", "[coset]") {
  for (const Presentation& p : finite_examples()) {
    CosetTable t = enumerate(p);
    SchreierBasis basis(t, transversal(t));
    CHECK(basis.size() == 1 + t.size() * (p.alphabet.size() - 1));
  }
}

TEST_CASE("enumeration without lookahead agrees", "[coset]") {
  EnumerationOptions opt;
  opt.lookahead = false;
  for (const Presentation& p : finite_examples())
    CHECK(enumerate(p, opt).size() == enumerate(p).size());
}
