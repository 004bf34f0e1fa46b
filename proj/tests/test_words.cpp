#include <catch_amalgamated.hpp>

#include <random>

#include "fpmn/parse.hpp"
#include "fpmn/words.hpp"

using namespace fpmn;

namespace {

const Alphabet xy({"x", "y"});

Word W(const char* s) { return parse_word(s, xy); }

Letter X(int sign = 1) { return Letter(0, sign < 0); }
Letter Y(int sign = 1) { return Letter(1, sign < 0); }

} // namespace

TEST_CASE("reduce cancels adjacent inverse pairs", "[words]") {
  CHECK(Word::reduce({X(), X(-1), Y()}) == Word(Y()));
  CHECK(Word::reduce(std::initializer_list<Letter>{}).is_identity());
  CHECK(Word::reduce({Y(-1), X(), X(-1), Y()}).is_identity());
}

TEST_CASE("products and inverses", "[words]") {
  CHECK((W("x") * W("x^-1")).is_identity());
  CHECK(W("xy").inverse() == W("y^-1 x^-1"));
  CHECK(W("xy") * W("y^-1") == W("x"));
}

TEST_CASE("conjugation is f^-1 u f", "[words]") {
  CHECK(conjugate(W("x"), W("y")) == W("y^-1 x y"));
  CHECK(conjugate(W("x"), Word()) == W("x"));
  CHECK(conjugate(W("y^-1 x y"), W("y^-1")) == W("x"));
  CHECK(W("x^y") == W("y^-1 x y"));
}

TEST_CASE("commutator is u^-1 v^-1 u v, left-normalized", "[words]") {
  CHECK(commutator(W("x"), W("y")) == W("x^-1 y^-1 x y"));
  CHECK(commutator(W("x"), W("x")).is_identity());
  CHECK(commutator(W("x"), Word()).is_identity());
  std::vector<Word> terms{W("x"), W("y"), W("y")};
  CHECK(commutator(terms) == commutator(commutator(W("x"), W("y")), W("y")));
  CHECK(W("[x,y,y]") == W("[[x,y],y]"));
}

TEST_CASE("cyclic reduction", "[words]") {
  auto r = cyclic_reduce(W("y^-1 x y"));
  CHECK(r.core == W("x"));
  CHECK(r.conjugator == W("y"));
  CHECK(conjugate(r.core, r.conjugator) == W("y^-1 x y"));
  CHECK(cyclic_reduce(W("x")).conjugator.is_identity());
  CHECK(cyclic_reduce(Word()).core.is_identity());
}

TEST_CASE("group laws on random words", "[words]") {
  std::mt19937_64 rng(3);
  auto rw = [&] { return random_word(rng, 2, rng() % 13); };
  for (int i = 0; i < 500; ++i) {
    Word a = rw(), b = rw(), c = rw();
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(Word::reduce(a.letters()) == a);
  }
  for (int i = 0; i < 200; ++i) {
    Word u = rw(), f = rw();
    REQUIRE(u.inverse().inverse() == u);
    REQUIRE(conjugate(conjugate(u, f), f.inverse()) == u);
    REQUIRE(commutator(u, f) == commutator(f, u).inverse());
  }
}

TEST_CASE("random_word produces reduced words of the requested length", "[words]") {
  std::mt19937_64 rng(1);
  for (std::size_t len = 0; len < 20; ++len)
    CHECK(random_word(rng, 3, len).size() == len);
}

TEST_CASE("shortlex order", "[words]") {
  CHECK(W("y") < W("xx"));
  CHECK(W("x") < W("x^-1"));
  CHECK(W("x^-1") < W("y"));
  CHECK(Word() < W("x"));
}

TEST_CASE("printing and parsing round trip", "[words][parse]") {
  CHECK(to_string(W("x^-1 y^2"), xy) == "x^-1*y^2");
  CHECK(to_string(Word(), xy) == "1");
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, 2, rng() % 15);
    REQUIRE(parse_word(to_string(w, xy), xy) == w);
  }
}

TEST_CASE("parser syntax", "[parse]") {
  Alphabet a({"a", "b", "ab"});
  CHECK(parse_word("ab", a) == Word(Letter(2, false)));  // longest name wins
  CHECK(parse_word("a b", a) == parse_word("a*b", a));
  CHECK(W("(xy)^3") == W("xyxyxy"));
  CHECK(W("(xy)^-2") == W("y^-1 x^-1 y^-1 x^-1"));
  CHECK(W("x^(y^2)") == W("y^-2 x y^2"));
  CHECK(W("1") == Word());
  CHECK(parse_word_list("x, [x,y], y^2", xy).size() == 3);
  CHECK_THROWS_AS(W("z"), Error);
  CHECK_THROWS_AS(W("(x"), Error);
  CHECK_THROWS_AS(W("[x]"), Error);
}

TEST_CASE("exponent sums", "[words]") {
  CHECK(exponent_sums(W("x^3 y^-1 x^-1"), 2) == std::vector<long>{2, -1});
}
