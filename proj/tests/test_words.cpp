#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "sp6/words.hpp"

using namespace sp6;

TEST_CASE("parse_and_reduce") {
  CHECK(parse_and_reduce("Aa").empty());
  CHECK(parse_and_reduce("ABba").empty());
  CHECK(parse_and_reduce("aABbAb").letters() == "Ab");
  CHECK(parse_and_reduce("").empty());
  CHECK_THROWS_AS(parse_and_reduce("AxB"), InvalidWord);
  CHECK_THROWS_AS(parse_and_reduce("A1"), InvalidWord);
}

TEST_CASE("builtin witness words are reduced with lengths 93 and 49") {
  const auto c47 = *find_builtin("C-47");
  const auto c55 = *find_builtin("C-55");
  CHECK(c47.word.size() == 93);
  CHECK(c55.word.size() == 49);
  CHECK(parse_and_reduce(c47.word).size() == 93);
  CHECK(parse_and_reduce(c55.word).size() == 49);
  CHECK(parse_and_reduce(c47.word).letters() == c47.word);
}

TEST_CASE("invert") {
  CHECK(invert(parse_and_reduce("AB")).letters() == "ba");
  CHECK(invert(Word()).empty());
  const Word w47 = parse_and_reduce(find_builtin("C-47")->word);
  CHECK(invert(invert(w47)) == w47);
  CHECK(w47.concat(invert(w47)).empty());
}

TEST_CASE("evaluate follows the right-to-left convention") {
  const auto& hc = fixtures::case47();
  CHECK(evaluate(Word(), hc) == ExactMatrix::identity(6));
  CHECK(evaluate(parse_and_reduce("Ba"), hc) == hc.A_inv * hc.B);
  CHECK(evaluate(parse_and_reduce("Ba"), hc) == hc.T());
  CHECK(evaluate(parse_and_reduce("AB"), hc) == hc.B * hc.A);
  CHECK(evaluate(parse_and_reduce("a"), hc) == hc.A_inv);
  CHECK(evaluate(parse_and_reduce("b"), hc) == hc.B_inv);
}

TEST_CASE("property: M(uv) = M(v) M(u) and M(w^-1) M(w) = I") {
  const auto& hc = fixtures::case55();
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const Word u = fixtures::random_word(rng, 6);
    const Word v = fixtures::random_word(rng, 6);
    CHECK(evaluate(u.concat(v), hc) == evaluate(v, hc) * evaluate(u, hc));
    CHECK(evaluate(invert(u), hc) * evaluate(u, hc) == ExactMatrix::identity(6));
    CHECK(invert(u.concat(v)) == invert(v).concat(invert(u)));
  }
}

TEST_CASE("property: evaluated words preserve the form") {
  const auto& hc = fixtures::case47();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactMatrix m = evaluate(fixtures::random_word(rng, 10), hc);
    CHECK(m.is_integral());
    CHECK(m.transpose() * hc.omega * m == hc.omega);
  }
}
