#include "doctest.h"
#include "oracles.hpp"

using namespace stallings;
using oracle::W;

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce(Word{}) == Word{});
  CHECK(reduce(W("aA")) == Word{});
  CHECK(reduce(W("bbaBba")) == W("bbaa"));
  CHECK(format_word(reduce(W("bbaBba")), Alphabet(2)) == "bbaa");
}

TEST_CASE("reduce matches repeated cancellation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Word w = oracle::random_raw_word(rng, 3, i % 17);
    Word r = reduce(w);
    CHECK(r == oracle::naive_reduce(w));
    CHECK(is_reduced(r));
    CHECK(r.size() <= w.size());
    CHECK(r.size() % 2 == w.size() % 2);
  }
}

TEST_CASE("reduction is a homomorphism onto normal forms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word u = oracle::random_raw_word(rng, 2, i % 9), v = oracle::random_raw_word(rng, 2, i % 7);
    CHECK(reduce(concat(reduce(u), reduce(v))) == reduce(concat(u, v)));
    CHECK(reduce(concat(u, inverse(u))).empty());
  }
}

TEST_CASE("cyclic reduction") {
  auto check = [](const char* w, const char* core, const char* conj) {
    CyclicReduction c = cyclic_reduce(W(w));
    CHECK(c.core == W(core));
    CHECK(c.conjugator == W(conj));
  };
  check("ab", "ab", "1");
  check("Aba", "b", "A");
  check("ABAbaba", "b", "ABA");
  check("abbA", "bb", "a");
}

namespace {
bool rotation_of(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(i + s) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("cyclic core is conjugation invariant up to rotation") {
  std::mt19937_64 rng(3);
  auto conjugators = oracle::all_reduced_words(2, 4);
  for (int i = 0; i < 40; ++i) {
    Word w = oracle::random_reduced_word(rng, 2, 1 + i % 8);
    CyclicReduction base = cyclic_reduce(w);
    CHECK(reduce(concat(concat(base.conjugator, base.core), inverse(base.conjugator))) == w);
    CHECK(is_cyclically_reduced(base.core));
    for (std::size_t j = 0; j < conjugators.size(); j += 7) {
      CHECK(rotation_of(cyclic_reduce(conjugate(w, conjugators[j])).core, base.core));
    }
  }
}

TEST_CASE("power, conjugate, multiply") {
  CHECK(power(W("ab"), 3) == W("ababab"));
  CHECK(power(W("ab"), -2) == W("BABA"));
  CHECK(power(W("ab"), 0).empty());
  CHECK(conjugate(W("b"), W("a")) == W("Aba"));
  CHECK(W("ab") * W("Ba") == W("aa"));
}

TEST_CASE("text format round trips") {
  Alphabet a2(2);
  CHECK(format_word(Word{}, a2) == "1");
  CHECK(parse_word("", a2).empty());
  CHECK(parse_word("1", a2).empty());
  CHECK(format_words(parse_words("ab,Ba,1", a2), a2) == "ab,Ba,1");
  CHECK_THROWS_AS(parse_word("c", a2), InvalidInput);
  CHECK_THROWS_AS(parse_word("a?", a2), InvalidInput);

  Alphabet big(30);
  Word w{Letter::positive(0), Letter::negative(27), Letter::positive(29)};
  CHECK(parse_word(format_word(w, big), big) == w);
}

TEST_CASE("alphabet must be nonempty") { CHECK_THROWS_AS(Alphabet(0), InvalidInput); }
