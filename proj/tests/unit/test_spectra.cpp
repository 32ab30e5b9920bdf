#include "doctest.h"
#include "oracles.hpp"

using namespace stallings;
using oracle::H;
using oracle::W;

namespace {

// Least k in 1..cap with w^k u^-1 read back to the basepoint, else 0.
std::size_t brute_order(const Word& w, const SubgroupHandle& h, const Word& u, std::size_t cap) {
  for (std::size_t k = 1; k <= cap; ++k) {
    if (oracle::reads_to_base(h.automaton(), concat(power(w, static_cast<long long>(k)), inverse(u)))) return k;
  }
  return 0;
}

std::set<std::size_t> brute_spectrum(const SubgroupHandle& h, const Word& u, std::size_t len, std::size_t cap) {
  std::set<std::size_t> out;
  for (const Word& w : oracle::all_reduced_words(h.alphabet().rank, len)) out.insert(brute_order(w, h, u, cap));
  return out;
}

std::set<std::size_t> as_set(const SpectrumReport& r) {
  std::set<std::size_t> s(r.orders.begin(), r.orders.end());
  if (r.has_zero) s.insert(0);
  return s;
}

}  // namespace

TEST_CASE("relative order") {
  CHECK(relative_order(W("ab"), H("ab,bb")) == 1);
  CHECK(relative_order(W("a"), H("aaa")) == 3);
  CHECK(relative_order(W("b"), H("aaa")) == 0);
  CHECK(relative_order(W("aa"), H("aaa"), W("a")) == 2);
  CHECK(relative_order(W("a"), H("aaa"), W("b")) == 0);
}

TEST_CASE("relative order matches power membership") {
  std::mt19937_64 rng(401);
  for (int i = 0; i < 150; ++i) {
    SubgroupHandle h = stallings::stallings(Alphabet(2), oracle::random_generators(rng, 2, 2, 4));
    Word w = oracle::random_reduced_word(rng, 2, 1 + i % 6);
    Word u = i % 3 == 0 ? oracle::random_reduced_word(rng, 2, i % 4) : Word{};
    std::size_t cap = coset_automaton(h, u).automaton.num_vertices();
    CHECK(relative_order(w, h, u) == brute_order(w, h, u, cap));
  }
}

TEST_CASE("order divides every exponent that powers into h") {
  std::mt19937_64 rng(409);
  for (int i = 0; i < 100; ++i) {
    SubgroupHandle h = stallings::stallings(Alphabet(2), oracle::random_generators(rng, 2, 2, 4));
    Word w = oracle::random_reduced_word(rng, 2, 1 + i % 5);
    std::size_t ord = relative_order(w, h);
    for (long long k = 1; k <= 12; ++k) {
      if (is_member(power(w, k), h)) {
        REQUIRE(ord > 0);
        CHECK(k % static_cast<long long>(ord) == 0);
      }
    }
  }
}

TEST_CASE("free groups are torsion free") {
  SubgroupHandle triv = SubgroupHandle::trivial(Alphabet(2));
  for (const Word& w : oracle::all_reduced_words(2, 4)) {
    CHECK(relative_order(w, triv) == (w.empty() ? 1u : 0u));
  }
}

TEST_CASE("k-roots") {
  CHECK(is_k_root(W("ab"), H("a"), 0));
  CHECK(is_k_root(W("a"), H("aaaaaa"), 6));
  CHECK_FALSE(is_k_root(W("a"), H("aaaaaa"), 4));
  CHECK_THROWS_AS(is_k_root(W("a"), H("a"), -1), InvalidInput);
  std::mt19937_64 rng(419);
  for (int i = 0; i < 100; ++i) {
    SubgroupHandle h = stallings::stallings(Alphabet(2), oracle::random_generators(rng, 2, 2, 3));
    Word w = oracle::random_reduced_word(rng, 2, 1 + i % 6);
    long long k = 1 + i % 5;
    CHECK(is_k_root(w, h, k) == oracle::reads_to_base(h.automaton(), power(w, k)));
  }
}

TEST_CASE("element roots") {
  Alphabet a(2);
  using Roots = std::vector<std::pair<Word, std::size_t>>;
  CHECK(element_roots(W("a"), a) == Roots{{W("a"), 1}});
  CHECK(element_roots(W("aaaa"), a) == Roots{{W("aaaa"), 1}, {W("aa"), 2}, {W("a"), 4}});
  CHECK(element_roots(W("abab"), a) == Roots{{W("abab"), 1}, {W("ab"), 2}});
  CHECK(element_roots(W("Baab"), a) == Roots{{W("Baab"), 1}, {W("Bab"), 2}});
  CHECK_THROWS_AS(element_roots(W("aA"), a), InvalidInput);
}

TEST_CASE("element roots are roots, unique per exponent") {
  std::mt19937_64 rng(421);
  for (int i = 0; i < 200; ++i) {
    Word base = oracle::random_reduced_word(rng, 2, 1 + i % 3);
    Word w = power(base, 1 + i % 4);
    if (w.empty()) continue;
    auto roots = element_roots(w, Alphabet(2));
    std::set<std::size_t> exps;
    for (const auto& [r, k] : roots) {
      CHECK(power(r, static_cast<long long>(k)) == w);
      CHECK(exps.insert(k).second);
    }
  }
}

TEST_CASE("spectrum") {
  SpectrumReport whole = spectrum(SubgroupHandle::whole(Alphabet(2)));
  CHECK_FALSE(whole.has_zero);
  CHECK(whole.orders == std::vector<std::size_t>{1});

  CHECK(as_set(spectrum(H("aaa"))) == std::set<std::size_t>{0, 1, 3});
  CHECK_FALSE(spectrum(H("b,aba,Abba,ABaaBABa,ABabbABa,ABabaa")).has_zero);
  CHECK(as_set(spectrum(H("aaa"), W("a"))) == std::set<std::size_t>{0, 1, 2});
}

TEST_CASE("spectrum matches brute force on small subgroups") {
  for (const char* gens : {"aaa", "aa,bb", "aab", "ab,ba", "aa,bab", "aaaa,bb"}) {
    SubgroupHandle h = H(gens);
    std::size_t cap = h.size();
    CHECK(as_set(spectrum(h)) == brute_spectrum(h, Word{}, 6, cap));
  }
  SubgroupHandle h = H("aaa,bb");
  for (const char* u : {"a", "b", "ab"}) {
    std::size_t cap = coset_automaton(h, W(u)).automaton.num_vertices();
    CHECK(as_set(spectrum(h, W(u))) == brute_spectrum(h, W(u), 6, cap));
  }
}

TEST_CASE("spectrum is bounded by the restricted core") {
  std::mt19937_64 rng(431);
  for (int i = 0; i < 100; ++i) {
    SubgroupHandle h = stallings::stallings(Alphabet(2), oracle::random_generators(rng, 2, 2, 5));
    std::size_t bound = trim(h.automaton(), TrimMode::restricted_core).automaton.num_vertices();
    CHECK(spectrum(h).max_order() <= bound);
  }
}

TEST_CASE("purity") {
  CHECK(is_pure(SubgroupHandle::whole(Alphabet(2))));
  CHECK_FALSE(is_pure(H("aa")));
  CHECK(is_pure(H("ab")));
  CHECK(is_pure(SubgroupHandle::trivial(Alphabet(2))));
}

TEST_CASE("purity matches the spectrum") {
  std::mt19937_64 rng(433);
  for (int i = 0; i < 80; ++i) {
    SubgroupHandle h = stallings::stallings(Alphabet(2), oracle::random_generators(rng, 2, 2, 4));
    CHECK(is_pure(h) == (spectrum(h).max_order() <= 1));
  }
}

TEST_CASE("proper roots are roots outside h") {
  for (const char* gens : {"aa", "aaa,bab", "aa,abb", "abab"}) {
    SubgroupHandle h = H(gens);
    for (const Word& g : proper_root_representatives(h)) {
      CHECK_FALSE(is_member(g, h));
      CHECK(relative_order(g, h) >= 2);
    }
  }
}

TEST_CASE("pure closure") {
  SubgroupHandle whole = SubgroupHandle::whole(Alphabet(2));
  CHECK(pure_closure(whole).result == whole);
  CHECK(pure_closure(whole).iterations == 0);
  CHECK(pure_closure(H("aa")).result == H("a"));

  PureClosure pc = pure_closure(H("aa,abb"));
  CHECK(pc.result == whole);
  CHECK(pc.iterations >= 2);
  CHECK(is_pure(pc.result));
}

TEST_CASE("pure closure contains the input and is pure") {
  std::mt19937_64 rng(439);
  for (int i = 0; i < 30; ++i) {
    auto gens = oracle::random_generators(rng, 2, 2, 4);
    SubgroupHandle h = stallings::stallings(Alphabet(2), gens);
    PureClosure pc = pure_closure(h);
    CHECK(is_subgroup(h, pc.result));
    CHECK(is_pure(pc.result));
  }
}
