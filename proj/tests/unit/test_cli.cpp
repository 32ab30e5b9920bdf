#include "doctest.h"
#include "oracles.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace stallings;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run stk_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = stk::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::string kIndexFive = "b,aba,Abba,ABaaBABa,ABabbABa,ABabaa";

}  // namespace

TEST_CASE("golden outputs") {
  Run m = stk_run({"member", "-n", "2", "-g", "ab,Ba", "-w", "ab"});
  CHECK(m.code == 0);
  CHECK(m.out == "true\n");

  Run idx = stk_run({"index", "-n", "2", "-g", kIndexFive});
  CHECK(idx.code == 0);
  auto ls = lines(idx.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "finite 5");

  Run hc = stk_run({"hall-count", "-n", "2", "-k", "3"});
  CHECK(hc.out == "13\n");
  CHECK(stk_run({"hall-count", "-n", "2", "-k", "40"}).out.size() > 30);
}

TEST_CASE("exit codes") {
  CHECK(stk_run({"member", "-g", "ab", "-w", "a"}).code == 1);
  CHECK(stk_run({"member", "-g", "ab", "-w", "c"}).code == 2);
  CHECK(stk_run({"frobnicate"}).code == 2);
  CHECK(stk_run({"member", "-g", "ab", "-w", "a?"}).code == 2);
  CHECK(stk_run({}).code == 2);
  CHECK(stk_run({"fringe", "-g", "aaaaaaaaaab"}).code == 3);
  CHECK(stk_run({"tc", "--relators", "ABab", "--subgroup", "a", "--max-layers", "3"}).code == 3);
  CHECK(stk_run({"complete", "-g", "ab", "--avoid", "ab"}).code == 2);
  Run help = stk_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("pure-closure") != std::string::npos);
  Run bad = stk_run({"member", "-g", "ab", "-w", "c"});
  CHECK(lines(bad.err).size() == 1);
}

TEST_CASE("every verb runs") {
  std::vector<std::vector<std::string>> calls = {
      {"fold", "-g", "aabb,ab"},
      {"basis", "-g", "aabb,ab"},
      {"express", "-g", "ab,Ba", "-w", "aa"},
      {"relations", "-g", "a,b,ab"},
      {"normal", "-g", "aa,b,abA"},
      {"normalizer", "-g", "aa"},
      {"conjugate", "-g", "a", "-G", "baB"},
      {"conjugate", "-g", "a", "-w", "b"},
      {"corank", "-g", "aa,bb"},
      {"complete", "-g", "abb,AAbbbb,Ab", "--avoid", "AAba"},
      {"whitehead", "-g", "ab"},
      {"commensurable", "-g", "aa", "-G", "aaa"},
      {"intersect", "-g", "ab,aaa,Aba", "-G", "b,aaa,AbaBa"},
      {"coset-intersect", "-g", "a", "-u", "b", "-G", "b", "-v", "b"},
      {"malnormal", "-g", "abAB,aabbAABB"},
      {"shnc-check", "-g", "ab,aaa,Aba", "-G", "b,aaa,AbaBa"},
      {"fringe", "-n", "3", "-g", "ab,acba"},
      {"free-factor", "-g", "aabb", "-G", "aabb,ab"},
      {"algext", "-g", "aa"},
      {"takahasi", "-g", "aa", "-G", "a,b"},
      {"compression", "-g", "aa,bb,abab"},
      {"order", "-g", "aaa", "-w", "a"},
      {"roots", "-w", "abab"},
      {"spectrum", "-g", "aaa"},
      {"pure", "-g", "ab"},
      {"pure-closure", "-g", "aa,abb"},
      {"hall-count", "-k", "4"},
      {"enumerate", "-k", "2"},
      {"sample", "-k", "5", "--seed", "42"},
      {"stats", "-k", "8", "--trials", "20"},
      {"partition-check", "-n", "1", "--coset", "aa:1", "--coset", "aa:a"},
      {"tc", "--relators", "aa,bb,ababab", "--subgroup", "a"},
  };
  for (const auto& call : calls) {
    Run plain = stk_run(call);
    CAPTURE(call[0]);
    CHECK(plain.code == 0);
    CHECK_FALSE(plain.out.empty());
    auto with_json = call;
    with_json.push_back("--json");
    Run js = stk_run(with_json);
    CHECK(js.code == plain.code);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["verb"] == call[0]);
  }
}

TEST_CASE("plain and json results agree") {
  Run p = stk_run({"spectrum", "-g", "aaa"});
  Run j = stk_run({"spectrum", "-g", "aaa", "--json"});
  CHECK(p.out == "0 1 3\n");
  CHECK(nlohmann::json::parse(j.out)["spectrum"] == nlohmann::json::array({0, 1, 3}));

  Run pi = stk_run({"index", "-g", kIndexFive});
  auto ji = nlohmann::json::parse(stk_run({"index", "-g", kIndexFive, "--json"}).out);
  auto ls = lines(pi.out);
  CHECK(ji["index"] == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(ji["transversal"][i] == ls[i + 1]);

  CHECK(stk_run({"tc", "--relators", "aaaa,aaBB,Baba", "--subgroup", "a"}).out.rfind("index 2\n", 0) == 0);
  CHECK(stk_run({"partition-check", "-n", "1", "--coset", "aaaa:1", "--coset", "aaaa:aa", "--coset", "aa:a"}).out ==
        "partition_with_multiplicity\n");
}

TEST_CASE("printed automata re-parse to the same canonical automaton") {
  std::mt19937_64 rng(601);
  std::string path = "stk_cli_roundtrip.txt";
  for (int i = 0; i < 20; ++i) {
    auto S = oracle::random_generators(rng, 2, 3, 5);
    std::string gens = format_words(S, Alphabet(2));
    Run r = stk_run({"fold", "-g", gens});
    SubgroupHandle h = stallings::stallings(Alphabet(2), S);
    InvAutomaton parsed = from_text(r.out);
    CHECK(canonicalize(parsed) == h.automaton());
    {
      std::ofstream f(path);
      f << r.out;
    }
    Run again = stk_run({"fold", "--aut", path});
    CHECK(again.out == r.out);
    CHECK(stk_run({"member", "--aut", path, "-w", format_word(S[0], Alphabet(2))}).code == 0);
  }
  CHECK(stk_run({"fold", "-n", "3", "--aut", path}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("dot export") {
  std::string path = "stk_cli_test.dot";
  CHECK(stk_run({"intersect", "-g", "ab", "-G", "ab,ba", "--dot", path}).code == 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("(0,0)") != std::string::npos);
  std::remove(path.c_str());
}
