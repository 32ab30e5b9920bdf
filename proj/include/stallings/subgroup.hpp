#pragma once

#include <optional>
#include <vector>

#include "stallings/folding.hpp"
#include "stallings/handle.hpp"
#include "stallings/word.hpp"

namespace stallings {

bool is_member(const Word& w, const SubgroupHandle& h);

// h <= k, tested on a basis of h.
bool is_subgroup(const SubgroupHandle& h, const SubgroupHandle& k);

// h^w = w^-1 h w.
SubgroupHandle conjugate(const SubgroupHandle& h, const Word& w);

struct IndexReport {
  bool finite = false;
  std::size_t index = 0;
  std::vector<Word> transversal;  // one reduced word per coset, in BFS order
};

IndexReport index(const SubgroupHandle& h);

bool is_normal(const SubgroupHandle& h);
SubgroupHandle normalizer(const SubgroupHandle& h);

// Some w with h1^w = h2, if the two are conjugate.
std::optional<Word> are_conjugate(const SubgroupHandle& h1, const SubgroupHandle& h2);

// Least number of extra generators needed to generate the whole group.
std::size_t corank(const SubgroupHandle& h);

// A finite-index K with h a free factor of K and no avoid-word in K.
// Throws PreconditionViolation if an avoid-word is trivial or lies in h.
SubgroupHandle hall_complete(const SubgroupHandle& h, const std::vector<Word>& avoid);

enum class WhiteheadVerdict { passes, fails };

// Whitehead graph of the cyclic reductions of S: 2n vertices, an edge
// x -- y^-1 for each cyclically consecutive pair x y.
struct WhiteheadGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // letter codes
};
WhiteheadGraph whitehead_graph(const Alphabet& a, const std::vector<Word>& S);
WhiteheadVerdict whitehead_cut_test(const Alphabet& a, const std::vector<Word>& S);

bool commensurable(const SubgroupHandle& h1, const SubgroupHandle& h2);

// h viewed inside k: the subgroup of F(rank k) obtained by writing a basis of
// h in the tree basis of k. Requires h <= k.
SubgroupHandle rewrite_in_basis(const SubgroupHandle& h, const SubgroupHandle& k);

}  // namespace stallings
