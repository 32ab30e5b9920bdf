#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "stallings/handle.hpp"

namespace stallings {

inline constexpr std::size_t kDefaultSpectrumStates = 500'000;

// Least k >= 1 with w^k in h u, or 0 if there is none.
std::size_t relative_order(const Word& w, const SubgroupHandle& h, const Word& u = {});

// w^k in h; k = 0 is always true. Throws InvalidInput for negative k.
bool is_k_root(const Word& w, const SubgroupHandle& h, long long k);

// All (g, k) with g^k = w, by increasing k. Throws InvalidInput if w reduces to 1.
std::vector<std::pair<Word, std::size_t>> element_roots(const Word& w, const Alphabet& a);

struct SpectrumReport {
  bool has_zero = false;
  std::vector<std::size_t> orders;  // positive orders, increasing
  bool contains(std::size_t k) const;
  std::size_t max_order() const { return orders.empty() ? 0 : orders.back(); }
};

// Orders realized by elements relative to the coset h u. Throws ResourceLimit
// if the search over reduced words needs more than max_states states.
SpectrumReport spectrum(const SubgroupHandle& h, const Word& u = {},
                        std::size_t max_states = kDefaultSpectrumStates);

// A closed trail of length >= 2 in St(h) and a word whose action runs around it.
struct Trail {
  std::vector<Vertex> vertices;  // v0, ..., v_{k-1}; the walk returns to v0
  Word realizer;                 // v_i . realizer = v_{i+1}
};

// One realizer per trail of length >= 2, i.e. one proper root per preorbit.
std::vector<Trail> proper_trails(const SubgroupHandle& h, std::size_t max_states = kDefaultSpectrumStates);

// Proper roots of h: g with g^k in h for some k >= 2 but g not in h.
std::vector<Word> proper_root_representatives(const SubgroupHandle& h,
                                              std::size_t max_states = kDefaultSpectrumStates);

bool is_pure(const SubgroupHandle& h, std::size_t max_states = kDefaultSpectrumStates);

// nullopt when the state budget runs out before a verdict.
std::optional<bool> is_pure_bounded(const SubgroupHandle& h, std::size_t max_states);

struct PureClosure {
  SubgroupHandle result;
  std::size_t iterations = 0;  // adjunction rounds that enlarged the subgroup
};
PureClosure pure_closure(const SubgroupHandle& h, std::size_t max_states = kDefaultSpectrumStates,
                         std::size_t max_iterations = 64);

}  // namespace stallings
