#pragma once

#include <cstddef>
#include <vector>

#include "stallings/handle.hpp"

namespace stallings {

inline constexpr std::size_t kDefaultFringeCap = 9;    // Bell(9) = 21147 partitions
inline constexpr std::size_t kDefaultWhiteheadRank = 4;

// Folded quotients of St(h) over all vertex partitions, deduplicated and
// sorted by canonical form. Throws ResourceLimit above `max_vertices`.
std::vector<SubgroupHandle> fringe(const SubgroupHandle& h, std::size_t max_vertices = kDefaultFringeCap);

// Type-2 Whitehead automorphism (A, x): images of the positive letters.
struct WhiteheadMove {
  std::vector<Word> images;
};
std::vector<WhiteheadMove> whitehead_moves(const Alphabet& a);
Word apply(const WhiteheadMove& phi, const Word& w);
SubgroupHandle apply(const WhiteheadMove& phi, const SubgroupHandle& h);

// Number of vertices of the restricted core (1 for the trivial subgroup).
std::size_t core_size(const SubgroupHandle& h);

// A subgroup of least core_size in the Aut(F)-orbit of h, by greedy descent.
SubgroupHandle whitehead_minimize(const SubgroupHandle& h, std::size_t max_rank = kDefaultWhiteheadRank);

// h is a free factor of k. Throws PreconditionViolation unless h <= k, and
// ResourceLimit if rank(k) exceeds max_rank.
bool is_free_factor(const SubgroupHandle& h, const SubgroupHandle& k,
                    std::size_t max_rank = kDefaultWhiteheadRank);

std::vector<SubgroupHandle> algebraic_extensions(const SubgroupHandle& h,
                                                 std::size_t max_vertices = kDefaultFringeCap);

// The unique algebraic extension of h that is a free factor of k.
SubgroupHandle takahasi_closure(const SubgroupHandle& h, const SubgroupHandle& k,
                                std::size_t max_vertices = kDefaultFringeCap);

struct Compression {
  long long num = 1;  // dc = num / den, in lowest terms
  long long den = 1;
  SubgroupHandle witness;  // algebraic extension of least reduced rank
  bool compressed() const { return num == den; }
};
Compression compression(const SubgroupHandle& h, std::size_t max_vertices = kDefaultFringeCap);

}  // namespace stallings
