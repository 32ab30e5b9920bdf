#include "stallings/extensions.hpp"

#include <numeric>
#include <set>

#include "stallings/errors.hpp"
#include "stallings/folding.hpp"
#include "stallings/subgroup.hpp"

namespace stallings {

std::vector<SubgroupHandle> fringe(const SubgroupHandle& h, std::size_t max_vertices) {
  const InvAutomaton& aut = h.automaton();
  const std::size_t n = aut.num_vertices();
  if (n > max_vertices) {
    throw ResourceLimit("fringe of a " + std::to_string(n) + "-vertex automaton exceeds the cap of " +
                        std::to_string(max_vertices));
  }
  const std::vector<Arc> arcs = aut.arcs();
  std::set<SubgroupHandle> found;
  // Restricted growth strings: block[i] <= 1 + max(block[0..i-1]).
  std::vector<Vertex> block(n, 0), high(n, 0);
  while (true) {
    Multigraph m{aut.alphabet(), static_cast<std::size_t>(high[n - 1]) + 1, block[aut.basepoint()], {}};
    for (const Arc& e : arcs) m.arcs.push_back({block[e.src], e.letter, block[e.dst]});
    found.insert(SubgroupHandle(fold(m).automaton));

    // Find the rightmost position that can still grow.
    std::size_t pos = n;
    for (std::size_t j = n; j-- > 1;) {
      if (block[j] <= high[j - 1]) {
        pos = j;
        break;
      }
    }
    if (pos == n) break;
    ++block[pos];
    high[pos] = std::max(high[pos - 1], block[pos]);
    for (std::size_t j = pos + 1; j < n; ++j) {
      block[j] = 0;
      high[j] = high[pos];
    }
  }
  return {found.begin(), found.end()};
}

std::vector<WhiteheadMove> whitehead_moves(const Alphabet& a) {
  std::vector<WhiteheadMove> out;
  const std::size_t n = a.rank;
  for (std::uint32_t xc = 0; xc < 2 * n; ++xc) {
    Letter x = Letter::from_code(xc);
    // Each other letter y independently: y in A? y^-1 in A? -> 4 options.
    std::size_t others = n - 1;
    std::size_t total = std::size_t{1} << (2 * others);
    for (std::size_t mask = 1; mask < total; ++mask) {
      WhiteheadMove phi;
      std::size_t bit = 0;
      for (std::size_t y = 0; y < n; ++y) {
        Word img{Letter::positive(y)};
        if (y != x.index()) {
          bool pos_in = (mask >> (2 * bit)) & 1;
          bool neg_in = (mask >> (2 * bit + 1)) & 1;
          ++bit;
          if (pos_in) img.push_back(x);
          if (neg_in) img = concat(Word{x.inverse()}, img);
        }
        phi.images.push_back(img);
      }
      out.push_back(std::move(phi));
    }
  }
  return out;
}

Word apply(const WhiteheadMove& phi, const Word& w) {
  Word out;
  for (Letter x : w) {
    const Word& img = phi.images.at(x.index());
    out.append(x.is_inverse() ? inverse(img) : img);
  }
  return reduce(out);
}

SubgroupHandle apply(const WhiteheadMove& phi, const SubgroupHandle& h) {
  std::vector<Word> gens;
  for (const Word& g : basis(h)) gens.push_back(apply(phi, g));
  return stallings(h.alphabet(), gens);
}

std::size_t core_size(const SubgroupHandle& h) {
  return trim(h.automaton(), TrimMode::restricted_core).automaton.num_vertices();
}

SubgroupHandle whitehead_minimize(const SubgroupHandle& h, std::size_t max_rank) {
  if (h.alphabet().rank > max_rank) {
    throw ResourceLimit("Whitehead search above rank " + std::to_string(max_rank));
  }
  const std::vector<WhiteheadMove> moves = whitehead_moves(h.alphabet());
  SubgroupHandle cur = h;
  std::size_t size = core_size(cur);
  bool improved = true;
  while (improved && size > 1) {
    improved = false;
    for (const WhiteheadMove& phi : moves) {
      SubgroupHandle next = apply(phi, cur);
      std::size_t s = core_size(next);
      if (s < size) {
        cur = std::move(next);
        size = s;
        improved = true;
        break;
      }
    }
  }
  return cur;
}

bool is_free_factor(const SubgroupHandle& h, const SubgroupHandle& k, std::size_t max_rank) {
  if (!is_subgroup(h, k)) throw PreconditionViolation("h is not contained in k");
  if (h.is_trivial() || h == k) return true;
  if (h.rank() >= k.rank()) return false;
  SubgroupHandle inner = rewrite_in_basis(h, k);
  return core_size(whitehead_minimize(inner, max_rank)) == 1;
}

std::vector<SubgroupHandle> algebraic_extensions(const SubgroupHandle& h, std::size_t max_vertices) {
  std::vector<SubgroupHandle> members = fringe(h, max_vertices);
  std::vector<SubgroupHandle> out;
  for (std::size_t j = 0; j < members.size(); ++j) {
    bool removed = false;
    for (std::size_t i = 0; i < members.size() && !removed; ++i) {
      if (i == j || members[i].rank() >= members[j].rank()) continue;
      if (!is_subgroup(members[i], members[j])) continue;
      removed = is_free_factor(members[i], members[j]);
    }
    if (!removed) out.push_back(members[j]);
  }
  return out;
}

SubgroupHandle takahasi_closure(const SubgroupHandle& h, const SubgroupHandle& k, std::size_t max_vertices) {
  if (!is_subgroup(h, k)) throw PreconditionViolation("h is not contained in k");
  std::vector<SubgroupHandle> hits;
  for (const SubgroupHandle& m : algebraic_extensions(h, max_vertices)) {
    if (is_subgroup(m, k) && is_free_factor(m, k)) hits.push_back(m);
  }
  if (hits.size() != 1) {
    throw std::logic_error("expected exactly one algebraic extension free in k, found " +
                           std::to_string(hits.size()));
  }
  return hits.front();
}

Compression compression(const SubgroupHandle& h, std::size_t max_vertices) {
  std::vector<SubgroupHandle> ae = algebraic_extensions(h, max_vertices);
  const SubgroupHandle* best = &ae.front();
  for (const SubgroupHandle& m : ae) {
    if (m.reduced_rank() < best->reduced_rank()) best = &m;
  }
  Compression c{1, 1, *best};
  long long num = h.reduced_rank(), den = best->reduced_rank();
  if (num != 0) {
    long long g = std::gcd(num, den);
    c.num = num / g;
    c.den = den / g;
  }
  return c;
}

}  // namespace stallings
