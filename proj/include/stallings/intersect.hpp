#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stallings/handle.hpp"

namespace stallings {

// Synchronized product of two automata, restricted to the vertices that were
// actually reached. Component 0 always holds the pair of basepoints.
struct Pullback {
  Alphabet alphabet;
  std::vector<std::pair<Vertex, Vertex>> pairs;  // product vertex -> factor vertices
  std::vector<Arc> arcs;                         // positive arcs between product vertices
  std::vector<std::size_t> component;            // product vertex -> component id
  std::size_t num_components = 0;
  std::vector<std::size_t> vertex_count;         // per component
  std::vector<std::size_t> arc_count;            // per component

  static constexpr Vertex base = 0;

  std::size_t component_vertices(std::size_t c) const;
  std::size_t component_arcs(std::size_t c) const;
  long long component_rank(std::size_t c) const;  // 1 - V + E
  long long component_reduced_rank(std::size_t c) const;
  // The component as a pointed automaton rooted at product vertex `root`.
  InvAutomaton component_automaton(std::size_t c, Vertex root) const;
};

enum class PullbackScope { base_component, all_components };

Pullback pullback(const InvAutomaton& a1, const InvAutomaton& a2,
                  PullbackScope scope = PullbackScope::all_components);
Pullback pullback(const SubgroupHandle& h1, const SubgroupHandle& h2,
                  PullbackScope scope = PullbackScope::all_components);

SubgroupHandle intersect(const SubgroupHandle& h1, const SubgroupHandle& h2);

// St(h) with the walk for u added, cored around the basepoint and the end of u.
struct CosetAutomaton {
  InvAutomaton automaton;
  Vertex target;  // the vertex reached by u
};
CosetAutomaton coset_automaton(const SubgroupHandle& h, const Word& u);

struct CosetIntersection {
  SubgroupHandle subgroup;  // h1 ∩ h2
  Word representative;      // h1 u ∩ h2 v = (h1 ∩ h2) representative
};
std::optional<CosetIntersection> coset_intersect(const SubgroupHandle& h1, const Word& u,
                                                 const SubgroupHandle& h2, const Word& v);

struct MalnormalReport {
  bool malnormal = true;
  std::optional<Word> witness;  // g outside h with h ∩ h^g nontrivial
};
MalnormalReport is_malnormal(const SubgroupHandle& h);

struct ShncReport {
  long long rr_h = 0, rr_k = 0, rr_meet = 0;
  long long component_sum = 0;  // sum of reduced ranks over all pullback components
  bool howson_ok = true;        // rr_meet <= 2 rr_h rr_k
  bool shnc_ok = true;          // component_sum <= rr_h rr_k
};
ShncReport shnc_check(const SubgroupHandle& h, const SubgroupHandle& k);

std::string to_dot(const Pullback& p, std::string_view name = "pullback");

}  // namespace stallings
