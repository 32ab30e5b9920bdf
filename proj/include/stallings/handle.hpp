#pragma once

#include "stallings/automaton.hpp"

namespace stallings {

// A finitely generated subgroup, held as its canonical Stallings automaton.
// Two handles are equal iff they denote the same subgroup.
class SubgroupHandle {
 public:
  // Cores (keeping the basepoint) and canonicalizes a deterministic automaton.
  explicit SubgroupHandle(const InvAutomaton& aut);

  static SubgroupHandle whole(Alphabet a) { return SubgroupHandle(InvAutomaton::rose(a)); }
  static SubgroupHandle trivial(Alphabet a) { return SubgroupHandle(InvAutomaton::trivial(a)); }

  const InvAutomaton& automaton() const noexcept { return aut_; }
  const Alphabet& alphabet() const noexcept { return aut_.alphabet(); }
  std::size_t size() const noexcept { return aut_.num_vertices(); }
  long long rank() const { return aut_.rank(); }
  long long reduced_rank() const { return rank() > 0 ? rank() - 1 : 0; }
  bool is_trivial() const { return aut_.num_arcs() == 0; }

  friend bool operator==(const SubgroupHandle& a, const SubgroupHandle& b) { return a.aut_ == b.aut_; }
  friend bool operator<(const SubgroupHandle& a, const SubgroupHandle& b) {
    return encoding_less(a.aut_, b.aut_);
  }

 private:
  InvAutomaton aut_;
};

// Reduced rank max(rk - 1, 0).
inline long long reduced_rank(const SubgroupHandle& h) { return h.reduced_rank(); }

}  // namespace stallings
