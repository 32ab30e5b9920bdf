#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/handle.hpp"
#include "stallings/word.hpp"

namespace stallings {

// Pre-deterministic involutive digraph; parallel arcs allowed.
struct Multigraph {
  Alphabet alphabet;
  std::size_t num_vertices = 1;
  Vertex basepoint = 0;
  std::vector<Arc> arcs;
};

// Wedge of one petal per generator; words reducing to the empty word are
// dropped. Vertex 0 is the basepoint, arcs are listed petal by petal.
Multigraph flower(const Alphabet& a, const std::vector<Word>& generators);

Multigraph to_multigraph(const InvAutomaton& aut);

struct FoldEvent {
  enum class Kind { open, closed };
  Kind kind;
  std::size_t kept;     // arc ids in the input multigraph
  std::size_t removed;
  Letter side;          // both arcs leave a common vertex reading `side`
  Vertex merged_a;      // far endpoints of kept / removed (same class if closed)
  Vertex merged_b;
};

struct FoldingTrace {
  std::vector<FoldEvent> events;
  std::vector<Vertex> vertex_map;        // multigraph vertex -> folded vertex
  std::vector<std::size_t> arc_of_slot;  // folded (vertex * rank + letter) -> surviving arc id
  std::size_t loss() const;
};

struct FoldResult {
  InvAutomaton automaton;
  FoldingTrace trace;
};

struct FoldOptions {
  // When set, the initial arc order and the worklist order are randomized.
  std::optional<std::uint64_t> shuffle_seed;
};

FoldResult fold(const Multigraph& m, const FoldOptions& options = {});

// Canonical Stallings automaton of <generators>.
SubgroupHandle stallings(const Alphabet& a, const std::vector<Word>& generators);

// Free basis read off the BFS spanning tree: one word per non-tree positive arc.
std::vector<Word> basis(const SubgroupHandle& h);

// Number of closed folds when folding the flower of `generators`.
std::size_t loss(const Alphabet& a, const std::vector<Word>& generators);

struct GenLetter {
  std::size_t index;  // position in the original generator list
  bool inverse;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};
using GeneratorWord = std::vector<GenLetter>;

// Expression of w in the generators, or nullopt if w is not in their span.
std::optional<GeneratorWord> express(const Alphabet& a, const Word& w,
                                     const std::vector<Word>& generators);

// One relator per closed fold; together they present <generators>.
std::vector<GeneratorWord> relations(const Alphabet& a, const std::vector<Word>& generators);

// Product of the generators named by g, reduced.
Word expand(const GeneratorWord& g, const std::vector<Word>& generators);

// "+0 -1 +2"; the empty product is "1".
std::string format_generator_word(const GeneratorWord& g);

}  // namespace stallings
