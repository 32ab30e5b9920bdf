#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stallings/automaton.hpp"

namespace stallings {

// <A | R>. Relators are kept cyclically reduced; trivial ones are dropped.
class Presentation {
 public:
  Presentation(Alphabet a, const std::vector<Word>& relators);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

// Schreier automaton of the cosets of the image of <S>.
struct CosetTable {
  InvAutomaton automaton;
  std::size_t index = 0;
  std::vector<Word> transversal;
};

struct TcOptions {
  std::size_t max_layers = 64;
  std::size_t max_vertices = 1'000'000;
};

struct TcResult {
  std::optional<CosetTable> table;  // empty on timeout
  std::size_t layers = 0;           // flower layers attached
  std::vector<std::size_t> sizes;   // vertex count after each fold

  bool timed_out() const { return !table.has_value(); }
};

// Attach a flower of relators at every vertex that does not yet close them
// all, fold, repeat. Stops with a table once saturated and relator-closed, or
// times out when a budget is exhausted or the automaton stops changing.
TcResult todd_coxeter(const Presentation& p, const std::vector<Word>& S, const TcOptions& options = {});

bool relator_closed(const InvAutomaton& aut, Vertex v, const std::vector<Word>& relators);

}  // namespace stallings
