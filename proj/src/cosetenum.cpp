#include "stallings/cosetenum.hpp"

#include "stallings/errors.hpp"
#include "stallings/folding.hpp"

namespace stallings {

Presentation::Presentation(Alphabet a, const std::vector<Word>& relators) : alphabet_(a) {
  for (const Word& r : relators) {
    Word core = cyclic_reduce(reduce(r, a)).core;
    if (!core.empty()) relators_.push_back(std::move(core));
  }
}

bool relator_closed(const InvAutomaton& aut, Vertex v, const std::vector<Word>& relators) {
  for (const Word& r : relators) {
    auto end = aut.trace(v, r);
    if (!end || *end != v) return false;
  }
  return true;
}

TcResult todd_coxeter(const Presentation& p, const std::vector<Word>& S, const TcOptions& options) {
  if (options.max_layers == 0) throw InvalidInput("max_layers must be >= 1");
  const Alphabet& a = p.alphabet();
  for (const Word& s : S) check_letters(s, a);

  TcResult result;
  InvAutomaton aut = fold(flower(a, S)).automaton;
  result.sizes.push_back(aut.num_vertices());
  while (true) {
    std::vector<Vertex> open;
    for (Vertex v = 0; v < aut.num_vertices(); ++v) {
      if (!relator_closed(aut, v, p.relators())) open.push_back(v);
    }
    if (open.empty() && aut.is_saturated()) {
      InvAutomaton table = canonicalize(aut);
      std::vector<Word> transversal = tree_labels(table);
      std::size_t n = table.num_vertices();
      result.table = CosetTable{std::move(table), n, std::move(transversal)};
      return result;
    }
    // Nothing left to attach: the automaton can never change again.
    if (open.empty() || result.layers == options.max_layers) return result;

    Multigraph m = to_multigraph(aut);
    for (Vertex v : open) {
      for (const Word& r : p.relators()) {
        Vertex cur = v;
        for (std::size_t i = 0; i < r.size(); ++i) {
          Vertex next = i + 1 == r.size() ? v : static_cast<Vertex>(m.num_vertices++);
          Letter x = r[i];
          if (x.is_inverse()) {
            m.arcs.push_back({next, static_cast<std::uint32_t>(x.index()), cur});
          } else {
            m.arcs.push_back({cur, static_cast<std::uint32_t>(x.index()), next});
          }
          cur = next;
        }
      }
      if (m.num_vertices > options.max_vertices) return result;
    }
    aut = fold(m).automaton;
    ++result.layers;
    result.sizes.push_back(aut.num_vertices());
  }
}

}  // namespace stallings
