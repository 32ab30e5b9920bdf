#include "stallings/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "stallings/errors.hpp"
#include "stallings/intersect.hpp"

namespace stallings {

namespace {

void require_same_alphabet(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.alphabet() != b.alphabet()) throw InvalidInput("subgroups live in different free groups");
}

// Identify vertices u and v of aut, fold, and return the canonical result.
InvAutomaton identify(const InvAutomaton& aut, Vertex u, Vertex v) {
  Multigraph m = to_multigraph(aut);
  if (u > v) std::swap(u, v);
  auto relabel = [&](Vertex x) -> Vertex {
    if (x == v) return u;
    return x > v ? x - 1 : x;
  };
  for (Arc& e : m.arcs) {
    e.src = relabel(e.src);
    e.dst = relabel(e.dst);
  }
  m.basepoint = relabel(m.basepoint);
  m.num_vertices -= 1;
  return canonicalize(fold(m).automaton);
}

}  // namespace

bool is_member(const Word& w, const SubgroupHandle& h) {
  const InvAutomaton& aut = h.automaton();
  return aut.trace(aut.basepoint(), reduce(w, h.alphabet())) == aut.basepoint();
}

bool is_subgroup(const SubgroupHandle& h, const SubgroupHandle& k) {
  require_same_alphabet(h, k);
  for (const Word& g : basis(h)) {
    if (!is_member(g, k)) return false;
  }
  return true;
}

SubgroupHandle conjugate(const SubgroupHandle& h, const Word& w) {
  Word by = reduce(w, h.alphabet());
  std::vector<Word> gens;
  for (const Word& g : basis(h)) gens.push_back(stallings::conjugate(g, by));
  return stallings(h.alphabet(), gens);
}

IndexReport index(const SubgroupHandle& h) {
  IndexReport r;
  const InvAutomaton& aut = h.automaton();
  if (!aut.is_saturated()) return r;
  r.finite = true;
  r.index = aut.num_vertices();
  std::vector<Word> labels = tree_labels(aut);
  for (Vertex v : bfs_order(aut, aut.basepoint())) r.transversal.push_back(labels[v]);
  return r;
}

bool is_normal(const SubgroupHandle& h) {
  if (h.is_trivial()) return true;
  const InvAutomaton& aut = h.automaton();
  if (!aut.is_saturated()) return false;
  for (Vertex v = 0; v < aut.num_vertices(); ++v) {
    if (!isomorphism(aut, aut.basepoint(), aut, v)) return false;
  }
  return true;
}

SubgroupHandle normalizer(const SubgroupHandle& h) {
  if (h.is_trivial()) return SubgroupHandle::whole(h.alphabet());
  const InvAutomaton& st = h.automaton();
  TrimResult rc = trim(st, TrimMode::restricted_core);
  const std::size_t ell = rc.tail_length;
  const std::uint32_t codes = static_cast<std::uint32_t>(h.alphabet().num_codes());

  // Ball of radius ell around the restricted core inside the Schreier graph:
  // St(h) plus reduced continuation trees grown from its deficient slots.
  InvAutomaton ball = st;
  std::vector<std::size_t> dist(st.num_vertices(), static_cast<std::size_t>(-1));
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < st.num_vertices(); ++v) {
    if (rc.vertex_map[v] != kNoVertex) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < codes; ++c) {
      Vertex t = st.target(v, Letter::from_code(c));
      if (t != kNoVertex && dist[t] == static_cast<std::size_t>(-1)) {
        dist[t] = dist[v] + 1;
        queue.push_back(t);
      }
    }
  }
  std::deque<Vertex> grow;
  for (Vertex v = 0; v < st.num_vertices(); ++v) {
    if (dist[v] < ell) grow.push_back(v);
  }
  while (!grow.empty()) {
    Vertex v = grow.front();
    grow.pop_front();
    for (std::uint32_t c = 0; c < codes; ++c) {
      Letter x = Letter::from_code(c);
      if (ball.target(v, x) != kNoVertex) continue;
      Vertex u = ball.add_vertex();
      dist.push_back(dist[v] + 1);
      if (x.is_inverse()) {
        ball.add_arc(u, x.index(), v);
      } else {
        ball.add_arc(v, x.index(), u);
      }
      if (dist[u] < ell) grow.push_back(u);
    }
  }

  std::vector<Word> gens = basis(h);
  std::vector<Word> labels = tree_labels(ball);
  for (Vertex u = 0; u < ball.num_vertices(); ++u) {
    if (u == ball.basepoint()) continue;
    if (isomorphism(ball, ball.basepoint(), ball, u)) gens.push_back(labels[u]);
  }
  return stallings(h.alphabet(), gens);
}

std::optional<Word> are_conjugate(const SubgroupHandle& h1, const SubgroupHandle& h2) {
  require_same_alphabet(h1, h2);
  if (h1.is_trivial() || h2.is_trivial()) {
    if (h1.is_trivial() && h2.is_trivial()) return Word{};
    return std::nullopt;
  }
  TrimResult r1 = trim(h1.automaton(), TrimMode::restricted_core);
  TrimResult r2 = trim(h2.automaton(), TrimMode::restricted_core);
  const InvAutomaton& a1 = r1.automaton;
  const InvAutomaton& a2 = r2.automaton;
  if (a1.num_vertices() != a2.num_vertices() || a1.num_arcs() != a2.num_arcs()) return std::nullopt;
  std::vector<Word> paths2 = tree_labels(a2);
  for (Vertex y = 0; y < a2.num_vertices(); ++y) {
    if (!isomorphism(a1, a1.basepoint(), a2, y)) continue;
    // h1 = p1 <R1@c1> p1^-1, h2 = p2 <R2@c2> p2^-1 and <R2@y> = q^-1 <R2@c2> q.
    const Word& p1 = r1.tail;
    const Word& p2 = r2.tail;
    const Word& q = paths2[y];
    return reduce(concat(concat(p1, inverse(q)), inverse(p2)));
  }
  return std::nullopt;
}

std::size_t corank(const SubgroupHandle& h) {
  const InvAutomaton& aut = h.automaton();
  std::vector<bool> used(h.alphabet().rank, false);
  for (const Arc& e : aut.arcs()) used[e.letter] = true;
  std::size_t missing = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));

  // Identifying vertices never changes the letter set, so the search only has
  // to collapse St(h) to one vertex; absent letters each cost one generator.
  std::vector<InvAutomaton> frontier{aut};
  std::set<std::vector<std::uint32_t>> seen{aut.encoding()};
  for (std::size_t r = 0;; ++r) {
    for (const InvAutomaton& a : frontier) {
      if (a.num_vertices() == 1) return missing + r;
    }
    std::vector<InvAutomaton> next;
    for (const InvAutomaton& a : frontier) {
      for (Vertex u = 0; u < a.num_vertices(); ++u) {
        for (Vertex v = u + 1; v < a.num_vertices(); ++v) {
          InvAutomaton q = identify(a, u, v);
          if (seen.insert(q.encoding()).second) next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
}

SubgroupHandle hall_complete(const SubgroupHandle& h, const std::vector<Word>& avoid) {
  InvAutomaton k = h.automaton();
  for (const Word& raw : avoid) {
    Word w = reduce(raw, h.alphabet());
    if (w.empty()) throw PreconditionViolation("the empty word lies in every subgroup");
    if (is_member(w, h)) {
      throw PreconditionViolation("avoid-word " + format_word(w, h.alphabet()) + " lies in h");
    }
  }
  for (const Word& raw : avoid) {
    Word w = reduce(raw);
    Vertex cur = k.basepoint();
    std::size_t i = 0;
    while (i < w.size() && k.target(cur, w[i]) != kNoVertex) cur = k.target(cur, w[i++]);
    for (; i < w.size(); ++i) {
      Vertex u = k.add_vertex();
      if (w[i].is_inverse()) {
        k.add_arc(u, w[i].index(), cur);
      } else {
        k.add_arc(cur, w[i].index(), u);
      }
      cur = u;
    }
  }
  for (std::size_t a = 0; a < h.alphabet().rank; ++a) {
    const PartialInjection& t = k.transition(a);
    std::vector<Vertex> no_out, no_in;
    for (Vertex v = 0; v < k.num_vertices(); ++v) {
      if (t.image(v) == kNoVertex) no_out.push_back(v);
      if (t.preimage(v) == kNoVertex) no_in.push_back(v);
    }
    for (std::size_t i = 0; i < no_out.size(); ++i) k.add_arc(no_out[i], a, no_in[i]);
  }
  return SubgroupHandle(k);
}

WhiteheadGraph whitehead_graph(const Alphabet& a, const std::vector<Word>& S) {
  WhiteheadGraph g;
  g.num_vertices = a.num_codes();
  for (const Word& s : S) {
    Word c = cyclic_reduce(reduce(s, a)).core;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Letter x = c[i], y = c[(i + 1) % c.size()];
      g.edges.emplace_back(x.code(), y.inverse().code());
    }
  }
  return g;
}

WhiteheadVerdict whitehead_cut_test(const Alphabet& a, const std::vector<Word>& S) {
  if (S.empty()) throw InvalidInput("whitehead test needs a nonempty word set");
  WhiteheadGraph g = whitehead_graph(a, S);
  std::vector<std::vector<std::uint32_t>> adj(g.num_vertices);
  for (auto [x, y] : g.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  // Number of vertices reached from some vertex other than `removed`.
  auto reach = [&](std::uint32_t removed) {
    std::uint32_t start = removed == 0 ? 1 : 0;
    std::vector<bool> seen(g.num_vertices, false);
    std::vector<std::uint32_t> stack{start};
    seen[start] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t u : adj[v]) {
        if (u == removed || seen[u]) continue;
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
    return count;
  };
  const auto n = static_cast<std::uint32_t>(g.num_vertices);
  if (reach(n) != g.num_vertices) return WhiteheadVerdict::passes;  // disconnected
  for (std::uint32_t v = 0; v < n && n > 2; ++v) {
    if (reach(v) != g.num_vertices - 1) return WhiteheadVerdict::passes;  // cut vertex
  }
  return WhiteheadVerdict::fails;
}

SubgroupHandle rewrite_in_basis(const SubgroupHandle& h, const SubgroupHandle& k) {
  require_same_alphabet(h, k);
  std::vector<Word> kb = basis(k);
  if (kb.empty()) throw PreconditionViolation("cannot rewrite inside the trivial subgroup");
  Alphabet inner(kb.size());
  std::vector<Word> gens;
  for (const Word& g : basis(h)) {
    std::optional<GeneratorWord> e = express(k.alphabet(), g, kb);
    if (!e) throw PreconditionViolation("h is not contained in k");
    Word w;
    for (const GenLetter& x : *e) w.push_back(x.inverse ? Letter::negative(x.index) : Letter::positive(x.index));
    gens.push_back(w);
  }
  return stallings(inner, gens);
}

bool commensurable(const SubgroupHandle& h1, const SubgroupHandle& h2) {
  require_same_alphabet(h1, h2);
  SubgroupHandle meet = intersect(h1, h2);
  auto finite_in = [&](const SubgroupHandle& h) {
    if (h.is_trivial()) return true;
    return index(rewrite_in_basis(meet, h)).finite;
  };
  return finite_in(h1) && finite_in(h2);
}

}  // namespace stallings
