#include "stallings/folding.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "stallings/errors.hpp"

namespace stallings {

namespace {

constexpr std::size_t kNoArc = static_cast<std::size_t>(-1);

struct PetalLayout {
  std::vector<std::size_t> generator;  // petal -> original generator index
  std::vector<std::size_t> first_arc;
  std::vector<Word> word;              // reduced petal label
  std::vector<std::size_t> arc_petal;  // arc -> petal
  std::vector<std::size_t> arc_pos;    // arc -> position along the petal
  std::vector<std::size_t> vertex_petal;  // internal vertex -> petal
  std::vector<std::size_t> vertex_pos;    // internal vertex -> position (1..len-1)
};

Multigraph build_flower(const Alphabet& a, const std::vector<Word>& gens, PetalLayout* layout) {
  Multigraph m{a, 1, 0, {}};
  if (layout) {
    layout->vertex_petal.assign(1, kNoArc);
    layout->vertex_pos.assign(1, 0);
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Word w = reduce(gens[g], a);
    if (w.empty()) continue;
    if (layout) {
      layout->generator.push_back(g);
      layout->first_arc.push_back(m.arcs.size());
      layout->word.push_back(w);
    }
    Vertex prev = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      Vertex next = 0;
      if (j + 1 < w.size()) {
        next = static_cast<Vertex>(m.num_vertices++);
        if (layout) {
          layout->vertex_petal.push_back(layout->generator.size() - 1);
          layout->vertex_pos.push_back(j + 1);
        }
      }
      Letter x = w[j];
      if (x.is_inverse()) {
        m.arcs.push_back({next, static_cast<std::uint32_t>(x.index()), prev});
      } else {
        m.arcs.push_back({prev, static_cast<std::uint32_t>(x.index()), next});
      }
      if (layout) {
        layout->arc_petal.push_back(layout->generator.size() - 1);
        layout->arc_pos.push_back(j);
      }
      prev = next;
    }
  }
  return m;
}

Vertex near_end(const Arc& e, Letter side) { return side.is_inverse() ? e.dst : e.src; }
Vertex far_end(const Arc& e, Letter side) { return side.is_inverse() ? e.src : e.dst; }

class FoldEngine {
 public:
  FoldEngine(const Multigraph& m, const FoldOptions& opt)
      : m_(m),
        codes_(m.alphabet.num_codes()),
        parent_(m.num_vertices),
        size_(m.num_vertices, 1),
        slots_(m.num_vertices * codes_, kNoArc),
        alive_(m.arcs.size(), true) {
    for (std::size_t v = 0; v < parent_.size(); ++v) parent_[v] = static_cast<Vertex>(v);
    if (opt.shuffle_seed) rng_.emplace(*opt.shuffle_seed);
  }

  FoldResult run() {
    std::vector<std::size_t> order(m_.arcs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (rng_) std::shuffle(order.begin(), order.end(), *rng_);
    for (std::size_t e : order) {
      const Arc& arc = m_.arcs[e];
      if (arc.src >= m_.num_vertices || arc.dst >= m_.num_vertices || arc.letter >= m_.alphabet.rank) {
        throw InvalidInput("multigraph arc out of range");
      }
      attach(e);
    }
    while (!pending_.empty()) {
      Conflict c = pop();
      resolve(c);
    }
    return finish();
  }

 private:
  struct Conflict {
    std::size_t a, b;
    Letter side;
  };

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  std::size_t& slot(Vertex rep, Letter c) { return slots_[rep * codes_ + c.code()]; }

  void try_slot(Vertex rep, Letter c, std::size_t e) {
    std::size_t& s = slot(rep, c);
    if (s == kNoArc) {
      s = e;
    } else if (s != e) {
      pending_.push_back({s, e, c});
    }
  }

  void attach(std::size_t e) {
    const Arc& arc = m_.arcs[e];
    try_slot(find(arc.src), Letter::positive(arc.letter), e);
    try_slot(find(arc.dst), Letter::negative(arc.letter), e);
  }

  void detach(std::size_t e) {
    const Arc& arc = m_.arcs[e];
    std::size_t& s1 = slot(find(arc.src), Letter::positive(arc.letter));
    if (s1 == e) s1 = kNoArc;
    std::size_t& s2 = slot(find(arc.dst), Letter::negative(arc.letter));
    if (s2 == e) s2 = kNoArc;
  }

  Conflict pop() {
    if (rng_) {
      std::uniform_int_distribution<std::size_t> pick(0, pending_.size() - 1);
      std::swap(pending_[pick(*rng_)], pending_.back());
      Conflict c = pending_.back();
      pending_.pop_back();
      return c;
    }
    Conflict c = pending_.front();
    pending_.pop_front();
    return c;
  }

  void resolve(const Conflict& c) {
    if (!alive_[c.a] || !alive_[c.b]) {
      // The partner was folded away meanwhile; give the survivor its slots back.
      if (alive_[c.a]) attach(c.a);
      if (alive_[c.b]) attach(c.b);
      return;
    }
    const Arc& kept = m_.arcs[c.a];
    const Arc& removed = m_.arcs[c.b];
    Vertex fa = far_end(kept, c.side), fb = far_end(removed, c.side);
    detach(c.b);
    alive_[c.b] = false;
    Vertex ra = find(fa), rb = find(fb);
    if (ra == rb) {
      events_.push_back({FoldEvent::Kind::closed, c.a, c.b, c.side, fa, fb});
      return;
    }
    events_.push_back({FoldEvent::Kind::open, c.a, c.b, c.side, fa, fb});
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    for (std::uint32_t code = 0; code < codes_; ++code) {
      std::size_t& s = slots_[rb * codes_ + code];
      std::size_t e = s;
      s = kNoArc;
      if (e != kNoArc && alive_[e]) try_slot(ra, Letter::from_code(code), e);
    }
  }

  FoldResult finish() {
    const std::size_t n = m_.num_vertices;
    std::vector<Vertex> id(n, kNoVertex);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) {
      Vertex r = find(v);
      if (id[r] == kNoVertex) id[r] = next++;
    }
    FoldingTrace trace;
    trace.vertex_map.resize(n);
    for (Vertex v = 0; v < n; ++v) trace.vertex_map[v] = id[find(v)];
    InvAutomaton aut(m_.alphabet, next, trace.vertex_map[m_.basepoint]);
    trace.arc_of_slot.assign(static_cast<std::size_t>(next) * m_.alphabet.rank, kNoArc);
    for (std::size_t e = 0; e < m_.arcs.size(); ++e) {
      if (!alive_[e]) continue;
      const Arc& arc = m_.arcs[e];
      Vertex s = trace.vertex_map[arc.src];
      aut.add_arc(s, arc.letter, trace.vertex_map[arc.dst]);
      trace.arc_of_slot[static_cast<std::size_t>(s) * m_.alphabet.rank + arc.letter] = e;
    }
    trace.events = std::move(events_);
    return {std::move(aut), std::move(trace)};
  }

  const Multigraph& m_;
  std::size_t codes_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> slots_;
  std::vector<bool> alive_;
  std::deque<Conflict> pending_;
  std::vector<FoldEvent> events_;
  std::optional<std::mt19937_64> rng_;
};

// ---------------------------------------------------------------------------
// Lifting walks from the folded automaton back to the flower.

struct Step {
  std::size_t arc;
  bool forward;  // src -> dst
  friend bool operator==(const Step&, const Step&) = default;
};

class Lifter {
 public:
  Lifter(const Multigraph& m, const PetalLayout& layout, const FoldingTrace& trace)
      : m_(m), layout_(layout), trace_(trace), forest_(m.num_vertices) {
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const FoldEvent& ev = trace.events[i];
      if (ev.kind != FoldEvent::Kind::open) continue;
      forest_[ev.merged_a].push_back({ev.merged_b, i});
      forest_[ev.merged_b].push_back({ev.merged_a, i});
    }
  }

  // Walk in the flower between two vertices identified by folding, reading a
  // word that reduces to the empty word.
  void connect(Vertex from, Vertex to, std::vector<Step>& out) const {
    if (from == to) return;
    // Unique path in the explanation forest.
    std::vector<std::pair<Vertex, std::size_t>> via(m_.num_vertices, {kNoVertex, 0});
    std::vector<bool> seen(m_.num_vertices, false);
    std::deque<Vertex> queue{from};
    seen[from] = true;
    while (!queue.empty() && !seen[to]) {
      Vertex v = queue.front();
      queue.pop_front();
      for (const auto& [u, ev] : forest_[v]) {
        if (seen[u]) continue;
        seen[u] = true;
        via[u] = {v, ev};
        queue.push_back(u);
      }
    }
    if (!seen[to]) throw std::logic_error("fold trace does not connect identified vertices");
    std::vector<std::tuple<Vertex, Vertex, std::size_t>> hops;
    for (Vertex v = to; v != from; v = via[v].first) hops.emplace_back(via[v].first, v, via[v].second);
    std::reverse(hops.begin(), hops.end());
    for (const auto& [x, y, ev] : hops) explain(ev, x, y, out);
  }

  // Walk x -> y across the identification made by open event `ev`.
  void explain(std::size_t ev_index, Vertex x, Vertex y, std::vector<Step>& out) const {
    const FoldEvent& ev = trace_.events[ev_index];
    const Arc& kept = m_.arcs[ev.kept];
    const Arc& removed = m_.arcs[ev.removed];
    bool positive = !ev.side.is_inverse();
    // near -> far along an arc is forward iff the shared side reads a positive letter.
    if (x == ev.merged_b && y == ev.merged_a) {
      out.push_back({ev.removed, !positive});
      connect(near_end(removed, ev.side), near_end(kept, ev.side), out);
      out.push_back({ev.kept, positive});
    } else {
      out.push_back({ev.kept, !positive});
      connect(near_end(kept, ev.side), near_end(removed, ev.side), out);
      out.push_back({ev.removed, positive});
    }
  }

  Vertex step_start(const Step& s) const { return s.forward ? m_.arcs[s.arc].src : m_.arcs[s.arc].dst; }
  Vertex step_end(const Step& s) const { return s.forward ? m_.arcs[s.arc].dst : m_.arcs[s.arc].src; }

  // Path from the basepoint to v inside v's petal.
  std::vector<Step> tree_path(Vertex v) const {
    std::vector<Step> out;
    if (v == m_.basepoint) return out;
    std::size_t p = layout_.vertex_petal[v];
    const Word& w = layout_.word[p];
    for (std::size_t j = 0; j < layout_.vertex_pos[v]; ++j) {
      out.push_back({layout_.first_arc[p] + j, !w[j].is_inverse()});
    }
    return out;
  }

  static std::vector<Step> reverse_walk(const std::vector<Step>& walk) {
    std::vector<Step> out;
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) out.push_back({it->arc, !it->forward});
    return out;
  }

  static std::vector<Step> reduce_walk(const std::vector<Step>& walk) {
    std::vector<Step> out;
    for (const Step& s : walk) {
      if (!out.empty() && out.back().arc == s.arc && out.back().forward != s.forward) {
        out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

  // A reduced closed walk at the basepoint of a flower runs around whole petals.
  GeneratorWord read_petals(const std::vector<Step>& walk) const {
    GeneratorWord out;
    std::size_t i = 0;
    while (i < walk.size()) {
      const Step& s = walk[i];
      std::size_t p = layout_.arc_petal[s.arc];
      const Word& w = layout_.word[p];
      std::size_t pos = layout_.arc_pos[s.arc];
      bool along = s.forward == !w[pos].is_inverse();
      if (along && pos != 0) throw std::logic_error("lifted walk enters a petal mid-way");
      if (!along && pos != w.size() - 1) throw std::logic_error("lifted walk enters a petal mid-way");
      out.push_back({layout_.generator[p], !along});
      i += w.size();
    }
    if (i != walk.size()) throw std::logic_error("lifted walk ends inside a petal");
    return out;
  }

 private:
  const Multigraph& m_;
  const PetalLayout& layout_;
  const FoldingTrace& trace_;
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> forest_;
};

GeneratorWord reduce_generator_word(const GeneratorWord& g) {
  GeneratorWord out;
  for (const GenLetter& x : g) {
    if (!out.empty() && out.back().index == x.index && out.back().inverse != x.inverse) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

std::size_t FoldingTrace::loss() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const FoldEvent& e) {
    return e.kind == FoldEvent::Kind::closed;
  }));
}

Multigraph flower(const Alphabet& a, const std::vector<Word>& generators) {
  return build_flower(a, generators, nullptr);
}

Multigraph to_multigraph(const InvAutomaton& aut) {
  return {aut.alphabet(), aut.num_vertices(), aut.basepoint(), aut.arcs()};
}

FoldResult fold(const Multigraph& m, const FoldOptions& options) {
  if (m.basepoint >= m.num_vertices) throw InvalidInput("multigraph basepoint out of range");
  return FoldEngine(m, options).run();
}

SubgroupHandle stallings(const Alphabet& a, const std::vector<Word>& generators) {
  return SubgroupHandle(fold(flower(a, generators)).automaton);
}

std::vector<Word> basis(const SubgroupHandle& h) {
  const InvAutomaton& aut = h.automaton();
  const std::size_t n = aut.num_vertices();
  const std::uint32_t codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
  std::vector<Word> label(n);
  std::vector<bool> seen(n, false);
  // tree_edge[v] = (parent, letter code) used to discover v
  std::vector<std::pair<Vertex, std::uint32_t>> tree_edge(n, {kNoVertex, 0});
  std::deque<Vertex> queue{aut.basepoint()};
  seen[aut.basepoint()] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < codes; ++c) {
      Vertex t = aut.target(v, Letter::from_code(c));
      if (t == kNoVertex || seen[t]) continue;
      seen[t] = true;
      tree_edge[t] = {v, c};
      label[t] = label[v];
      label[t].push_back(Letter::from_code(c));
      queue.push_back(t);
    }
  }
  auto in_tree = [&](const Arc& e) {
    auto [p1, c1] = tree_edge[e.dst];
    if (p1 == e.src && c1 == 2 * e.letter) return true;
    auto [p2, c2] = tree_edge[e.src];
    return p2 == e.dst && c2 == 2 * e.letter + 1;
  };
  std::vector<Word> out;
  for (const Arc& e : aut.arcs()) {
    if (in_tree(e)) continue;
    Word w = label[e.src];
    w.push_back(Letter::positive(e.letter));
    out.push_back(reduce(concat(w, inverse(label[e.dst]))));
  }
  return out;
}

std::size_t loss(const Alphabet& a, const std::vector<Word>& generators) {
  return fold(flower(a, generators)).trace.loss();
}

std::optional<GeneratorWord> express(const Alphabet& a, const Word& w,
                                     const std::vector<Word>& generators) {
  Word target = reduce(w, a);
  PetalLayout layout;
  Multigraph m = build_flower(a, generators, &layout);
  FoldResult folded = fold(m);
  const InvAutomaton& aut = folded.automaton;
  if (aut.trace(aut.basepoint(), target) != aut.basepoint()) return std::nullopt;

  Lifter lift(m, layout, folded.trace);
  std::vector<Step> walk;
  Vertex here = aut.basepoint();
  Vertex flower_here = m.basepoint;
  for (Letter x : target) {
    Vertex next = aut.target(here, x);
    Vertex tail = x.is_inverse() ? next : here;
    std::size_t e = folded.trace.arc_of_slot[static_cast<std::size_t>(tail) * a.rank + x.index()];
    Step s{e, !x.is_inverse()};
    lift.connect(flower_here, lift.step_start(s), walk);
    walk.push_back(s);
    flower_here = lift.step_end(s);
    here = next;
  }
  lift.connect(flower_here, m.basepoint, walk);
  return reduce_generator_word(lift.read_petals(Lifter::reduce_walk(walk)));
}

std::vector<GeneratorWord> relations(const Alphabet& a, const std::vector<Word>& generators) {
  PetalLayout layout;
  Multigraph m = build_flower(a, generators, &layout);
  FoldResult folded = fold(m);
  Lifter lift(m, layout, folded.trace);
  std::vector<GeneratorWord> out;
  for (const FoldEvent& ev : folded.trace.events) {
    if (ev.kind != FoldEvent::Kind::closed) continue;
    const Arc& kept = m.arcs[ev.kept];
    const Arc& removed = m.arcs[ev.removed];
    bool positive = !ev.side.is_inverse();
    Vertex start = near_end(removed, ev.side);
    std::vector<Step> walk = lift.tree_path(start);
    walk.push_back({ev.removed, positive});
    lift.connect(far_end(removed, ev.side), far_end(kept, ev.side), walk);
    walk.push_back({ev.kept, !positive});
    lift.connect(near_end(kept, ev.side), start, walk);
    std::vector<Step> back = Lifter::reverse_walk(lift.tree_path(start));
    walk.insert(walk.end(), back.begin(), back.end());
    out.push_back(reduce_generator_word(lift.read_petals(Lifter::reduce_walk(walk))));
  }
  return out;
}

Word expand(const GeneratorWord& g, const std::vector<Word>& generators) {
  Word out;
  for (const GenLetter& x : g) {
    const Word& w = generators.at(x.index);
    out.append(x.inverse ? inverse(w) : w);
  }
  return reduce(out);
}

std::string format_generator_word(const GeneratorWord& g) {
  if (g.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ' ';
    out += (g[i].inverse ? '-' : '+') + std::to_string(g[i].index);
  }
  return out;
}

}  // namespace stallings
