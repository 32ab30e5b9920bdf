#include "stallings/intersect.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

#include "stallings/errors.hpp"
#include "stallings/folding.hpp"

namespace stallings {

namespace {

std::uint64_t key(Vertex x, Vertex y) { return (static_cast<std::uint64_t>(x) << 32) | y; }

class ProductBuilder {
 public:
  ProductBuilder(const InvAutomaton& a1, const InvAutomaton& a2)
      : a1_(a1), a2_(a2), codes_(static_cast<std::uint32_t>(a1.alphabet().num_codes())) {
    p_.alphabet = a1.alphabet();
  }

  // Materializes the whole component of (x, y) if it is new.
  void seed(Vertex x, Vertex y) {
    if (index_.count(key(x, y))) return;
    std::size_t comp = p_.num_components++;
    std::deque<Vertex> queue{intern(x, y, comp)};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      auto [vx, vy] = p_.pairs[v];
      for (std::uint32_t c = 0; c < codes_; ++c) {
        Letter l = Letter::from_code(c);
        Vertex tx = a1_.target(vx, l), ty = a2_.target(vy, l);
        if (tx == kNoVertex || ty == kNoVertex) continue;
        auto it = index_.find(key(tx, ty));
        Vertex t;
        if (it == index_.end()) {
          t = intern(tx, ty, comp);
          queue.push_back(t);
        } else {
          t = it->second;
        }
        if (!l.is_inverse()) p_.arcs.push_back({v, static_cast<std::uint32_t>(l.index()), t});
      }
    }
  }

  Pullback take() {
    p_.vertex_count.assign(p_.num_components, 0);
    p_.arc_count.assign(p_.num_components, 0);
    for (std::size_t c : p_.component) ++p_.vertex_count[c];
    for (const Arc& e : p_.arcs) ++p_.arc_count[p_.component[e.src]];
    return std::move(p_);
  }

 private:
  Vertex intern(Vertex x, Vertex y, std::size_t comp) {
    Vertex id = static_cast<Vertex>(p_.pairs.size());
    index_.emplace(key(x, y), id);
    p_.pairs.emplace_back(x, y);
    p_.component.push_back(comp);
    return id;
  }

  const InvAutomaton& a1_;
  const InvAutomaton& a2_;
  std::uint32_t codes_;
  Pullback p_{Alphabet(1), {}, {}, {}, 0, {}, {}};
  std::unordered_map<std::uint64_t, Vertex> index_;
};

}  // namespace

std::size_t Pullback::component_vertices(std::size_t c) const { return vertex_count.at(c); }

std::size_t Pullback::component_arcs(std::size_t c) const { return arc_count.at(c); }

long long Pullback::component_rank(std::size_t c) const {
  return 1 - static_cast<long long>(component_vertices(c)) + static_cast<long long>(component_arcs(c));
}

long long Pullback::component_reduced_rank(std::size_t c) const {
  long long r = component_rank(c);
  return r > 0 ? r - 1 : 0;
}

InvAutomaton Pullback::component_automaton(std::size_t c, Vertex root) const {
  std::vector<Vertex> local(pairs.size(), kNoVertex);
  Vertex n = 0;
  for (Vertex v = 0; v < pairs.size(); ++v) {
    if (component[v] == c) local[v] = n++;
  }
  if (local.at(root) == kNoVertex) throw InvalidInput("root outside the component");
  InvAutomaton out(alphabet, n, local[root]);
  for (const Arc& e : arcs) {
    if (component[e.src] == c) out.add_arc(local[e.src], e.letter, local[e.dst]);
  }
  return out;
}

Pullback pullback(const InvAutomaton& a1, const InvAutomaton& a2, PullbackScope scope) {
  if (a1.alphabet() != a2.alphabet()) throw InvalidInput("automata over different alphabets");
  ProductBuilder b(a1, a2);
  b.seed(a1.basepoint(), a2.basepoint());
  if (scope == PullbackScope::all_components) {
    // Every vertex pair carrying at least one product arc; isolated pairs are
    // single-vertex trees and contribute nothing.
    for (std::size_t a = 0; a < a1.alphabet().rank; ++a) {
      for (Vertex x = 0; x < a1.num_vertices(); ++x) {
        if (a1.transition(a).image(x) == kNoVertex) continue;
        for (Vertex y = 0; y < a2.num_vertices(); ++y) {
          if (a2.transition(a).image(y) != kNoVertex) b.seed(x, y);
        }
      }
    }
  }
  return b.take();
}

Pullback pullback(const SubgroupHandle& h1, const SubgroupHandle& h2, PullbackScope scope) {
  return pullback(h1.automaton(), h2.automaton(), scope);
}

SubgroupHandle intersect(const SubgroupHandle& h1, const SubgroupHandle& h2) {
  Pullback p = pullback(h1, h2, PullbackScope::base_component);
  return SubgroupHandle(p.component_automaton(0, Pullback::base));
}

CosetAutomaton coset_automaton(const SubgroupHandle& h, const Word& u) {
  Word w = reduce(u, h.alphabet());
  InvAutomaton aut = h.automaton();
  Vertex cur = aut.basepoint();
  for (Letter x : w) {
    Vertex next = aut.target(cur, x);
    if (next == kNoVertex) {
      next = aut.add_vertex();
      if (x.is_inverse()) {
        aut.add_arc(next, x.index(), cur);
      } else {
        aut.add_arc(cur, x.index(), next);
      }
    }
    cur = next;
  }
  Vertex keep[] = {cur};
  TrimResult r = core_keeping(aut, keep);
  return {std::move(r.automaton), r.vertex_map[cur]};
}

std::optional<CosetIntersection> coset_intersect(const SubgroupHandle& h1, const Word& u,
                                                 const SubgroupHandle& h2, const Word& v) {
  if (h1.alphabet() != h2.alphabet()) throw InvalidInput("subgroups live in different free groups");
  CosetAutomaton c1 = coset_automaton(h1, u);
  CosetAutomaton c2 = coset_automaton(h2, v);
  const InvAutomaton& a1 = c1.automaton;
  const InvAutomaton& a2 = c2.automaton;
  const std::uint32_t codes = static_cast<std::uint32_t>(h1.alphabet().num_codes());

  // BFS in the product from the basepoints, remembering how each pair was reached.
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Letter>> parent;
  std::uint64_t start = key(a1.basepoint(), a2.basepoint());
  std::uint64_t goal = key(c1.target, c2.target);
  parent.emplace(start, std::make_pair(start, Letter()));
  std::deque<std::pair<Vertex, Vertex>> queue{{a1.basepoint(), a2.basepoint()}};
  while (!queue.empty() && !parent.count(goal)) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < codes; ++c) {
      Letter l = Letter::from_code(c);
      Vertex tx = a1.target(x, l), ty = a2.target(y, l);
      if (tx == kNoVertex || ty == kNoVertex) continue;
      if (parent.emplace(key(tx, ty), std::make_pair(key(x, y), l)).second) queue.emplace_back(tx, ty);
    }
  }
  if (!parent.count(goal)) return std::nullopt;
  std::vector<Letter> rev;
  for (std::uint64_t at = goal; at != start; at = parent[at].first) rev.push_back(parent[at].second);
  Word w(rev.rbegin(), rev.rend());
  return CosetIntersection{intersect(h1, h2), reduce(w)};
}

MalnormalReport is_malnormal(const SubgroupHandle& h) {
  Pullback p = pullback(h, h, PullbackScope::all_components);
  std::vector<Word> paths = tree_labels(h.automaton());
  MalnormalReport r;
  for (std::size_t c = 1; c < p.num_components; ++c) {
    if (p.component_rank(c) <= 0) continue;
    Vertex first = 0;
    while (p.component[first] != c) ++first;
    auto [x, y] = p.pairs[first];
    // The component at (x, y) recognizes h^p ∩ h^q, so h ∩ h^(q p^-1) != 1.
    r.malnormal = false;
    r.witness = reduce(concat(paths[y], inverse(paths[x])));
    return r;
  }
  return r;
}

ShncReport shnc_check(const SubgroupHandle& h, const SubgroupHandle& k) {
  Pullback p = pullback(h, k, PullbackScope::all_components);
  ShncReport r;
  r.rr_h = h.reduced_rank();
  r.rr_k = k.reduced_rank();
  r.rr_meet = p.component_reduced_rank(0);
  for (std::size_t c = 0; c < p.num_components; ++c) r.component_sum += p.component_reduced_rank(c);
  r.howson_ok = r.rr_meet <= 2 * r.rr_h * r.rr_k;
  r.shnc_ok = r.component_sum <= r.rr_h * r.rr_k;
  return r;
}

std::string to_dot(const Pullback& p, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (Vertex v = 0; v < p.pairs.size(); ++v) {
    os << "  " << v << " [label=\"(" << p.pairs[v].first << ',' << p.pairs[v].second
       << ")\", shape=" << (v == Pullback::base ? "doublecircle" : "circle") << "];\n";
  }
  for (const Arc& e : p.arcs) {
    os << "  " << e.src << " -> " << e.dst << " [label=\""
       << format_letter(Letter::positive(e.letter), p.alphabet) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stallings
