#include "stallings/spectra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "stallings/errors.hpp"
#include "stallings/folding.hpp"
#include "stallings/intersect.hpp"
#include "stallings/subgroup.hpp"

namespace stallings {

namespace {

constexpr std::uint32_t kNoLetter = 0xffffffffu;

struct KeyHash {
  std::size_t operator()(const std::vector<Vertex>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Vertex x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Breadth-first search over the partial maps tau_s induced on an automaton by
// nonempty reduced words s. States are keyed by (tau_s, last letter of s);
// maps with empty domain are dropped since nothing extends them.
class ActionSearch {
 public:
  enum class Outcome { completed, stopped, exhausted };

  ActionSearch(const InvAutomaton& aut, std::size_t max_states)
      : aut_(aut), n_(aut.num_vertices()), max_states_(max_states) {}

  // visit(tau, id) returns true to stop the search.
  template <typename Visit>
  Outcome run(Visit visit) {
    const auto codes = static_cast<std::uint32_t>(aut_.alphabet().num_codes());
    std::unordered_set<std::vector<Vertex>, KeyHash> seen;
    std::deque<std::size_t> queue;

    auto push = [&](std::vector<Vertex> tau, std::uint32_t code, std::size_t parent) -> bool {
      bool any = std::any_of(tau.begin(), tau.end(), [](Vertex v) { return v != kNoVertex; });
      if (!any) return true;
      tau.push_back(code);
      if (!seen.insert(tau).second) return true;
      tau.pop_back();
      if (states_.size() >= max_states_) return false;
      states_.push_back({std::move(tau), code, parent});
      queue.push_back(states_.size() - 1);
      return true;
    };

    for (std::uint32_t c = 0; c < codes; ++c) {
      std::vector<Vertex> tau(n_);
      for (Vertex v = 0; v < n_; ++v) tau[v] = aut_.target(v, Letter::from_code(c));
      if (!push(std::move(tau), c, kNone)) return Outcome::exhausted;
    }
    while (!queue.empty()) {
      std::size_t id = queue.front();
      queue.pop_front();
      if (visit(states_[id].tau, id)) return Outcome::stopped;
      for (std::uint32_t c = 0; c < codes; ++c) {
        if (c == (states_[id].code ^ 1u)) continue;
        std::vector<Vertex> tau(n_, kNoVertex);
        for (Vertex v = 0; v < n_; ++v) {
          Vertex m = states_[id].tau[v];
          if (m != kNoVertex) tau[v] = aut_.target(m, Letter::from_code(c));
        }
        if (!push(std::move(tau), c, id)) return Outcome::exhausted;
      }
    }
    return Outcome::completed;
  }

  Word word_of(std::size_t id) const {
    std::vector<Letter> rev;
    for (std::size_t at = id; at != kNone; at = states_[at].parent) {
      rev.push_back(Letter::from_code(states_[at].code));
    }
    return Word(rev.rbegin(), rev.rend());
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  struct State {
    std::vector<Vertex> tau;
    std::uint32_t code;
    std::size_t parent;
  };

  const InvAutomaton& aut_;
  std::size_t n_;
  std::size_t max_states_;
  std::vector<State> states_;
};

// Cycles of a partial injection, each rotated to start at its least vertex.
std::vector<std::vector<Vertex>> cycles_of(const std::vector<Vertex>& tau) {
  const std::size_t n = tau.size();
  std::vector<char> done(n, 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex v = 0; v < n; ++v) {
    if (done[v]) continue;
    std::vector<Vertex> path;
    Vertex x = v;
    while (x != kNoVertex && !done[x]) {
      done[x] = 1;
      path.push_back(x);
      x = tau[x];
    }
    if (x == v) {
      auto least = std::min_element(path.begin(), path.end());
      std::rotate(path.begin(), least, path.end());
      out.push_back(std::move(path));
    }
  }
  return out;
}

[[noreturn]] void out_of_states(std::size_t cap) {
  throw ResourceLimit("spectrum search exceeded " + std::to_string(cap) + " states");
}

}  // namespace

bool SpectrumReport::contains(std::size_t k) const {
  if (k == 0) return has_zero;
  return std::binary_search(orders.begin(), orders.end(), k);
}

std::size_t relative_order(const Word& w, const SubgroupHandle& h, const Word& u) {
  check_letters(w, h.alphabet());
  CosetAutomaton c = coset_automaton(h, u);
  // A closed trail visits distinct vertices, so orders never exceed #V.
  for (std::size_t k = 1; k <= c.automaton.num_vertices(); ++k) {
    auto end = c.automaton.trace(c.automaton.basepoint(), power(w, static_cast<long long>(k)));
    if (end && *end == c.target) return k;
  }
  return 0;
}

bool is_k_root(const Word& w, const SubgroupHandle& h, long long k) {
  if (k < 0) throw InvalidInput("root exponent must be nonnegative");
  if (k == 0) return true;
  return is_member(power(w, k), h);
}

std::vector<std::pair<Word, std::size_t>> element_roots(const Word& w, const Alphabet& a) {
  Word r = reduce(w, a);
  if (r.empty()) throw InvalidInput("the identity has roots of every order");
  CyclicReduction cr = cyclic_reduce(r);
  const std::size_t len = cr.core.size();
  std::size_t period = len;
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < len && ok; ++i) ok = cr.core[i] == cr.core[i - p];
    if (ok) {
      period = p;
      break;
    }
  }
  const std::size_t m = len / period;
  std::vector<std::pair<Word, std::size_t>> out;
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    Word base(cr.core.begin(), cr.core.begin() + static_cast<std::ptrdiff_t>(period * (m / d)));
    out.emplace_back(multiply(multiply(cr.conjugator, base), inverse(cr.conjugator)), d);
  }
  return out;
}

SpectrumReport spectrum(const SubgroupHandle& h, const Word& u, std::size_t max_states) {
  CosetAutomaton c = coset_automaton(h, u);
  const InvAutomaton& aut = c.automaton;
  const std::size_t n = aut.num_vertices();
  const bool in_subgroup = c.target == aut.basepoint();

  SpectrumReport report;
  report.has_zero = in_subgroup ? !index(h).finite : true;
  std::set<std::size_t> orders{1};

  // g = c s c^-1 has relative order k iff s moves x = *.c to z = e.c in
  // exactly k steps. Pairs (x, z) are those reachable from (*, e).
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (!in_subgroup) {
    const auto codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
    std::set<std::pair<Vertex, Vertex>> seen{{aut.basepoint(), c.target}};
    std::deque<std::pair<Vertex, Vertex>> queue{{aut.basepoint(), c.target}};
    while (!queue.empty()) {
      auto [x, z] = queue.front();
      queue.pop_front();
      pairs.emplace_back(x, z);
      for (std::uint32_t code = 0; code < codes; ++code) {
        Vertex tx = aut.target(x, Letter::from_code(code));
        Vertex tz = aut.target(z, Letter::from_code(code));
        if (tx == kNoVertex || tz == kNoVertex) continue;
        if (seen.emplace(tx, tz).second) queue.emplace_back(tx, tz);
      }
    }
  }

  ActionSearch search(aut, max_states);
  auto outcome = search.run([&](const std::vector<Vertex>& tau, std::size_t) {
    if (in_subgroup) {
      for (const auto& cyc : cycles_of(tau)) orders.insert(cyc.size());
      return false;
    }
    for (auto [x, z] : pairs) {
      Vertex y = x;
      for (std::size_t i = 1; i <= n; ++i) {
        y = tau[y];
        if (y == kNoVertex) break;
        if (y == z) {
          orders.insert(i);
          break;
        }
      }
    }
    return false;
  });
  if (outcome == ActionSearch::Outcome::exhausted) out_of_states(max_states);
  report.orders.assign(orders.begin(), orders.end());
  return report;
}

std::vector<Trail> proper_trails(const SubgroupHandle& h, std::size_t max_states) {
  std::map<std::vector<Vertex>, Word> found;
  ActionSearch search(h.automaton(), max_states);
  auto outcome = search.run([&](const std::vector<Vertex>& tau, std::size_t id) {
    for (auto& cyc : cycles_of(tau)) {
      if (cyc.size() >= 2 && !found.count(cyc)) found.emplace(std::move(cyc), search.word_of(id));
    }
    return false;
  });
  if (outcome == ActionSearch::Outcome::exhausted) out_of_states(max_states);
  std::vector<Trail> out;
  out.reserve(found.size());
  for (auto& [verts, word] : found) out.push_back({verts, word});
  return out;
}

std::vector<Word> proper_root_representatives(const SubgroupHandle& h, std::size_t max_states) {
  std::vector<Word> labels = tree_labels(h.automaton());
  std::set<Word> out;
  for (const Trail& t : proper_trails(h, max_states)) {
    const Word& p = labels[t.vertices.front()];
    out.insert(multiply(multiply(p, t.realizer), inverse(p)));
  }
  return {out.begin(), out.end()};
}

std::optional<bool> is_pure_bounded(const SubgroupHandle& h, std::size_t max_states) {
  ActionSearch search(h.automaton(), max_states);
  auto outcome = search.run([](const std::vector<Vertex>& tau, std::size_t) {
    for (const auto& cyc : cycles_of(tau)) {
      if (cyc.size() >= 2) return true;
    }
    return false;
  });
  switch (outcome) {
    case ActionSearch::Outcome::stopped: return false;
    case ActionSearch::Outcome::completed: return true;
    case ActionSearch::Outcome::exhausted: break;
  }
  return std::nullopt;
}

bool is_pure(const SubgroupHandle& h, std::size_t max_states) {
  auto verdict = is_pure_bounded(h, max_states);
  if (!verdict) out_of_states(max_states);
  return *verdict;
}

PureClosure pure_closure(const SubgroupHandle& h, std::size_t max_states, std::size_t max_iterations) {
  PureClosure out{h, 0};
  while (true) {
    std::vector<Word> roots = proper_root_representatives(out.result, max_states);
    if (roots.empty()) return out;
    if (out.iterations == max_iterations) {
      throw ResourceLimit("pure closure did not stabilize in " + std::to_string(max_iterations) +
                          " rounds");
    }
    std::vector<Word> gens = basis(out.result);
    gens.insert(gens.end(), roots.begin(), roots.end());
    out.result = stallings(h.alphabet(), gens);
    ++out.iterations;
  }
}

}  // namespace stallings
