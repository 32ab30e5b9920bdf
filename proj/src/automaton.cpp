#include "stallings/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "stallings/errors.hpp"

namespace stallings {

std::size_t PartialInjection::domain_size() const {
  return static_cast<std::size_t>(
      std::count_if(image_.begin(), image_.end(), [](Vertex v) { return v != kNoVertex; }));
}

bool PartialInjection::try_set(Vertex u, Vertex v) {
  if (image_[u] == v) return true;
  if (image_[u] != kNoVertex || preimage_[v] != kNoVertex) return false;
  image_[u] = v;
  preimage_[v] = u;
  return true;
}

void PartialInjection::set(Vertex u, Vertex v) {
  if (!try_set(u, v)) throw InvalidInput("arc breaks determinism");
}

void PartialInjection::unset(Vertex u) {
  Vertex v = image_[u];
  if (v == kNoVertex) return;
  image_[u] = kNoVertex;
  preimage_[v] = kNoVertex;
}

void PartialInjection::resize(std::size_t n) {
  image_.resize(n, kNoVertex);
  preimage_.resize(n, kNoVertex);
}

InvAutomaton::InvAutomaton(Alphabet a, std::size_t n_vertices, Vertex basepoint)
    : alphabet_(a), n_(n_vertices), base_(basepoint), tau_(a.rank, PartialInjection(n_vertices)) {
  if (n_vertices == 0) throw InvalidInput("automaton needs at least one vertex");
  if (basepoint >= n_vertices) throw InvalidInput("basepoint out of range");
}

InvAutomaton InvAutomaton::rose(Alphabet a) {
  InvAutomaton r(a, 1, 0);
  for (std::size_t i = 0; i < a.rank; ++i) r.add_arc(0, i, 0);
  return r;
}

std::size_t InvAutomaton::num_arcs() const noexcept {
  std::size_t e = 0;
  for (const auto& t : tau_) e += t.domain_size();
  return e;
}

void InvAutomaton::check_vertex(Vertex v) const {
  if (v >= n_) throw InvalidInput("vertex id " + std::to_string(v) + " out of range");
}

void InvAutomaton::set_basepoint(Vertex v) {
  check_vertex(v);
  base_ = v;
}

Vertex InvAutomaton::add_vertex() {
  for (auto& t : tau_) t.resize(n_ + 1);
  return static_cast<Vertex>(n_++);
}

void InvAutomaton::add_arc(Vertex src, std::size_t letter, Vertex dst) {
  if (!try_add_arc(src, letter, dst)) {
    throw InvalidInput("arc " + std::to_string(src) + " -" + std::to_string(letter) + "-> " +
                       std::to_string(dst) + " breaks determinism");
  }
}

bool InvAutomaton::try_add_arc(Vertex src, std::size_t letter, Vertex dst) {
  check_vertex(src);
  check_vertex(dst);
  if (letter >= alphabet_.rank) throw InvalidInput("letter out of alphabet");
  return tau_[letter].try_set(src, dst);
}

void InvAutomaton::remove_arc(Vertex src, std::size_t letter) {
  check_vertex(src);
  tau_[letter].unset(src);
}

std::vector<Arc> InvAutomaton::arcs() const {
  std::vector<Arc> out;
  for (Vertex v = 0; v < n_; ++v) {
    for (std::uint32_t a = 0; a < alphabet_.rank; ++a) {
      Vertex t = tau_[a].image(v);
      if (t != kNoVertex) out.push_back({v, a, t});
    }
  }
  return out;
}

std::size_t InvAutomaton::degree(Vertex v) const {
  std::size_t d = 0;
  for (const auto& t : tau_) d += (t.image(v) != kNoVertex) + (t.preimage(v) != kNoVertex);
  return d;
}

std::size_t InvAutomaton::deficit(Letter x) const {
  std::size_t d = 0;
  for (Vertex v = 0; v < n_; ++v) d += target(v, x) == kNoVertex;
  return d;
}

bool InvAutomaton::is_saturated() const {
  for (const auto& t : tau_) {
    if (t.domain_size() != n_) return false;
  }
  return true;
}

bool InvAutomaton::is_connected() const { return bfs_order(*this, base_).size() == n_; }

long long InvAutomaton::rank() const {
  return 1 - static_cast<long long>(n_) + static_cast<long long>(num_arcs());
}

std::optional<Vertex> InvAutomaton::trace(Vertex v, const Word& w) const {
  check_vertex(v);
  for (Letter x : w) {
    if (x.index() >= alphabet_.rank) throw InvalidInput("letter outside alphabet");
    v = target(v, x);
    if (v == kNoVertex) return std::nullopt;
  }
  return v;
}

void InvAutomaton::validate() const {
  check_vertex(base_);
  if (!is_connected()) throw InvalidInput("automaton is not connected");
}

std::vector<std::uint32_t> InvAutomaton::encoding() const {
  std::vector<std::uint32_t> out;
  out.reserve(2 + n_ * alphabet_.rank);
  out.push_back(static_cast<std::uint32_t>(n_));
  out.push_back(base_);
  for (Vertex v = 0; v < n_; ++v) {
    for (const auto& t : tau_) out.push_back(t.image(v));
  }
  return out;
}

bool encoding_less(const InvAutomaton& a, const InvAutomaton& b) {
  if (a.alphabet().rank != b.alphabet().rank) return a.alphabet().rank < b.alphabet().rank;
  return a.encoding() < b.encoding();
}

// ---------------------------------------------------------------------------
// Trimming

namespace {

InvAutomaton compact(const InvAutomaton& aut, const std::vector<bool>& alive, Vertex base,
                     std::vector<Vertex>& map) {
  map.assign(aut.num_vertices(), kNoVertex);
  Vertex next = 0;
  for (Vertex v = 0; v < aut.num_vertices(); ++v) {
    if (alive[v]) map[v] = next++;
  }
  InvAutomaton out(aut.alphabet(), next, map[base]);
  for (const Arc& e : aut.arcs()) {
    if (alive[e.src] && alive[e.dst]) out.add_arc(map[e.src], e.letter, map[e.dst]);
  }
  return out;
}

// Repeatedly delete degree <= 1 vertices outside `keep`. Returns alive flags.
std::vector<bool> prune_leaves(const InvAutomaton& aut, const std::vector<bool>& keep,
                               std::vector<std::size_t>& deg) {
  const std::size_t n = aut.num_vertices();
  std::vector<bool> alive(n, true);
  deg.resize(n);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = aut.degree(v);
    if (deg[v] <= 1 && !keep[v]) stack.push_back(v);
  }
  const std::uint32_t codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (std::uint32_t c = 0; c < codes; ++c) {
      Vertex t = aut.target(v, Letter::from_code(c));
      if (t == kNoVertex || !alive[t]) continue;
      if (--deg[t] <= 1 && !keep[t]) stack.push_back(t);
    }
  }
  return alive;
}

}  // namespace

TrimResult core_keeping(const InvAutomaton& aut, std::span<const Vertex> keep) {
  std::vector<bool> keep_flags(aut.num_vertices(), false);
  keep_flags[aut.basepoint()] = true;
  for (Vertex v : keep) keep_flags.at(v) = true;
  std::vector<std::size_t> deg;
  std::vector<bool> alive = prune_leaves(aut, keep_flags, deg);
  TrimResult r{InvAutomaton::trivial(aut.alphabet()), 0, {}, {}};
  r.automaton = compact(aut, alive, aut.basepoint(), r.vertex_map);
  return r;
}

TrimResult trim(const InvAutomaton& aut, TrimMode mode) {
  std::vector<bool> keep(aut.num_vertices(), false);
  keep[aut.basepoint()] = true;
  std::vector<std::size_t> deg;
  std::vector<bool> alive = prune_leaves(aut, keep, deg);

  Vertex base = aut.basepoint();
  std::size_t tail = 0;
  Word label;
  const std::uint32_t codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
  if (mode == TrimMode::restricted_core) {
    // Walk the tail: the basepoint has exactly one live neighbour while on it.
    while (deg[base] == 1) {
      Vertex next = kNoVertex;
      Letter via;
      for (std::uint32_t c = 0; c < codes && next == kNoVertex; ++c) {
        Vertex t = aut.target(base, Letter::from_code(c));
        if (t != kNoVertex && alive[t]) {
          next = t;
          via = Letter::from_code(c);
        }
      }
      alive[base] = false;
      --deg[next];
      base = next;
      label.push_back(via);
      ++tail;
    }
  }
  TrimResult r{InvAutomaton::trivial(aut.alphabet()), tail, std::move(label), {}};
  r.automaton = compact(aut, alive, base, r.vertex_map);
  return r;
}

// ---------------------------------------------------------------------------
// Canonical forms

std::vector<Vertex> bfs_order(const InvAutomaton& aut, Vertex root) {
  const std::size_t n = aut.num_vertices();
  const std::uint32_t codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
  std::vector<bool> seen(n, false);
  std::vector<Vertex> order;
  order.reserve(n);
  order.push_back(root);
  seen[root] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Vertex v = order[head];
    for (std::uint32_t c = 0; c < codes; ++c) {
      Vertex t = aut.target(v, Letter::from_code(c));
      if (t != kNoVertex && !seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

InvAutomaton canonicalize_at(const InvAutomaton& aut, Vertex root) {
  std::vector<Vertex> order = bfs_order(aut, root);
  std::vector<Vertex> label(aut.num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<Vertex>(i);
  InvAutomaton out(aut.alphabet(), order.size(), 0);
  for (const Arc& e : aut.arcs()) {
    if (label[e.src] != kNoVertex) out.add_arc(label[e.src], e.letter, label[e.dst]);
  }
  return out;
}

InvAutomaton canonicalize(const InvAutomaton& aut) { return canonicalize_at(aut, aut.basepoint()); }

InvAutomaton unbased_canonical(const InvAutomaton& aut) {
  InvAutomaton best = canonicalize_at(aut, 0);
  auto best_code = best.encoding();
  for (Vertex v = 1; v < aut.num_vertices(); ++v) {
    InvAutomaton c = canonicalize_at(aut, v);
    auto code = c.encoding();
    if (code < best_code) {
      best = std::move(c);
      best_code = std::move(code);
    }
  }
  return best;
}

std::vector<Word> tree_labels(const InvAutomaton& aut) {
  const std::size_t n = aut.num_vertices();
  const std::uint32_t codes = static_cast<std::uint32_t>(aut.alphabet().num_codes());
  std::vector<Word> label(n);
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue{aut.basepoint()};
  seen[aut.basepoint()] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t c = 0; c < codes; ++c) {
      Vertex t = aut.target(v, Letter::from_code(c));
      if (t != kNoVertex && !seen[t]) {
        seen[t] = true;
        label[t] = label[v];
        label[t].push_back(Letter::from_code(c));
        queue.push_back(t);
      }
    }
  }
  return label;
}

std::optional<std::vector<Vertex>> isomorphism(const InvAutomaton& a, Vertex ra,
                                               const InvAutomaton& b, Vertex rb) {
  if (a.num_vertices() != b.num_vertices() || a.num_arcs() != b.num_arcs() ||
      a.alphabet() != b.alphabet()) {
    return std::nullopt;
  }
  const std::size_t n = a.num_vertices();
  const std::uint32_t codes = static_cast<std::uint32_t>(a.alphabet().num_codes());
  std::vector<Vertex> fwd(n, kNoVertex), back(n, kNoVertex);
  std::vector<Vertex> queue{ra};
  fwd[ra] = rb;
  back[rb] = ra;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    Vertex y = fwd[x];
    for (std::uint32_t c = 0; c < codes; ++c) {
      Letter l = Letter::from_code(c);
      Vertex xt = a.target(x, l), yt = b.target(y, l);
      if ((xt == kNoVertex) != (yt == kNoVertex)) return std::nullopt;
      if (xt == kNoVertex) continue;
      if (fwd[xt] == kNoVertex) {
        if (back[yt] != kNoVertex) return std::nullopt;
        fwd[xt] = yt;
        back[yt] = xt;
        queue.push_back(xt);
      } else if (fwd[xt] != yt) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != n) return std::nullopt;
  return fwd;
}

std::optional<std::vector<Vertex>> embedding(const InvAutomaton& small, const InvAutomaton& big) {
  if (small.alphabet() != big.alphabet()) return std::nullopt;
  const std::uint32_t codes = static_cast<std::uint32_t>(small.alphabet().num_codes());
  std::vector<Vertex> fwd(small.num_vertices(), kNoVertex);
  std::vector<bool> used(big.num_vertices(), false);
  std::vector<Vertex> queue{small.basepoint()};
  fwd[small.basepoint()] = big.basepoint();
  used[big.basepoint()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (std::uint32_t c = 0; c < codes; ++c) {
      Letter l = Letter::from_code(c);
      Vertex xt = small.target(x, l);
      if (xt == kNoVertex) continue;
      Vertex yt = big.target(fwd[x], l);
      if (yt == kNoVertex) return std::nullopt;
      if (fwd[xt] == kNoVertex) {
        if (used[yt]) return std::nullopt;
        fwd[xt] = yt;
        used[yt] = true;
        queue.push_back(xt);
      } else if (fwd[xt] != yt) {
        return std::nullopt;
      }
    }
  }
  return fwd;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_text(const InvAutomaton& aut) {
  std::ostringstream os;
  os << "stallings v=" << aut.num_vertices() << " base=" << aut.basepoint()
     << " rank_alphabet=" << aut.alphabet().rank << '\n';
  for (const Arc& e : aut.arcs()) {
    os << e.src << ' ' << format_letter(Letter::positive(e.letter), aut.alphabet()) << ' ' << e.dst
       << '\n';
  }
  return os.str();
}

InvAutomaton from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line)) throw InvalidInput("empty automaton document");
  std::size_t n = 0, base = 0, rank = 0;
  {
    std::istringstream head(line);
    std::string magic, vf, bf, rf;
    head >> magic >> vf >> bf >> rf;
    auto field = [&](const std::string& f, std::string_view key) -> std::size_t {
      if (f.rfind(key, 0) != 0) throw InvalidInput("bad automaton header: " + line);
      try {
        return std::stoul(f.substr(key.size()));
      } catch (const std::exception&) {
        throw InvalidInput("bad automaton header: " + line);
      }
    };
    if (magic != "stallings") throw InvalidInput("bad automaton header: " + line);
    n = field(vf, "v=");
    base = field(bf, "base=");
    rank = field(rf, "rank_alphabet=");
  }
  Alphabet alpha(rank);
  InvAutomaton aut(alpha, n, static_cast<Vertex>(base));
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long long src = -1, dst = -1;
    std::string letter;
    if (!(row >> src >> letter >> dst) || src < 0 || dst < 0) {
      throw InvalidInput("bad arc line: " + line);
    }
    Word w = parse_word(letter, alpha);
    if (w.size() != 1 || w[0].is_inverse()) throw InvalidInput("arc label must be a positive letter: " + line);
    if (static_cast<std::size_t>(src) >= n || static_cast<std::size_t>(dst) >= n) {
      throw InvalidInput("arc endpoint out of range: " + line);
    }
    aut.add_arc(static_cast<Vertex>(src), w[0].index(), static_cast<Vertex>(dst));
  }
  aut.validate();
  return aut;
}

std::string to_dot(const InvAutomaton& aut, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (Vertex v = 0; v < aut.num_vertices(); ++v) {
    os << "  " << v << " [shape=" << (v == aut.basepoint() ? "doublecircle" : "circle") << "];\n";
  }
  for (const Arc& e : aut.arcs()) {
    os << "  " << e.src << " -> " << e.dst << " [label=\""
       << format_letter(Letter::positive(e.letter), aut.alphabet()) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stallings
