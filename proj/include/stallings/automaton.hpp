#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// An injective partial map on {0, ..., n-1}. The reverse table is kept only so
// that reading an inverse letter is O(1); it is never exposed as separate state.
class PartialInjection {
 public:
  PartialInjection() = default;
  explicit PartialInjection(std::size_t n) : image_(n, kNoVertex), preimage_(n, kNoVertex) {}

  std::size_t size() const noexcept { return image_.size(); }
  Vertex image(Vertex v) const { return image_[v]; }
  Vertex preimage(Vertex v) const { return preimage_[v]; }
  std::size_t domain_size() const;

  // False (and no change) if u already has an image or v a preimage.
  bool try_set(Vertex u, Vertex v);
  void set(Vertex u, Vertex v);
  void unset(Vertex u);
  void resize(std::size_t n);

  friend bool operator==(const PartialInjection& a, const PartialInjection& b) {
    return a.image_ == b.image_;
  }
  const std::vector<Vertex>& images() const noexcept { return image_; }

 private:
  std::vector<Vertex> image_;
  std::vector<Vertex> preimage_;
};

struct Arc {
  Vertex src;
  std::uint32_t letter;  // positive letter index
  Vertex dst;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class InvAutomaton {
 public:
  InvAutomaton(Alphabet a, std::size_t n_vertices, Vertex basepoint = 0);

  // Single vertex, no arcs.
  static InvAutomaton trivial(Alphabet a) { return InvAutomaton(a, 1, 0); }
  // One vertex, one loop per letter.
  static InvAutomaton rose(Alphabet a);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_arcs() const noexcept;
  Vertex basepoint() const noexcept { return base_; }
  void set_basepoint(Vertex v);

  Vertex add_vertex();
  // Throws InvalidInput if the arc would break determinism.
  void add_arc(Vertex src, std::size_t letter, Vertex dst);
  bool try_add_arc(Vertex src, std::size_t letter, Vertex dst);
  void remove_arc(Vertex src, std::size_t letter);

  Vertex target(Vertex v, Letter x) const {
    const PartialInjection& t = tau_[x.index()];
    return x.is_inverse() ? t.preimage(v) : t.image(v);
  }
  const PartialInjection& transition(std::size_t letter) const { return tau_[letter]; }

  std::vector<Arc> arcs() const;  // sorted by (src, letter, dst)
  std::size_t degree(Vertex v) const;
  std::size_t deficit(Letter x) const;
  bool is_saturated() const;
  bool is_connected() const;
  // 1 - #V + #E+, the rank of the recognized subgroup for a connected automaton.
  long long rank() const;

  std::optional<Vertex> trace(Vertex v, const Word& w) const;

  // Throws InvalidInput unless connected with a valid basepoint.
  void validate() const;

  friend bool operator==(const InvAutomaton& a, const InvAutomaton& b) {
    return a.alphabet_ == b.alphabet_ && a.n_ == b.n_ && a.base_ == b.base_ && a.tau_ == b.tau_;
  }

  // Flat encoding: n, base, then image of every (vertex, letter). Canonical
  // automata compare equal iff their encodings do.
  std::vector<std::uint32_t> encoding() const;

 private:
  void check_vertex(Vertex v) const;

  Alphabet alphabet_;
  std::size_t n_;
  Vertex base_;
  std::vector<PartialInjection> tau_;
};

// Strict weak order on encodings; used for deterministic sorting and dedupe.
bool encoding_less(const InvAutomaton& a, const InvAutomaton& b);

enum class TrimMode { core, restricted_core };

struct TrimResult {
  InvAutomaton automaton;
  std::size_t tail_length = 0;
  Word tail;                        // label of the tail, old basepoint to new
  std::vector<Vertex> vertex_map;   // old vertex -> new vertex or kNoVertex
};

TrimResult trim(const InvAutomaton& aut, TrimMode mode);

// Core with respect to a set of distinguished vertices (the basepoint is always
// kept). Used for coset automata with two distinguished vertices.
TrimResult core_keeping(const InvAutomaton& aut, std::span<const Vertex> keep);

// BFS from `root` visiting a, A, b, B, ...; returns vertices in discovery order.
std::vector<Vertex> bfs_order(const InvAutomaton& aut, Vertex root);

// Relabel by bfs_order from the basepoint; unreachable vertices are dropped.
InvAutomaton canonicalize(const InvAutomaton& aut);
InvAutomaton canonicalize_at(const InvAutomaton& aut, Vertex root);

// Canonical form minimized over all basepoints.
InvAutomaton unbased_canonical(const InvAutomaton& aut);

// For each vertex, the label of its BFS-tree path from the basepoint.
std::vector<Word> tree_labels(const InvAutomaton& aut);

// Label-preserving bijection a -> b sending ra to rb, if one exists. Both
// automata are assumed connected.
std::optional<std::vector<Vertex>> isomorphism(const InvAutomaton& a, Vertex ra,
                                               const InvAutomaton& b, Vertex rb);

// Vertex-injective, arc-preserving map small -> big sending basepoint to basepoint.
std::optional<std::vector<Vertex>> embedding(const InvAutomaton& small, const InvAutomaton& big);

std::string to_text(const InvAutomaton& aut);
InvAutomaton from_text(std::string_view text);
std::string to_dot(const InvAutomaton& aut, std::string_view name = "stallings");

}  // namespace stallings
