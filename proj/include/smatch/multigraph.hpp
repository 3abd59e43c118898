#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smatch {

using NodeId = std::size_t;

inline constexpr std::size_t kMaxNodes = 64;

/// Subset of the nodes of a multigraph, stored as a bit mask.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr NodeSet single(NodeId i) { return NodeSet(std::uint64_t{1} << i); }
  static constexpr NodeSet first(std::size_t n) {
    return NodeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(NodeId i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(NodeId i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(NodeId i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }
  constexpr NodeSet& operator&=(NodeSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(NodeSet, NodeSet) = default;

  class iterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr NodeId operator*() const { return static_cast<NodeId>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<NodeId> members() const { return {begin(), end()}; }

  /// Lexicographic order on the sorted member lists.
  friend bool lex_less(NodeSet a, NodeSet b);

 private:
  std::uint64_t bits_ = 0;
};

/// Compatibility structure: a connected multigraph whose edges are simple and
/// whose self-loops are kept apart (V₁ = self-looped nodes, V₂ = the rest).
class Multigraph {
 public:
  /// Nodes keep the given order. Throws InputError when the graph has fewer
  /// than two nodes, duplicate ids, unknown endpoints, a loop listed as an
  /// edge, a duplicate edge, or is disconnected.
  Multigraph(std::vector<std::string> nodes,
             const std::vector<std::pair<std::string, std::string>>& edges,
             const std::vector<std::string>& self_loops);

  /// Test/fixture helper: nodes named "1".."n", edges and loops 1-based.
  static Multigraph numbered(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<int>& self_loops = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId i) const { return names_.at(i); }
  /// Throws InputError on unknown ids.
  NodeId id(std::string_view name) const;
  std::optional<NodeId> find(std::string_view name) const;

  NodeSet all() const { return NodeSet::first(size()); }
  NodeSet self_looped() const { return loops_; }
  NodeSet unlooped() const { return all() - loops_; }
  bool has_self_loop(NodeId i) const { return loops_.contains(i); }

  /// i ~ j, with i ~ i iff i carries a self-loop.
  bool adjacent(NodeId i, NodeId j) const { return adjacency_[i].contains(j); }
  NodeSet neighbors(NodeId i) const { return adjacency_[i]; }
  /// E(U) = {v : ∃ u ∈ U, u ~ v}.
  NodeSet neighborhood(NodeSet u) const;
  std::size_t degree(NodeId i) const { return adjacency_[i].size(); }

  /// Unordered non-loop edges, (i, j) with i < j, in index order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
  std::size_t edge_count() const;
  /// |E| counted as ordered pairs: 2 per edge plus 1 per self-loop.
  std::size_t ordered_edge_count() const { return 2 * edge_count() + loops_.size(); }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  Multigraph() = default;
  void validate_connected() const;

  std::vector<std::string> names_;
  std::vector<NodeSet> adjacency_;
  NodeSet loops_;
};

struct Bipartition {
  NodeSet side_a;
  NodeSet side_b;
};

/// True iff g has no self-loop and is 2-colorable. The side holding the
/// first node is side_a.
std::optional<Bipartition> bipartition(const Multigraph& g);
inline bool is_bipartite_graph(const Multigraph& g) { return bipartition(g).has_value(); }

/// Calls visit(I) for every nonempty independent set I (no self-looped node,
/// no internal edge) in lexicographic order of sorted member lists.
void for_each_independent_set(const Multigraph& g, const std::function<void(NodeSet)>& visit);
std::vector<NodeSet> independent_sets(const Multigraph& g);

/// Ǧ: same nodes and edges, self-loops deleted.
Multigraph maximal_subgraph(const Multigraph& g);

/// Ĝ together with the correspondence between self-looped nodes and their copies.
struct BlowupMap {
  Multigraph original;
  Multigraph blown;
  /// copy_of[i] is the index of i̲ in `blown` for i ∈ V₁.
  std::vector<std::optional<NodeId>> copy_of;
  /// origin[k] is the original node a blown node stands for (itself or the copied node).
  std::vector<NodeId> origin;

  bool is_copy(NodeId k) const { return k >= original.size(); }
  NodeSet copies(NodeSet originals) const;
};

/// Duplicates each self-looped node i into i and i̲ (named "<id>_"), turning
/// the loop into the edge i ~ i̲; i̲ is also adjacent to every other neighbor of i.
/// Original nodes keep their indices; copies are appended in index order.
BlowupMap minimal_blowup(const Multigraph& g);

/// Parts I₁..I_p of Ǧ when it is complete multipartite, in order of their
/// smallest member; nullopt otherwise.
std::optional<std::vector<NodeSet>> complete_multipartite_decomposition(const Multigraph& g);

std::string format_node_set(const Multigraph& g, NodeSet s);

}  // namespace smatch
