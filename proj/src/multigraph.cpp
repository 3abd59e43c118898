#include "smatch/multigraph.hpp"

#include <algorithm>
#include <set>

#include "smatch/rational.hpp"

namespace smatch {

bool lex_less(NodeSet a, NodeSet b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

Multigraph::Multigraph(std::vector<std::string> nodes,
                       const std::vector<std::pair<std::string, std::string>>& edges,
                       const std::vector<std::string>& self_loops)
    : names_(std::move(nodes)) {
  if (names_.size() < 2) throw InputError("a multigraph needs at least two nodes");
  if (names_.size() > kMaxNodes) {
    throw InputError("at most " + std::to_string(kMaxNodes) + " nodes are supported");
  }
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty node id");
    if (!seen.insert(n).second) throw InputError("duplicate node id '" + n + "'");
  }
  adjacency_.assign(names_.size(), NodeSet{});
  for (const auto& [a, b] : edges) {
    const NodeId i = id(a);
    const NodeId j = id(b);
    if (i == j) throw InputError("self-loop '" + a + "' must be listed under self_loops");
    if (adjacency_[i].contains(j)) throw InputError("duplicate edge " + a + "-" + b);
    adjacency_[i].insert(j);
    adjacency_[j].insert(i);
  }
  for (const auto& l : self_loops) {
    const NodeId i = id(l);
    if (loops_.contains(i)) throw InputError("duplicate self-loop '" + l + "'");
    loops_.insert(i);
    adjacency_[i].insert(i);
  }
  validate_connected();
}

Multigraph Multigraph::numbered(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& self_loops) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(std::to_string(a), std::to_string(b));
  std::vector<std::string> loops;
  for (int l : self_loops) loops.push_back(std::to_string(l));
  return Multigraph(std::move(names), named, loops);
}

std::optional<NodeId> Multigraph::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

NodeId Multigraph::id(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown node '" + std::string(name) + "'");
}

NodeSet Multigraph::neighborhood(NodeSet u) const {
  NodeSet out;
  for (NodeId i : u) out |= adjacency_.at(i);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> Multigraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId i = 0; i < size(); ++i) {
    for (NodeId j : adjacency_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t Multigraph::edge_count() const {
  std::size_t twice = 0;
  for (NodeId i = 0; i < size(); ++i) twice += (adjacency_[i] - NodeSet::single(i)).size();
  return twice / 2;
}

void Multigraph::validate_connected() const {
  NodeSet reached = NodeSet::single(0);
  NodeSet frontier = reached;
  while (!frontier.empty()) {
    NodeSet next = neighborhood(frontier) - reached;
    reached |= next;
    frontier = next;
  }
  if (reached != all()) throw InputError("the multigraph is not connected");
}

std::optional<Bipartition> bipartition(const Multigraph& g) {
  if (!g.self_looped().empty()) return std::nullopt;
  std::vector<int> color(g.size(), -1);
  color[0] = 0;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    const NodeId i = stack.back();
    stack.pop_back();
    for (NodeId j : g.neighbors(i)) {
      if (color[j] == -1) {
        color[j] = 1 - color[i];
        stack.push_back(j);
      } else if (color[j] == color[i]) {
        return std::nullopt;
      }
    }
  }
  Bipartition out;
  for (NodeId i = 0; i < g.size(); ++i) {
    (color[i] == 0 ? out.side_a : out.side_b).insert(i);
  }
  return out;
}

namespace {

void extend_independent(const Multigraph& g, NodeSet current, NodeSet blocked, NodeId from,
                        const std::function<void(NodeSet)>& visit) {
  for (NodeId i = from; i < g.size(); ++i) {
    if (blocked.contains(i) || g.has_self_loop(i)) continue;
    NodeSet next = current;
    next.insert(i);
    visit(next);
    extend_independent(g, next, blocked | g.neighbors(i), i + 1, visit);
  }
}

}  // namespace

void for_each_independent_set(const Multigraph& g, const std::function<void(NodeSet)>& visit) {
  extend_independent(g, NodeSet{}, NodeSet{}, 0, visit);
}

std::vector<NodeSet> independent_sets(const Multigraph& g) {
  std::vector<NodeSet> out;
  for_each_independent_set(g, [&](NodeSet s) { out.push_back(s); });
  return out;
}

Multigraph maximal_subgraph(const Multigraph& g) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [i, j] : g.edges()) edges.emplace_back(g.name(i), g.name(j));
  return Multigraph(g.names(), edges, {});
}

NodeSet BlowupMap::copies(NodeSet originals) const {
  NodeSet out;
  for (NodeId i : originals) {
    if (i < copy_of.size() && copy_of[i]) out.insert(*copy_of[i]);
  }
  return out;
}

BlowupMap minimal_blowup(const Multigraph& g) {
  std::vector<std::string> names = g.names();
  std::vector<std::optional<NodeId>> copy_of(g.size());
  std::vector<NodeId> origin;
  for (NodeId i = 0; i < g.size(); ++i) origin.push_back(i);
  for (NodeId i : g.self_looped()) {
    std::string copy = g.name(i) + "_";
    if (g.find(copy)) throw InputError("copy id '" + copy + "' collides with an existing node");
    copy_of[i] = names.size();
    names.push_back(std::move(copy));
    origin.push_back(i);
  }
  if (names.size() > kMaxNodes) throw InputError("blow-up graph exceeds the node limit");

  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [i, j] : g.edges()) edges.emplace_back(g.name(i), g.name(j));
  for (NodeId i : g.self_looped()) {
    for (NodeId j : g.neighbors(i)) edges.emplace_back(names[*copy_of[i]], g.name(j));
  }
  Multigraph blown(names, edges, {});
  return BlowupMap{g, std::move(blown), std::move(copy_of), std::move(origin)};
}

std::optional<std::vector<NodeSet>> complete_multipartite_decomposition(const Multigraph& g) {
  const Multigraph reduced = maximal_subgraph(g);
  std::vector<NodeSet> parts;
  NodeSet assigned;
  for (NodeId i = 0; i < reduced.size(); ++i) {
    if (assigned.contains(i)) continue;
    const NodeSet part = reduced.all() - reduced.neighbors(i);
    for (NodeId j : part) {
      if (assigned.contains(j) || reduced.all() - reduced.neighbors(j) != part) return std::nullopt;
    }
    parts.push_back(part);
    assigned |= part;
  }
  if (parts.size() < 2) return std::nullopt;
  return parts;
}

std::string format_node_set(const Multigraph& g, NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId i : s) {
    if (!first) out += ",";
    out += g.name(i);
    first = false;
  }
  return out + "}";
}

}  // namespace smatch
