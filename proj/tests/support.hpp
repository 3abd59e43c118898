#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "smatch/io.hpp"
#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/policies.hpp"
#include "smatch/random_stream.hpp"

namespace smatch {

// Readable failure messages for gtest.
inline void PrintTo(NodeSet s, std::ostream* os) {
  *os << "{";
  for (NodeId i : s) *os << " " << i + 1;
  *os << " }";
}
inline void PrintTo(const ProbMeasure& mu, std::ostream* os) {
  *os << "(";
  for (const auto& w : mu.weights()) *os << " " << w.get_str();
  *os << " )";
}
inline void PrintTo(const QueueWord& w, std::ostream* os) {
  *os << "\"";
  for (std::size_t k = 0; k < w.size(); ++k) *os << (k ? " " : "") << w[k] + 1;
  *os << "\"";
}

}  // namespace smatch

namespace smatch::testing {

inline std::string fixture_path(const std::string& rel) { return std::string(SMATCH_FIXTURE_DIR) + "/" + rel; }

inline Multigraph load_fixture_graph(const std::string& name) {
  return parse_graph(read_file(fixture_path(name + "/graph.json")));
}
inline ProbMeasure load_fixture_measure(const Multigraph& g, const std::string& name,
                                        const std::string& file = "mu.json") {
  return parse_measure(g, read_file(fixture_path(name + "/" + file)));
}
inline PolicySpec load_fixture_policy(const Multigraph& g, const std::string& name, const std::string& file) {
  return parse_policy(g, read_file(fixture_path(name + "/" + file)));
}

inline nlohmann::json load_expected(const std::string& name) {
  return nlohmann::json::parse(read_file(fixture_path(name + "/expected.json")));
}

inline Rational q(const char* s) { return parse_rational(s); }

inline ProbMeasure measure(std::initializer_list<const char*> w) {
  std::vector<Rational> v;
  for (const char* s : w) v.push_back(parse_rational(s));
  return ProbMeasure(std::move(v));
}

// Worked examples, built by hand so they do not depend on the JSON reader.

/// Four nodes in a cycle, each with a self-loop.
inline Multigraph square_loops() { return Multigraph::numbered(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, {1, 2, 3, 4}); }
/// Triangles 2-3-4 and a pendant 1 on 2, loop at 2.
inline Multigraph two_triangles_loop() { return Multigraph::numbered(4, {{1, 2}, {2, 3}, {2, 4}, {3, 4}}, {2}); }
/// Path 1-2-3 with a loop at 3.
inline Multigraph path_loop() { return Multigraph::numbered(3, {{1, 2}, {2, 3}}, {3}); }
/// Complete 3-partite {1},{2,4},{3,5} with a loop at 5.
inline Multigraph partite_loop() {
  return Multigraph::numbered(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {4, 5}}, {5});
}
inline Multigraph triangle() { return Multigraph::numbered(3, {{1, 2}, {2, 3}, {1, 3}}); }
inline Multigraph k2() { return Multigraph::numbered(2, {{1, 2}}); }

inline ProbMeasure path_loop_mu() { return measure({"0.2", "0.3", "0.5"}); }
inline ProbMeasure two_triangles_mu() { return measure({"0.1", "0.4", "0.25", "0.25"}); }
inline ProbMeasure partite_mu() { return measure({"0.3", "0.15", "0.2", "0.15", "0.2"}); }

/// V₂-favorable priorities used with the multipartite fixtures: 2 prefers 1 over 3 on the path,
/// and everyone prefers 3 over 5 on the 3-partite graph.
inline PolicySpec path_loop_favorable(const Multigraph& g) {
  return v2_favorable(g, priority(g, {{1}, {0, 2}, {2, 1}}));
}
inline PolicySpec partite_favorable(const Multigraph& g) {
  return v2_favorable(g, priority(g, {{2, 1, 3, 4}, {2, 0, 4}, {0, 1, 3}, {2, 0, 4}, {0, 1, 3, 4}}));
}

/// Random connected graph on n nodes: a random spanning tree plus extra edges and loops.
inline Multigraph random_connected(std::size_t n, double edge_p, double loop_p, RandomStream& rng) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  for (std::size_t k = 1; k < n; ++k) {
    const auto parent = rng.below(k);
    edges.emplace_back(static_cast<int>(parent) + 1, static_cast<int>(k) + 1);
    has[parent][k] = has[k][parent] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!has[i][j] && rng.uniform01() < edge_p) edges.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  std::vector<int> loops;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform01() < loop_p) loops.push_back(static_cast<int>(i) + 1);
  }
  return Multigraph::numbered(n, edges, loops);
}

inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Random full-support rational measure with denominators up to `scale`.
inline ProbMeasure random_measure(std::size_t n, RandomStream& rng, std::uint64_t scale = 97) {
  std::vector<Rational> w(n);
  Rational total = 0;
  for (auto& x : w) {
    x = Rational(static_cast<long>(1 + rng.below(scale)));
    total += x;
  }
  for (auto& x : w) {
    x /= total;
    x.canonicalize();
  }
  return ProbMeasure(std::move(w));
}

/// Admissible words of at least min_len letters, grown from ε by arrivals that would queue.
inline std::vector<QueueWord> queued_states(const Multigraph& g, const ProbMeasure& mu, std::size_t count,
                                            std::size_t min_len, std::uint64_t seed) {
  RandomStream rng(seed);
  const DiscreteSampler sampler(mu.to_doubles());
  std::vector<QueueWord> out;
  QueueWord w;
  // A word that no class can extend starts over.
  std::size_t rejected = 0;
  while (out.size() < count) {
    const NodeId v = sampler(rng);
    if (g.neighbors(v).intersects(w.support())) {
      if (++rejected == 100) w = QueueWord{};
      continue;
    }
    rejected = 0;
    w.push_back(v);
    if (w.size() >= min_len) {
      out.push_back(w);
      w = QueueWord{};
    }
  }
  return out;
}

}  // namespace smatch::testing
