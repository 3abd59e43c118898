#include "smatch/measures.hpp"

#include <cmath>

namespace smatch {

ProbMeasure::ProbMeasure(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("empty measure");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw InputError("measure weights must be strictly positive");
    total += w;
  }
  if (total != 1) {
    if (std::abs(to_double(total) - 1.0) > 1e-12) {
      throw InputError("measure weights sum to " + format_rational(total) + ", not 1");
    }
    for (auto& w : weights_) w /= total;
  }
}

ProbMeasure ProbMeasure::uniform(std::size_t n) {
  return ProbMeasure(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

Rational ProbMeasure::of(NodeSet s) const {
  Rational total = 0;
  for (NodeId i : s) total += weights_.at(i);
  return total;
}

std::vector<double> ProbMeasure::to_doubles() const {
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto& w : weights_) out.push_back(to_double(w));
  return out;
}

void check_support(const Multigraph& g, const ProbMeasure& mu) {
  if (mu.size() != g.size()) {
    throw InputError("measure has " + std::to_string(mu.size()) + " weights for " +
                     std::to_string(g.size()) + " nodes");
  }
}

NcondReport ncond_check(const Multigraph& g, const ProbMeasure& mu) {
  check_support(g, mu);
  NcondReport report;
  for_each_independent_set(g, [&](NodeSet s) {
    Rational gap = mu.of(g.neighborhood(s)) - mu.of(s);
    if (!report.margin || gap < *report.margin) {
      report.margin = gap;
      report.witness = s;
    }
  });
  report.satisfied = !report.margin || *report.margin > 0;
  if (auto sides = bipartition(g)) {
    // E(A) = B in a connected bipartite graph, so one side always violates.
    report.witness = mu.of(sides->side_a) >= mu.of(sides->side_b) ? sides->side_a : sides->side_b;
  }
  return report;
}

ProbMeasure mu_deg(const Multigraph& g) {
  const auto total = static_cast<unsigned long>(g.ordered_edge_count());
  std::vector<Rational> w;
  for (NodeId i = 0; i < g.size(); ++i) {
    w.emplace_back(static_cast<unsigned long>(g.degree(i)), total);
    w.back().canonicalize();
  }
  return ProbMeasure(std::move(w));
}

ProbMeasure extend_measure(const ProbMeasure& mu, const BlowupMap& map,
                           const std::map<NodeId, Rational>& split) {
  check_support(map.original, mu);
  std::vector<Rational> w(map.blown.size());
  for (NodeId i = 0; i < map.original.size(); ++i) w[i] = mu[i];
  for (const auto& [i, s] : split) {
    if (i >= map.original.size() || !map.copy_of[i]) {
      throw InputError("split given for node without a self-loop");
    }
    if (s <= 0 || s >= 1) throw InputError("split values must lie in (0,1)");
  }
  for (NodeId i : map.original.self_looped()) {
    auto it = split.find(i);
    if (it == split.end()) throw InputError("missing split for '" + map.original.name(i) + "'");
    w[i] = it->second * mu[i];
    w[*map.copy_of[i]] = (1 - it->second) * mu[i];
  }
  return ProbMeasure(std::move(w));
}

ProbMeasure extend_measure_half(const ProbMeasure& mu, const BlowupMap& map) {
  std::map<NodeId, Rational> split;
  for (NodeId i : map.original.self_looped()) split[i] = Rational(1, 2);
  return extend_measure(mu, map, split);
}

ProbMeasure reduce_measure(const ProbMeasure& mu_hat, const BlowupMap& map) {
  check_support(map.blown, mu_hat);
  std::vector<Rational> w(map.original.size());
  for (NodeId k = 0; k < map.blown.size(); ++k) w[map.origin[k]] += mu_hat[k];
  return ProbMeasure(std::move(w));
}

bool ncond_equivalence_check(const Multigraph& g, const ProbMeasure& mu) {
  const BlowupMap map = minimal_blowup(g);
  const bool lhs = ncond_check(g, mu).satisfied;
  const bool rhs = ncond_check(map.blown, extend_measure_half(mu, map)).satisfied;
  return lhs == rhs;
}

}  // namespace smatch
