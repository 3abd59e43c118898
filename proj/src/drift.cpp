#include "smatch/drift.hpp"

#include <algorithm>

#include "smatch/chain.hpp"

namespace smatch {

LyapunovFn LyapunovFn::quadratic() { return LyapunovFn(LyapunovKind::Quadratic, 1, NodeSet{}); }
LyapunovFn LyapunovFn::linear() { return LyapunovFn(LyapunovKind::Linear, 1, NodeSet{}); }

LyapunovFn LyapunovFn::weighted_linear(const Multigraph& g, const ProbMeasure& mu, Rational delta) {
  check_support(g, mu);
  if (g.self_looped().empty()) throw InputError("reweighted linear function needs a self-looped class");
  if (delta <= 0) throw InputError("reweighted linear function needs delta > 0");
  Rational weight = delta / (2 * mu.of(g.self_looped()));
  return LyapunovFn(LyapunovKind::WeightedLinear, std::move(weight), g.self_looped());
}

Rational LyapunovFn::operator()(const QueueWord& w) const {
  Rational total = 0;
  for (NodeId i : w.support()) {
    const std::uint32_t c = w.count(i);
    switch (kind_) {
      case LyapunovKind::Quadratic:
        total += static_cast<unsigned long>(c) * c;
        break;
      case LyapunovKind::Linear:
        total += c;
        break;
      case LyapunovKind::WeightedLinear:
        total += weighted_.contains(i) ? Rational(v1_weight_ * c) : Rational(c);
        break;
    }
  }
  return total;
}

std::string LyapunovFn::label() const {
  switch (kind_) {
    case LyapunovKind::Quadratic:
      return "Q";
    case LyapunovKind::Linear:
      return "L";
    case LyapunovKind::WeightedLinear:
      return "Ldelta";
  }
  return "?";
}

DriftReport exact_drift(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                        const QueueWord& w, const LyapunovFn& f) {
  check_support(g, mu);
  DriftReport report{w, 0, std::vector<Rational>(g.size())};
  const Rational base = f(w);
  for (NodeId v = 0; v < g.size(); ++v) {
    Rational expected = 0;
    for (const auto& [d, p] : decision_distribution(g, policy, w, v)) {
      const QueueWord next = d.position ? w.without(*d.position) : w.appended(v);
      expected += p * (f(next) - base);
    }
    report.per_class[v] = mu[v] * expected;
    report.drift += report.per_class[v];
  }
  return report;
}

SpecialSets special_sets(const Multigraph& g, const QueueWord& w) {
  SpecialSets s;
  for (NodeId i : g.self_looped()) {
    const std::uint32_t c = w.count(i);
    if (c == 1) s.once.insert(i);
    if (c > 0) s.present.insert(i);
    if (c == 0 && !g.neighbors(i).intersects(w.support())) s.idle.insert(i);
  }
  return s;
}

DriftModels make_drift_models(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                              const std::map<NodeId, Rational>& split) {
  BlowupMap map = minimal_blowup(g);
  ProbMeasure mu_hat = split.empty() ? extend_measure_half(mu, map) : extend_measure(mu, map, split);
  PolicySpec policy_hat = extend_policy(policy, map);
  Multigraph reduced = maximal_subgraph(g);
  PolicySpec policy_reduced = reduce_policy(policy, g);
  return DriftModels{g,           mu,      policy,        std::move(map), std::move(mu_hat),
                     policy_hat,  reduced, policy_reduced};
}

IdentityCheck check_identities(const DriftModels& m, const QueueWord& w) {
  if (!is_admissible(m.g, w)) throw InputError("identity checks need an admissible state");
  const LyapunovFn q = LyapunovFn::quadratic();
  const LyapunovFn l = LyapunovFn::linear();
  IdentityCheck c;
  c.dq = exact_drift(m.g, m.mu, m.policy, w, q).drift;
  c.dq_hat = exact_drift(m.map.blown, m.mu_hat, m.policy_hat, w, q).drift;
  c.dl = exact_drift(m.g, m.mu, m.policy, w, l).drift;
  c.dl_hat = exact_drift(m.map.blown, m.mu_hat, m.policy_hat, w, l).drift;
  c.dl_reduced = exact_drift(m.reduced, m.mu, m.policy_reduced, w, l).drift;

  const SpecialSets s = special_sets(m.g, w);
  const Rational once_mass = m.mu_hat.of(s.once);
  const Rational copies_mass = m.mu_hat.of(m.map.copies(s.present));
  c.quadratic_residual = abs(c.dq - (c.dq_hat - 4 * once_mass));
  c.linear_left_residual = abs(c.dl - (c.dl_hat - 2 * once_mass));
  c.linear_right_residual = abs(c.dl_hat - (c.dl_reduced - 2 * copies_mass));
  return c;
}

Rational verify_quadratic_identity(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                                   const std::map<NodeId, Rational>& split, const QueueWord& w) {
  return check_identities(make_drift_models(g, mu, policy, split), w).quadratic_residual;
}

std::pair<Rational, Rational> verify_linear_chain(const Multigraph& g, const ProbMeasure& mu,
                                                  const PolicySpec& policy,
                                                  const std::map<NodeId, Rational>& split,
                                                  const QueueWord& w) {
  const IdentityCheck c = check_identities(make_drift_models(g, mu, policy, split), w);
  return {c.linear_left_residual, c.linear_right_residual};
}

PartiteBoundCheck verify_ppartite_bound(const Multigraph& g, const ProbMeasure& mu,
                                        const PolicySpec& policy, const QueueWord& w,
                                        std::optional<Rational> delta) {
  const auto parts = complete_multipartite_decomposition(g);
  if (!parts) throw InputError("graph is not complete multipartite");
  if (parts->size() < 3 && g.self_looped().empty()) {
    throw InputError("bound needs at least three parts or a self-loop");
  }
  const NcondReport ncond = ncond_check(g, mu);
  if (!ncond.satisfied) throw NcondViolation("measure violates the stability condition");
  if (!delta) {
    if (!ncond.margin) throw InputError("no independent set, so no default margin");
    delta = *ncond.margin;
  }
  PartiteBoundCheck out;
  out.bound = -*delta / 2;
  out.applicable = w.support().intersects(g.unlooped());
  if (!out.applicable) return out;
  const LyapunovFn f = LyapunovFn::weighted_linear(g, mu, *delta);
  out.drift = exact_drift(g, mu, policy, w, f).drift;
  out.holds = out.drift <= out.bound;
  return out;
}

NegativeDriftScan scan_negative_drift(const Multigraph& g, const ProbMeasure& mu,
                                      const PolicySpec& policy, const LyapunovFn& f,
                                      std::size_t max_len) {
  NegativeDriftScan scan;
  std::vector<bool> seen;
  for (const auto& w : enumerate_states(g, max_len)) {
    if (w.empty()) continue;
    const Rational d = exact_drift(g, mu, policy, w, f).drift;
    if (seen.size() < w.size()) {
      seen.resize(w.size(), false);
      scan.max_drift_by_length.resize(w.size());
    }
    Rational& slot = scan.max_drift_by_length[w.size() - 1];
    if (!seen[w.size() - 1] || d > slot) slot = d;
    seen[w.size() - 1] = true;
  }
  // Lengths are 1-based in the threshold; index k holds length k + 1.
  const auto& m = scan.max_drift_by_length;
  std::size_t k = m.size();
  while (k > 0 && m[k - 1] < 0) --k;
  if (k < m.size()) {
    scan.threshold = k + 1;
    scan.eta = -*std::max_element(m.begin() + static_cast<std::ptrdiff_t>(k), m.end());
  }
  return scan;
}

}  // namespace smatch
