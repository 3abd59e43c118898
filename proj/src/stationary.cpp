#include "smatch/stationary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace smatch {

Rational alpha(const Multigraph& g, const ProbMeasure& mu) {
  check_support(g, mu);
  if (is_bipartite_graph(g)) throw InputError("the stability region of a bipartite graph is empty");
  if (!ncond_check(g, mu).satisfied) throw NcondViolation("measure violates the stability condition");

  std::vector<NodeSet> sets = independent_sets(maximal_subgraph(g));
  std::stable_sort(sets.begin(), sets.end(), [](NodeSet a, NodeSet b) { return a.size() < b.size(); });

  // f(S) sums the ordered products over orderings of S; the last factor only depends on S.
  std::unordered_map<std::uint64_t, Rational> f;
  f[0] = 1;
  Rational inverse = 1;
  for (NodeSet s : sets) {
    const Rational denom = mu.of(g.neighborhood(s)) - mu.of(s & g.unlooped());
    if (denom <= 0) throw NcondViolation("non-positive denominator in the normalizing constant");
    Rational numer = 0;
    for (NodeId e : s) numer += f.at((s - NodeSet::single(e)).bits()) * mu[e];
    Rational value = numer / denom;
    inverse += value;
    f.emplace(s.bits(), std::move(value));
  }
  return 1 / inverse;
}

ProductForm::ProductForm(Multigraph g, ProbMeasure mu)
    : g_(std::move(g)), mu_(std::move(mu)), alpha_(smatch::alpha(g_, mu_)) {}

Rational ProductForm::pi_w(const QueueWord& w) const {
  if (!is_admissible(g_, w)) throw InputError("inadmissible word " + format_word(g_, w));
  Rational p = alpha_;
  NodeSet prefix;
  for (NodeId v : w.letters()) {
    prefix.insert(v);
    p *= mu_[v] / mu_.of(g_.neighborhood(prefix));
  }
  return p;
}

double FiniteStationary::at(const QueueWord& w) const {
  auto it = std::find(states.begin(), states.end(), w);
  return it == states.end() ? 0.0 : probability[static_cast<std::size_t>(it - states.begin())];
}

FiniteStationary finite_stationary(const Multigraph& g, const ProbMeasure& mu) {
  if (!g.unlooped().empty()) throw InputError("finite stationary table needs a self-loop at every node");
  const ProductForm pf(g, mu);
  FiniteStationary out;
  out.states = enumerate_states(g, g.size());
  for (const auto& w : out.states) {
    out.exact.push_back(pf.pi_w(w));
    out.probability.push_back(to_double(out.exact.back()));
  }
  return out;
}

FiniteStationary linear_solve_stationary(const std::vector<QueueWord>& states,
                                         const std::vector<KernelRow>& rows) {
  const auto n = static_cast<Eigen::Index>(states.size());
  if (states.empty() || rows.size() != states.size()) throw InputError("need one kernel row per state");
  std::map<QueueWord, Eigen::Index> index;
  for (Eigen::Index k = 0; k < n; ++k) index.emplace(states[static_cast<std::size_t>(k)], k);

  // Columns of (Pᵀ − I), with the last equation replaced by normalization.
  Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const KernelRow& row = rows[static_cast<std::size_t>(k)];
    if (row.from != states[static_cast<std::size_t>(k)]) throw InputError("kernel rows out of order");
    for (const auto& [to, p] : row.entries) {
      auto it = index.find(to);
      if (it == index.end()) throw InputError("state set is not closed under the kernel");
      a(it->second, k) += to_double(p);
    }
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw InputError("singular stationary system");
  const Eigen::VectorXd pi = lu.solve(b);

  FiniteStationary out;
  out.states = states;
  for (Eigen::Index k = 0; k < n; ++k) {
    out.probability.push_back(pi(k));
    out.exact.emplace_back(pi(k));
  }
  return out;
}

BalanceReport balance_residual(const Multigraph& g, const ProbMeasure& mu, std::size_t max_len) {
  const ProductForm pf(g, mu);
  const PolicySpec policy = fcfm();
  BalanceReport report;
  for (const auto& w : enumerate_states(g, max_len)) {
    Rational inflow = 0;
    for (const auto& [u, p] : predecessors(g, mu, policy, w)) inflow += pf.pi_w(u) * p;
    Rational residual = abs(pf.pi_w(w) - inflow);
    if (report.states_checked == 0 || residual > report.max_residual) {
      report.max_residual = residual;
      report.argmax = w;
    }
    ++report.states_checked;
  }
  return report;
}

Rational truncated_mass(const ProductForm& dist, std::size_t max_len) {
  Rational total = 0;
  for (const auto& w : enumerate_states(dist.graph(), max_len)) total += dist.pi_w(w);
  return total;
}

double tv_to_product_form(const ProductForm& dist, const SimulationResult& run, std::size_t max_len) {
  double sum = 0;
  double inside = 0;
  for (const QueueWord& w : enumerate_states(dist.graph(), max_len)) {
    const double e = run.frequency(w);
    inside += e;
    sum += std::abs(e - to_double(dist.pi_w(w)));
  }
  sum += std::abs((1 - inside) - to_double(1 - truncated_mass(dist, max_len)));
  return sum / 2;
}

}  // namespace smatch
