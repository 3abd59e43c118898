#pragma once

#include <vector>

#include "smatch/chain.hpp"
#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/queue_word.hpp"

namespace smatch {

/// Normalizing constant of the FCFM product form: 1/α sums, over independent
/// sets I of the loop-free subgraph and orderings of I, the products of
/// μ(e_k) / (μ(E(prefix_k)) − μ(prefix_k ∩ V₂)).
/// Throws InputError on a bipartite graph and NcondViolation outside the stability region.
Rational alpha(const Multigraph& g, const ProbMeasure& mu);

/// FCFM stationary law Π(w) = α ∏_l μ(w_l) / μ(E({w_1..w_l})).
class ProductForm {
 public:
  ProductForm(Multigraph g, ProbMeasure mu);

  const Multigraph& graph() const { return g_; }
  const ProbMeasure& measure() const { return mu_; }
  const Rational& alpha() const { return alpha_; }
  /// Throws InputError on an inadmissible word.
  Rational pi_w(const QueueWord& w) const;

 private:
  Multigraph g_;
  ProbMeasure mu_;
  Rational alpha_;
};

struct FiniteStationary {
  std::vector<QueueWord> states;
  std::vector<Rational> exact;
  std::vector<double> probability;

  double at(const QueueWord& w) const;
};

/// Whole-space table for a graph where every node carries a self-loop.
FiniteStationary finite_stationary(const Multigraph& g, const ProbMeasure& mu);

/// Solves πP = π, Σπ = 1 densely. rows[k] must start from states[k].
/// Throws InputError when the state set is not closed or the system is singular.
FiniteStationary linear_solve_stationary(const std::vector<QueueWord>& states,
                                         const std::vector<KernelRow>& rows);

struct BalanceReport {
  Rational max_residual;
  QueueWord argmax;
  std::size_t states_checked = 0;
};

/// Largest |Π(w) − Σ_u Π(u) P(u, w)| over admissible w with |w| ≤ max_len under FCFM.
/// Each equation is a finite sum, so the result is exact.
BalanceReport balance_residual(const Multigraph& g, const ProbMeasure& mu, std::size_t max_len);

/// Σ Π(w) over admissible words of length ≤ max_len.
Rational truncated_mass(const ProductForm& dist, std::size_t max_len);

/// Total variation between a run's empirical law and Π_W, with words longer
/// than max_len lumped into one tail atom whose exact mass is 1 − truncated_mass.
double tv_to_product_form(const ProductForm& dist, const SimulationResult& run, std::size_t max_len);

}  // namespace smatch
