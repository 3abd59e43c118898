#pragma once

#include <map>
#include <optional>
#include <vector>

#include "smatch/multigraph.hpp"
#include "smatch/rational.hpp"

namespace smatch {

/// Full-support probability measure on the nodes of a multigraph, indexed by NodeId.
class ProbMeasure {
 public:
  /// Throws InputError on a non-positive weight or when the weights do not
  /// sum to 1 within 1e-12. Sums off by less than that are renormalized exactly.
  explicit ProbMeasure(std::vector<Rational> weights);

  static ProbMeasure uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](NodeId i) const { return weights_.at(i); }
  Rational of(NodeSet s) const;
  const std::vector<Rational>& weights() const { return weights_; }
  std::vector<double> to_doubles() const;

  friend bool operator==(const ProbMeasure&, const ProbMeasure&) = default;

 private:
  std::vector<Rational> weights_;
};

/// Throws InputError unless mu has exactly one weight per node of g.
void check_support(const Multigraph& g, const ProbMeasure& mu);

struct NcondReport {
  bool satisfied = true;
  /// min over independent sets I of μ(E(I)) − μ(I); nullopt stands for +∞.
  std::optional<Rational> margin;
  /// Minimizing independent set, or for a bipartite graph the violating side.
  std::optional<NodeSet> witness;
};

/// Strict check, so a zero margin counts as a violation.
NcondReport ncond_check(const Multigraph& g, const ProbMeasure& mu);

/// deg(i) / |E| with loops counted once and other edges twice.
ProbMeasure mu_deg(const Multigraph& g);

/// μ̂ on the blow-up: μ̂(i) = s(i)μ(i) and μ̂(i̲) = (1 − s(i))μ(i) for i ∈ V₁.
/// `split` must be keyed exactly by V₁ with values in (0,1).
ProbMeasure extend_measure(const ProbMeasure& mu, const BlowupMap& map,
                           const std::map<NodeId, Rational>& split);
ProbMeasure extend_measure_half(const ProbMeasure& mu, const BlowupMap& map);

/// Folds each copy's mass back onto its original.
ProbMeasure reduce_measure(const ProbMeasure& mu_hat, const BlowupMap& map);

/// Compares ncond_check(g, μ) with ncond_check(Ĝ, μ̂ at split 1/2).
bool ncond_equivalence_check(const Multigraph& g, const ProbMeasure& mu);

}  // namespace smatch
