#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/policies.hpp"
#include "smatch/queue_word.hpp"

namespace smatch {

enum class LyapunovKind { Quadratic, Linear, WeightedLinear };

/// Q(w) = Σ_i |w|_i², L(w) = |w|, and the reweighted L_δ that counts each
/// self-looped class with weight δ / (2μ(V₁)).
class LyapunovFn {
 public:
  static LyapunovFn quadratic();
  static LyapunovFn linear();
  /// Throws InputError when V₁ is empty or delta ≤ 0.
  static LyapunovFn weighted_linear(const Multigraph& g, const ProbMeasure& mu, Rational delta);

  LyapunovKind kind() const { return kind_; }
  const Rational& v1_weight() const { return v1_weight_; }
  Rational operator()(const QueueWord& w) const;
  std::string label() const;

 private:
  LyapunovFn(LyapunovKind kind, Rational weight, NodeSet weighted)
      : kind_(kind), v1_weight_(std::move(weight)), weighted_(weighted) {}

  LyapunovKind kind_;
  Rational v1_weight_;
  NodeSet weighted_;
};

struct DriftReport {
  QueueWord state;
  Rational drift;
  /// μ(v) · E[F(next) − F(w) | arrival v], indexed by v.
  std::vector<Rational> per_class;
};

/// E[F(W_{n+1}) − F(W_n) | W_n = w], exact over arrivals and policy randomness.
DriftReport exact_drift(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                        const QueueWord& w, const LyapunovFn& f);

struct SpecialSets {
  /// Self-looped classes present exactly once.
  NodeSet once;
  /// Self-looped classes absent, with no compatible class queued either.
  NodeSet idle;
  /// Self-looped classes present.
  NodeSet present;
};

SpecialSets special_sets(const Multigraph& g, const QueueWord& w);

/// A model on G with its blow-up and loop-free counterparts, built once for identity scans.
struct DriftModels {
  Multigraph g;
  ProbMeasure mu;
  PolicySpec policy;
  BlowupMap map;
  ProbMeasure mu_hat;
  PolicySpec policy_hat;
  Multigraph reduced;
  PolicySpec policy_reduced;
};

/// split must be keyed by V₁; an empty map means 1/2 everywhere.
DriftModels make_drift_models(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                              const std::map<NodeId, Rational>& split = {});

struct IdentityCheck {
  Rational dq;
  Rational dq_hat;
  Rational dl;
  Rational dl_hat;
  Rational dl_reduced;
  /// |ΔQ − (Δ̂Q − 4μ̂(O_w))|
  Rational quadratic_residual;
  /// |ΔL − (Δ̂L − 2μ̂(O_w))|
  Rational linear_left_residual;
  /// |Δ̂L − (ΔˇL − 2μ̂(copies of P_w))|
  Rational linear_right_residual;
};

IdentityCheck check_identities(const DriftModels& models, const QueueWord& w);

Rational verify_quadratic_identity(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                                   const std::map<NodeId, Rational>& split, const QueueWord& w);
std::pair<Rational, Rational> verify_linear_chain(const Multigraph& g, const ProbMeasure& mu,
                                                  const PolicySpec& policy,
                                                  const std::map<NodeId, Rational>& split,
                                                  const QueueWord& w);

struct PartiteBoundCheck {
  bool applicable = false;
  bool holds = true;
  Rational drift;
  Rational bound;
};

/// Drift of L_δ against −δ/2 for states whose support meets V₂. δ defaults to
/// the stability margin. Throws InputError when the graph is not complete
/// multipartite (or p = 2 with no self-loop) and NcondViolation outside the region.
PartiteBoundCheck verify_ppartite_bound(const Multigraph& g, const ProbMeasure& mu,
                                        const PolicySpec& policy, const QueueWord& w,
                                        std::optional<Rational> delta = std::nullopt);

struct NegativeDriftScan {
  /// Per word length: the largest drift among states of that length.
  std::vector<Rational> max_drift_by_length;
  /// Smallest length from which every scanned state has negative drift.
  std::optional<std::size_t> threshold;
  /// −(largest drift at or beyond the threshold).
  Rational eta;
};

NegativeDriftScan scan_negative_drift(const Multigraph& g, const ProbMeasure& mu,
                                      const PolicySpec& policy, const LyapunovFn& f,
                                      std::size_t max_len);

}  // namespace smatch
