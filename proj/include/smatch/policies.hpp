#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smatch/multigraph.hpp"
#include "smatch/queue_word.hpp"
#include "smatch/random_stream.hpp"
#include "smatch/rational.hpp"

namespace smatch {

/// Ordered groups of classes; classes sharing a group are tied and broken uniformly.
using Tiers = std::vector<NodeSet>;

struct PolicySpec;

/// Oldest compatible item, whatever its class.
struct Fcfm {};
/// Newest compatible item, whatever its class.
struct Lcfm {};

/// Fixed preference per arriving class; order[v] partitions E(v).
struct Priority {
  std::vector<Tiers> order;
};

struct WeightedOrder {
  Tiers tiers;
  Rational probability;
};

/// One random preference order drawn per arrival: orders[v] is a law on orders of E(v).
struct RandomOrder {
  std::vector<std::vector<WeightedOrder>> orders;
};

/// Uniformly drawn preference order, i.e. a uniform choice among present compatible classes.
struct UniformRandom {};

/// argmax over present compatible j of beta·x(j) + reward[v][j], ties uniform.
struct MaxWeight {
  Rational beta;
  std::vector<std::vector<Rational>> reward;
};

/// Restricts the candidates to `favored` (the V₂ classes) when any is present,
/// then defers to a class-admissible inner policy.
struct V2Favorable {
  NodeSet favored;
  std::shared_ptr<const PolicySpec> inner;
};

struct PolicySpec {
  std::variant<Fcfm, Lcfm, Priority, RandomOrder, UniformRandom, MaxWeight, V2Favorable> kind;

  /// Decides from class counts alone (everything except FCFM and LCFM).
  bool class_admissible() const;
  std::string label() const;
};

PolicySpec fcfm();
PolicySpec lcfm();
/// Strict priorities; orders[v] lists E(v) from most to least preferred.
PolicySpec priority(const Multigraph& g, const std::vector<std::vector<NodeId>>& orders);
PolicySpec uniform_random();
PolicySpec max_weight(const Multigraph& g, Rational beta, Rational constant_reward = 0);
/// Match the Longest: beta = 1, zero rewards.
PolicySpec match_the_longest(const Multigraph& g);
/// Match the Shortest: beta = -1, zero rewards.
PolicySpec match_the_shortest(const Multigraph& g);
PolicySpec v2_favorable(const Multigraph& g, PolicySpec inner);

/// Throws InputError when the policy does not fit g.
void validate_policy(const Multigraph& g, const PolicySpec& policy);

struct ClassChoice {
  NodeId cls;
  Rational probability;
};

/// Exact law of the matched class, given the present compatible classes
/// (nonempty) and the class counts. Throws InputError for FCFM/LCFM.
std::vector<ClassChoice> class_distribution(const Multigraph& g, const PolicySpec& policy,
                                            const ClassDetail& x, NodeId v, NodeSet candidates);

/// Draws the matched class. Random orders draw the order first, then the tie.
NodeId sample_class(const Multigraph& g, const PolicySpec& policy, const ClassDetail& x, NodeId v,
                    NodeSet candidates, RandomStream& rng);

struct MatchDecision {
  /// Queue position of the matched item; nullopt when the arrival is stored.
  std::optional<std::size_t> position;
  std::optional<NodeId> chosen_class;

  bool matched() const { return position.has_value(); }
  friend bool operator==(const MatchDecision&, const MatchDecision&) = default;
};

struct WeightedDecision {
  MatchDecision decision;
  Rational probability;
};

/// Within a class the oldest item is always the one matched.
MatchDecision decide(const Multigraph& g, const PolicySpec& policy, const QueueWord& w, NodeId v,
                     RandomStream& rng);
std::vector<WeightedDecision> decision_distribution(const Multigraph& g, const PolicySpec& policy,
                                                    const QueueWord& w, NodeId v);

/// Canonical extension to the blow-up graph. Copies inherit their original's
/// preferences; a self-looped class j in a preference list becomes the tie {j, j̲},
/// and an arriving i ∈ V₁ prefers i̲ where it preferred itself.
PolicySpec extend_policy(const PolicySpec& policy, const BlowupMap& map);

/// Same policy on the loop-free subgraph: self-preference entries are dropped.
PolicySpec reduce_policy(const PolicySpec& policy, const Multigraph& g);

/// Singleton tiers from strict preference lists.
std::vector<Tiers> strict_tiers(const std::vector<std::vector<NodeId>>& orders);

}  // namespace smatch
