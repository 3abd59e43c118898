#include "smatch/policies.hpp"

#include <algorithm>

namespace smatch {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void add_uniform(std::vector<ClassChoice>& out, NodeSet among, const Rational& weight) {
  const Rational share = weight / static_cast<unsigned long>(among.size());
  for (NodeId j : among) {
    auto it = std::find_if(out.begin(), out.end(), [j](const ClassChoice& c) { return c.cls == j; });
    if (it == out.end()) {
      out.push_back({j, share});
    } else {
      it->probability += share;
    }
  }
}

NodeSet first_present_tier(const Tiers& tiers, NodeSet candidates) {
  for (NodeSet t : tiers) {
    if (t.intersects(candidates)) return t & candidates;
  }
  throw InputError("preference order does not cover the compatible classes");
}

NodeSet max_weight_argmax(const MaxWeight& mw, const ClassDetail& x, NodeId v, NodeSet candidates) {
  NodeSet best;
  Rational best_score;
  for (NodeId j : candidates) {
    Rational score = mw.beta * x[j] + mw.reward[v][j];
    if (best.empty() || score > best_score) {
      best = NodeSet::single(j);
      best_score = score;
    } else if (score == best_score) {
      best.insert(j);
    }
  }
  return best;
}

NodeId pick_uniform(NodeSet among, RandomStream& rng) {
  if (among.size() == 1) return *among.begin();
  auto k = rng.below(among.size());
  auto it = among.begin();
  while (k-- > 0) ++it;
  return *it;
}

void validate_tiers(const Multigraph& g, NodeId v, const Tiers& tiers) {
  NodeSet seen;
  for (NodeSet t : tiers) {
    if (t.empty() || t.intersects(seen)) {
      throw InputError("preference order of '" + g.name(v) + "' repeats a class or has an empty group");
    }
    seen |= t;
  }
  if (seen != g.neighbors(v)) {
    throw InputError("preference order of '" + g.name(v) + "' must list exactly its compatible classes");
  }
}

NodeSet reduce_tier(NodeSet t, NodeId v) { return t - NodeSet::single(v); }

Tiers reduce_tiers(const Tiers& tiers, NodeId v) {
  Tiers out;
  for (NodeSet t : tiers) {
    if (NodeSet r = reduce_tier(t, v); !r.empty()) out.push_back(r);
  }
  return out;
}

Tiers extend_tiers(const Tiers& tiers, const BlowupMap& map, NodeId k) {
  const Multigraph& g = map.original;
  const NodeId o = map.origin[k];
  if (map.is_copy(k)) return tiers;
  Tiers out;
  for (NodeSet t : tiers) {
    NodeSet mapped;
    for (NodeId m : t) {
      if (m == o && g.has_self_loop(o)) {
        mapped.insert(*map.copy_of[o]);
      } else {
        mapped.insert(m);
        if (g.has_self_loop(m)) mapped.insert(*map.copy_of[m]);
      }
    }
    out.push_back(mapped);
  }
  return out;
}

}  // namespace

bool PolicySpec::class_admissible() const {
  return !std::holds_alternative<Fcfm>(kind) && !std::holds_alternative<Lcfm>(kind);
}

std::string PolicySpec::label() const {
  return std::visit(
      Overloaded{
          [](const Fcfm&) -> std::string { return "fcfm"; },
          [](const Lcfm&) -> std::string { return "lcfm"; },
          [](const Priority&) -> std::string { return "priority"; },
          [](const RandomOrder&) -> std::string { return "random"; },
          [](const UniformRandom&) -> std::string { return "uniform"; },
          [](const MaxWeight& m) -> std::string {
            return "maxweight(beta=" + format_rational(m.beta) + ")";
          },
          [](const V2Favorable& f) -> std::string { return "v2favorable(" + f.inner->label() + ")"; },
      },
      kind);
}

PolicySpec fcfm() { return {Fcfm{}}; }
PolicySpec lcfm() { return {Lcfm{}}; }

std::vector<Tiers> strict_tiers(const std::vector<std::vector<NodeId>>& orders) {
  std::vector<Tiers> out;
  for (const auto& order : orders) {
    Tiers t;
    for (NodeId j : order) t.push_back(NodeSet::single(j));
    out.push_back(std::move(t));
  }
  return out;
}

PolicySpec priority(const Multigraph& g, const std::vector<std::vector<NodeId>>& orders) {
  PolicySpec p{Priority{strict_tiers(orders)}};
  validate_policy(g, p);
  return p;
}

PolicySpec uniform_random() { return {UniformRandom{}}; }

PolicySpec max_weight(const Multigraph& g, Rational beta, Rational constant_reward) {
  MaxWeight mw{std::move(beta), std::vector<std::vector<Rational>>(
                                    g.size(), std::vector<Rational>(g.size(), constant_reward))};
  return {std::move(mw)};
}

PolicySpec match_the_longest(const Multigraph& g) { return max_weight(g, 1); }
PolicySpec match_the_shortest(const Multigraph& g) { return max_weight(g, -1); }

PolicySpec v2_favorable(const Multigraph& g, PolicySpec inner) {
  PolicySpec p{V2Favorable{g.unlooped(), std::make_shared<const PolicySpec>(std::move(inner))}};
  validate_policy(g, p);
  return p;
}

void validate_policy(const Multigraph& g, const PolicySpec& policy) {
  const std::size_t n = g.size();
  std::visit(Overloaded{
                 [](const Fcfm&) {},
                 [](const Lcfm&) {},
                 [](const UniformRandom&) {},
                 [&](const Priority& p) {
                   if (p.order.size() != n) throw InputError("priority needs one order per class");
                   for (NodeId v = 0; v < n; ++v) validate_tiers(g, v, p.order[v]);
                 },
                 [&](const RandomOrder& r) {
                   if (r.orders.size() != n) throw InputError("random policy needs a law per class");
                   for (NodeId v = 0; v < n; ++v) {
                     if (r.orders[v].empty()) throw InputError("empty order law for '" + g.name(v) + "'");
                     Rational total = 0;
                     for (const auto& o : r.orders[v]) {
                       if (o.probability <= 0) throw InputError("order probabilities must be positive");
                       validate_tiers(g, v, o.tiers);
                       total += o.probability;
                     }
                     if (total != 1) throw InputError("order law of '" + g.name(v) + "' does not sum to 1");
                   }
                 },
                 [&](const MaxWeight& m) {
                   if (m.reward.size() != n) throw InputError("reward matrix has the wrong size");
                   for (const auto& row : m.reward) {
                     if (row.size() != n) throw InputError("reward matrix has the wrong size");
                   }
                 },
                 [&](const V2Favorable& f) {
                   if (!f.inner) throw InputError("v2-favorable policy without inner policy");
                   if (!f.inner->class_admissible()) {
                     throw InputError("v2-favorable policy needs a class-admissible inner policy");
                   }
                   if (!f.favored.subset_of(g.all())) throw InputError("favored set outside the graph");
                   validate_policy(g, *f.inner);
                 },
             },
             policy.kind);
}

std::vector<ClassChoice> class_distribution(const Multigraph& g, const PolicySpec& policy,
                                            const ClassDetail& x, NodeId v, NodeSet candidates) {
  std::vector<ClassChoice> out;
  if (candidates.empty()) return out;
  std::visit(Overloaded{
                 [](const Fcfm&) { throw InputError("fcfm is not a class-admissible policy"); },
                 [](const Lcfm&) { throw InputError("lcfm is not a class-admissible policy"); },
                 [&](const UniformRandom&) { add_uniform(out, candidates, 1); },
                 [&](const Priority& p) { add_uniform(out, first_present_tier(p.order[v], candidates), 1); },
                 [&](const RandomOrder& r) {
                   for (const auto& o : r.orders[v]) {
                     add_uniform(out, first_present_tier(o.tiers, candidates), o.probability);
                   }
                 },
                 [&](const MaxWeight& m) { add_uniform(out, max_weight_argmax(m, x, v, candidates), 1); },
                 [&](const V2Favorable& f) {
                   const NodeSet favored = candidates & f.favored;
                   out = class_distribution(g, *f.inner, x, v, favored.empty() ? candidates : favored);
                 },
             },
             policy.kind);
  return out;
}

NodeId sample_class(const Multigraph& g, const PolicySpec& policy, const ClassDetail& x, NodeId v,
                    NodeSet candidates, RandomStream& rng) {
  return std::visit(
      Overloaded{
          [](const Fcfm&) -> NodeId { throw InputError("fcfm is not a class-admissible policy"); },
          [](const Lcfm&) -> NodeId { throw InputError("lcfm is not a class-admissible policy"); },
          [&](const UniformRandom&) { return pick_uniform(candidates, rng); },
          [&](const Priority& p) { return pick_uniform(first_present_tier(p.order[v], candidates), rng); },
          [&](const RandomOrder& r) {
            const auto& law = r.orders[v];
            std::size_t chosen = law.size() - 1;
            if (law.size() > 1) {
              const double u = rng.uniform01();
              double acc = 0;
              for (std::size_t k = 0; k < law.size(); ++k) {
                acc += to_double(law[k].probability);
                if (u < acc) {
                  chosen = k;
                  break;
                }
              }
            }
            return pick_uniform(first_present_tier(law[chosen].tiers, candidates), rng);
          },
          [&](const MaxWeight& m) { return pick_uniform(max_weight_argmax(m, x, v, candidates), rng); },
          [&](const V2Favorable& f) {
            const NodeSet favored = candidates & f.favored;
            return sample_class(g, *f.inner, x, v, favored.empty() ? candidates : favored, rng);
          },
      },
      policy.kind);
}

namespace {

std::optional<MatchDecision> word_level_decision(const Multigraph& g, const PolicySpec& policy,
                                                 const QueueWord& w, NodeId v) {
  const NodeSet compatible = g.neighbors(v);
  if (std::holds_alternative<Fcfm>(policy.kind)) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (compatible.contains(w[k])) return MatchDecision{k, w[k]};
    }
    return MatchDecision{};
  }
  if (std::holds_alternative<Lcfm>(policy.kind)) {
    for (std::size_t k = w.size(); k-- > 0;) {
      if (compatible.contains(w[k])) return MatchDecision{k, w[k]};
    }
    return MatchDecision{};
  }
  if (match_candidates(g, w.support(), v).empty()) return MatchDecision{};
  return std::nullopt;
}

}  // namespace

MatchDecision decide(const Multigraph& g, const PolicySpec& policy, const QueueWord& w, NodeId v,
                     RandomStream& rng) {
  if (auto d = word_level_decision(g, policy, w, v)) return *d;
  const NodeSet candidates = match_candidates(g, w.support(), v);
  const NodeId cls = sample_class(g, policy, w.detail(g.size()), v, candidates, rng);
  return MatchDecision{w.first_position(cls), cls};
}

std::vector<WeightedDecision> decision_distribution(const Multigraph& g, const PolicySpec& policy,
                                                    const QueueWord& w, NodeId v) {
  if (auto d = word_level_decision(g, policy, w, v)) return {WeightedDecision{*d, 1}};
  const NodeSet candidates = match_candidates(g, w.support(), v);
  std::vector<WeightedDecision> out;
  for (const auto& c : class_distribution(g, policy, w.detail(g.size()), v, candidates)) {
    out.push_back({MatchDecision{w.first_position(c.cls), c.cls}, c.probability});
  }
  return out;
}

PolicySpec extend_policy(const PolicySpec& policy, const BlowupMap& map) {
  const std::size_t n = map.blown.size();
  PolicySpec out = std::visit(
      Overloaded{
          [](const Fcfm&) { return fcfm(); },
          [](const Lcfm&) { return lcfm(); },
          [](const UniformRandom&) { return uniform_random(); },
          [&](const Priority& p) {
            Priority ext;
            for (NodeId k = 0; k < n; ++k) ext.order.push_back(extend_tiers(p.order[map.origin[k]], map, k));
            return PolicySpec{std::move(ext)};
          },
          [&](const RandomOrder& r) {
            RandomOrder ext;
            for (NodeId k = 0; k < n; ++k) {
              std::vector<WeightedOrder> law;
              for (const auto& o : r.orders[map.origin[k]]) {
                law.push_back({extend_tiers(o.tiers, map, k), o.probability});
              }
              ext.orders.push_back(std::move(law));
            }
            return PolicySpec{std::move(ext)};
          },
          [&](const MaxWeight& m) {
            MaxWeight ext{m.beta, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
            for (NodeId k = 0; k < n; ++k) {
              for (NodeId l = 0; l < n; ++l) ext.reward[k][l] = m.reward[map.origin[k]][map.origin[l]];
            }
            return PolicySpec{std::move(ext)};
          },
          [&](const V2Favorable& f) {
            return PolicySpec{V2Favorable{
                f.favored, std::make_shared<const PolicySpec>(extend_policy(*f.inner, map))}};
          },
      },
      policy.kind);
  validate_policy(map.blown, out);
  return out;
}

PolicySpec reduce_policy(const PolicySpec& policy, const Multigraph& g) {
  PolicySpec out = std::visit(
      Overloaded{
          [](const Fcfm&) { return fcfm(); },
          [](const Lcfm&) { return lcfm(); },
          [](const UniformRandom&) { return uniform_random(); },
          [&](const Priority& p) {
            Priority red;
            for (NodeId v = 0; v < p.order.size(); ++v) red.order.push_back(reduce_tiers(p.order[v], v));
            return PolicySpec{std::move(red)};
          },
          [&](const RandomOrder& r) {
            RandomOrder red;
            for (NodeId v = 0; v < r.orders.size(); ++v) {
              std::vector<WeightedOrder> law;
              for (const auto& o : r.orders[v]) law.push_back({reduce_tiers(o.tiers, v), o.probability});
              red.orders.push_back(std::move(law));
            }
            return PolicySpec{std::move(red)};
          },
          [](const MaxWeight& m) { return PolicySpec{m}; },
          [&](const V2Favorable& f) {
            return PolicySpec{
                V2Favorable{f.favored, std::make_shared<const PolicySpec>(reduce_policy(*f.inner, g))}};
          },
      },
      policy.kind);
  validate_policy(maximal_subgraph(g), out);
  return out;
}

}  // namespace smatch
