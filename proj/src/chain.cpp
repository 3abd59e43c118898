#include "smatch/chain.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <thread>

namespace smatch {

namespace {

/// Simulation state kept as one queue of arrival stamps per class. Every
/// policy removes the oldest item of a class, or the newest one for LCFM, so a
/// step costs O(|V|) whatever the queue length. Draws match decide() exactly.
class StampedQueue {
 public:
  explicit StampedQueue(std::size_t n) : stamps_(n), counts_(n, 0) {}

  std::size_t size() const { return size_; }
  NodeSet support() const { return support_; }
  const ClassDetail& counts() const { return counts_; }

  void step(const Multigraph& g, const PolicySpec& policy, NodeId v, RandomStream& rng) {
    const NodeSet candidates = match_candidates(g, support_, v);
    if (candidates.empty()) {
      stamps_[v].push_back(next_++);
      ++counts_[v];
      support_.insert(v);
      ++size_;
      return;
    }
    if (std::holds_alternative<Fcfm>(policy.kind)) {
      NodeId best = *candidates.begin();
      for (NodeId c : candidates) {
        if (stamps_[c].front() < stamps_[best].front()) best = c;
      }
      stamps_[best].pop_front();
      removed(best);
    } else if (std::holds_alternative<Lcfm>(policy.kind)) {
      NodeId best = *candidates.begin();
      for (NodeId c : candidates) {
        if (stamps_[c].back() > stamps_[best].back()) best = c;
      }
      stamps_[best].pop_back();
      removed(best);
    } else {
      const NodeId c = sample_class(g, policy, counts_, v, candidates, rng);
      stamps_[c].pop_front();
      removed(c);
    }
  }

  /// The queue detail, merged back into arrival order.
  QueueWord word() const {
    std::vector<std::size_t> head(stamps_.size(), 0);
    std::vector<NodeId> letters;
    letters.reserve(size_);
    for (std::size_t k = 0; k < size_; ++k) {
      NodeId best = stamps_.size();
      std::uint64_t oldest = std::numeric_limits<std::uint64_t>::max();
      for (NodeId c : support_) {
        if (head[c] < stamps_[c].size() && stamps_[c][head[c]] < oldest) {
          oldest = stamps_[c][head[c]];
          best = c;
        }
      }
      letters.push_back(best);
      ++head[best];
    }
    return QueueWord(std::move(letters));
  }

 private:
  void removed(NodeId c) {
    if (--counts_[c] == 0) support_.erase(c);
    --size_;
  }

  std::vector<std::deque<std::uint64_t>> stamps_;
  ClassDetail counts_;
  NodeSet support_;
  std::size_t size_ = 0;
  std::uint64_t next_ = 0;
};

}  // namespace

void step_in_place(const Multigraph& g, const PolicySpec& policy, QueueWord& w, NodeId v,
                   RandomStream& rng) {
  const MatchDecision d = decide(g, policy, w, v, rng);
  if (d.position) {
    w.erase_at(*d.position);
  } else {
    w.push_back(v);
  }
}

QueueWord step(const Multigraph& g, const PolicySpec& policy, const QueueWord& w, NodeId v,
               RandomStream& rng) {
  QueueWord out = w;
  step_in_place(g, policy, out, v, rng);
  return out;
}

ClassDetail class_step(const Multigraph& g, const PolicySpec& policy, const ClassDetail& x,
                       NodeId v, RandomStream& rng) {
  if (!policy.class_admissible()) {
    throw InputError(policy.label() + " is not a class-admissible policy");
  }
  if (x.size() != g.size()) throw InputError("class detail has the wrong size");
  NodeSet present;
  for (NodeId i = 0; i < x.size(); ++i) {
    if (x[i] > 0) present.insert(i);
  }
  ClassDetail out = x;
  const NodeSet candidates = match_candidates(g, present, v);
  if (candidates.empty()) {
    ++out[v];
  } else {
    --out[sample_class(g, policy, x, v, candidates, rng)];
  }
  return out;
}

std::vector<QueueWord> enumerate_states(const Multigraph& g, std::size_t max_len) {
  std::vector<QueueWord> out{QueueWord{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (NodeId v = 0; v < g.size(); ++v) {
        const QueueWord& w = out[k];
        if (w.count(v) > 0 && g.has_self_loop(v)) continue;
        if ((g.neighbors(v) - NodeSet::single(v)).intersects(w.support())) continue;
        out.push_back(w.appended(v));
      }
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

KernelRow kernel_row(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                     const QueueWord& w) {
  KernelRow row{w, {}};
  for (NodeId v = 0; v < g.size(); ++v) {
    for (const auto& [d, p] : decision_distribution(g, policy, w, v)) {
      QueueWord next = d.position ? w.without(*d.position) : w.appended(v);
      row.entries[next] += mu[v] * p;
    }
  }
  return row;
}

std::map<QueueWord, Rational> predecessors(const Multigraph& g, const ProbMeasure& mu,
                                           const PolicySpec& policy, const QueueWord& w) {
  std::set<QueueWord> candidates;
  if (!w.empty()) candidates.insert(w.without(w.size() - 1));
  for (std::size_t pos = 0; pos <= w.size(); ++pos) {
    for (NodeId c = 0; c < g.size(); ++c) {
      std::vector<NodeId> letters(w.letters().begin(), w.letters().end());
      letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(pos), c);
      QueueWord u(std::move(letters));
      if (is_admissible(g, u)) candidates.insert(std::move(u));
    }
  }
  std::map<QueueWord, Rational> out;
  for (const auto& u : candidates) {
    const KernelRow row = kernel_row(g, mu, policy, u);
    if (auto it = row.entries.find(w); it != row.entries.end() && it->second > 0) out[u] = it->second;
  }
  return out;
}

double SimulationResult::frequency(const QueueWord& w) const {
  if (total_steps == 0) return 0;
  auto it = visits.find(w);
  return it == visits.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_steps);
}

std::vector<std::pair<QueueWord, std::uint64_t>> SimulationResult::sorted_visits() const {
  std::vector<std::pair<QueueWord, std::uint64_t>> out(visits.begin(), visits.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

SimulationResult simulate(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                          const SimulationConfig& config) {
  check_support(g, mu);
  validate_policy(g, policy);
  RandomStream rng(config.seed);
  const DiscreteSampler arrivals(mu.to_doubles());
  SimulationResult result;
  result.seed = config.seed;
  result.burn_in = config.burn_in;
  result.total_steps = config.steps;
  std::vector<double> occupancy_sum(g.size(), 0.0);
  double length_sum = 0;

  StampedQueue q(g.size());
  for (std::uint64_t n = 0; n < config.burn_in; ++n) q.step(g, policy, arrivals(rng), rng);
  for (std::uint64_t n = 0; n < config.steps; ++n) {
    q.step(g, policy, arrivals(rng), rng);
    if (q.size() <= config.record_max_len) {
      ++result.visits[q.word()];
    } else {
      ++result.long_visits;
    }
    result.max_length = std::max(result.max_length, q.size());
    length_sum += static_cast<double>(q.size());
    for (NodeId i : q.support()) occupancy_sum[i] += q.counts()[i];
  }
  if (config.steps > 0) {
    const auto steps = static_cast<double>(config.steps);
    result.mean_length = length_sum / steps;
    for (double& s : occupancy_sum) s /= steps;
  }
  result.occupancy = std::move(occupancy_sum);
  return result;
}

std::vector<SimulationResult> simulate_replicas(const Multigraph& g, const ProbMeasure& mu,
                                                const PolicySpec& policy,
                                                const SimulationConfig& config, unsigned replicas) {
  std::vector<SimulationResult> out(replicas);
  std::vector<std::thread> workers;
  for (unsigned r = 0; r < replicas; ++r) {
    SimulationConfig c = config;
    c.seed = config.seed + r;
    workers.emplace_back([&, r, c] { out[r] = simulate(g, mu, policy, c); });
  }
  for (auto& t : workers) t.join();
  return out;
}

SimulationResult merge_results(const std::vector<SimulationResult>& parts) {
  SimulationResult merged;
  if (parts.empty()) return merged;
  merged.seed = parts.front().seed;
  merged.burn_in = parts.front().burn_in;
  double length_sum = 0;
  for (const auto& p : parts) {
    for (const auto& [w, c] : p.visits) merged.visits[w] += c;
    merged.total_steps += p.total_steps;
    merged.long_visits += p.long_visits;
    merged.max_length = std::max(merged.max_length, p.max_length);
    length_sum += p.mean_length * static_cast<double>(p.total_steps);
    if (merged.occupancy.size() < p.occupancy.size()) merged.occupancy.resize(p.occupancy.size(), 0.0);
    for (std::size_t i = 0; i < p.occupancy.size(); ++i) {
      merged.occupancy[i] += p.occupancy[i] * static_cast<double>(p.total_steps);
    }
  }
  if (merged.total_steps > 0) {
    const auto total = static_cast<double>(merged.total_steps);
    merged.mean_length = length_sum / total;
    for (double& o : merged.occupancy) o /= total;
  }
  return merged;
}

double stability_slope(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                       std::uint64_t steps, std::uint64_t seed) {
  if (steps < 4) throw InputError("stability_slope needs at least 4 steps");
  check_support(g, mu);
  validate_policy(g, policy);
  RandomStream rng(seed);
  const DiscreteSampler arrivals(mu.to_doubles());
  StampedQueue q(g.size());
  const std::uint64_t tail_start = steps / 2;
  double sn = 0, sy = 0, snn = 0, sny = 0, count = 0;
  for (std::uint64_t n = 1; n <= steps; ++n) {
    q.step(g, policy, arrivals(rng), rng);
    if (n <= tail_start) continue;
    const auto x = static_cast<double>(n - tail_start);
    const auto y = static_cast<double>(q.size());
    sn += x;
    sy += y;
    snn += x * x;
    sny += x * y;
    count += 1;
  }
  const double denom = count * snn - sn * sn;
  return denom == 0 ? 0.0 : (count * sny - sn * sy) / denom;
}

}  // namespace smatch
