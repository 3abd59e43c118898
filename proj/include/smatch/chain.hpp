#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/policies.hpp"
#include "smatch/queue_word.hpp"
#include "smatch/random_stream.hpp"

namespace smatch {

/// Applies one arrival: the matched item leaves, or v joins the queue.
QueueWord step(const Multigraph& g, const PolicySpec& policy, const QueueWord& w, NodeId v,
               RandomStream& rng);
void step_in_place(const Multigraph& g, const PolicySpec& policy, QueueWord& w, NodeId v,
                   RandomStream& rng);

/// Class-count dynamics; the policy must be class-admissible.
ClassDetail class_step(const Multigraph& g, const PolicySpec& policy, const ClassDetail& x,
                       NodeId v, RandomStream& rng);

/// All admissible words of length ≤ max_len in shortlex order.
std::vector<QueueWord> enumerate_states(const Multigraph& g, std::size_t max_len);

struct KernelRow {
  QueueWord from;
  std::map<QueueWord, Rational> entries;
};

/// Exact one-step law from w, enumerating arrivals and policy randomness.
KernelRow kernel_row(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                     const QueueWord& w);

/// Every u with P(u, w) > 0, with that probability. Candidates are w minus its
/// last letter and every admissible single-letter insertion into w.
std::map<QueueWord, Rational> predecessors(const Multigraph& g, const ProbMeasure& mu,
                                           const PolicySpec& policy, const QueueWord& w);

struct SimulationConfig {
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  /// Longer states are only counted in aggregate, which keeps transient runs bounded in memory.
  std::size_t record_max_len = 32;
};

struct SimulationResult {
  std::unordered_map<QueueWord, std::uint64_t, QueueWordHash> visits;
  /// Steps spent in states longer than record_max_len; with visits they sum to total_steps.
  std::uint64_t long_visits = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::size_t max_length = 0;
  double mean_length = 0;
  /// Time-average number of queued items per class.
  std::vector<double> occupancy;

  double frequency(const QueueWord& w) const;
  /// Visited words in shortlex order.
  std::vector<std::pair<QueueWord, std::uint64_t>> sorted_visits() const;
};

/// Starts from the empty queue, runs burn_in unrecorded steps, then records
/// the state after each of the next `steps` arrivals.
SimulationResult simulate(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                          const SimulationConfig& config);

/// Replica r uses seed + r; replicas run on separate threads and are merged in index order.
std::vector<SimulationResult> simulate_replicas(const Multigraph& g, const ProbMeasure& mu,
                                                const PolicySpec& policy,
                                                const SimulationConfig& config, unsigned replicas);
SimulationResult merge_results(const std::vector<SimulationResult>& parts);

/// Least-squares slope of |W_n| against n over the second half of a run from ε.
/// A transience heuristic, not a recurrence test.
double stability_slope(const Multigraph& g, const ProbMeasure& mu, const PolicySpec& policy,
                       std::uint64_t steps, std::uint64_t seed);

}  // namespace smatch
