#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "smatch/multigraph.hpp"

namespace smatch {

/// Per-class counts of a queue word (its commutative image).
using ClassDetail = std::vector<std::uint32_t>;

/// Unmatched items in arrival order. Class counts are cached alongside the letters.
class QueueWord {
 public:
  QueueWord() = default;
  explicit QueueWord(std::vector<NodeId> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  NodeId operator[](std::size_t k) const { return letters_[k]; }
  const std::deque<NodeId>& letters() const { return letters_; }

  std::uint32_t count(NodeId i) const { return i < counts_.size() ? counts_[i] : 0; }
  NodeSet support() const { return support_; }
  /// Counts padded to n classes.
  ClassDetail detail(std::size_t n) const;

  void push_back(NodeId v);
  void erase_at(std::size_t k);
  QueueWord appended(NodeId v) const;
  QueueWord without(std::size_t k) const;

  /// Oldest / newest position holding class i, or size() when absent.
  std::size_t first_position(NodeId i) const;
  std::size_t last_position(NodeId i) const;

  /// Shortlex: shorter words first, then lexicographic by node index.
  friend bool operator<(const QueueWord& a, const QueueWord& b);
  friend bool operator==(const QueueWord& a, const QueueWord& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const QueueWord& a, const QueueWord& b) { return !(a == b); }

 private:
  // A deque keeps removal at the front cheap when a long queue drains.
  std::deque<NodeId> letters_;
  std::vector<std::uint32_t> counts_;
  NodeSet support_;
};

struct QueueWordHash {
  std::size_t operator()(const QueueWord& w) const;
};

/// No two distinct adjacent classes both present, self-looped classes at most once.
bool is_admissible(const Multigraph& g, const QueueWord& w);
bool is_admissible(const Multigraph& g, const ClassDetail& x);

/// Space-separated node names, "ε" for the empty word.
std::string format_word(const Multigraph& g, const QueueWord& w);
/// Accepts space-separated names, "ε" or "" for the empty word, and run-together
/// single-character names such as "13". Throws InputError.
QueueWord parse_word(const Multigraph& g, std::string_view text);

/// {j ∈ E(v) : x(j) > 0}.
NodeSet match_candidates(const Multigraph& g, NodeSet present, NodeId v);

}  // namespace smatch
