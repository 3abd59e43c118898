#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/queue_word.hpp"

namespace smatch {

/// A letter of V ∪ V̄: a class, possibly barred.
struct DetailedLetter {
  NodeId node;
  bool barred = false;

  friend auto operator<=>(const DetailedLetter&, const DetailedLetter&) = default;
};

using DetailedWord = std::vector<DetailedLetter>;

struct DetailedWordHash {
  std::size_t operator()(const DetailedWord& w) const;
};

/// One FCFM arrival in the backward chain. A match bars both ends: the old
/// item's slot takes the arrival's class and the arrival's slot takes the old
/// item's class. The barred prefix is then dropped. Throws InputError when b
/// is not admissible.
DetailedWord backward_step(const Multigraph& g, const DetailedWord& b, NodeId v);

/// First letter unbarred; unbarred letters pairwise non-adjacent (so a
/// self-looped class occurs at most once unbarred); an unbarred letter is not
/// adjacent to the class of any later barred letter.
bool is_admissible_B(const Multigraph& g, const DetailedWord& w);
bool is_admissible_F(const Multigraph& g, const DetailedWord& w);

/// Reverses the word and flips every bar.
DetailedWord reverse_copy(const DetailedWord& w);

/// Unbarred letters in order.
QueueWord project_to_queue(const DetailedWord& b);

/// Product of μ over letters, bars ignored.
Rational nu(const DetailedWord& w, const ProbMeasure& mu);
/// Σ μ over a set of letters.
Rational nu_of_letters(const std::vector<DetailedLetter>& letters, const ProbMeasure& mu);

/// Barred words need the bar glyph: "1 3̄". Plain ASCII uses a trailing '~'.
std::string format_detailed(const Multigraph& g, const DetailedWord& w, bool ascii = false);
DetailedWord parse_detailed(const Multigraph& g, std::string_view text);

/// FCFM partners along a fixed arrival sequence.
class FcfmTrajectory {
 public:
  FcfmTrajectory(const Multigraph& g, std::vector<NodeId> arrivals);

  std::size_t size() const { return arrivals_.size(); }
  const std::vector<NodeId>& arrivals() const { return arrivals_; }
  /// Index of the partner of arrival t, if matched within the trajectory.
  std::optional<std::size_t> partner(std::size_t t) const;
  /// Queued arrival indices after the first n arrivals.
  std::vector<std::size_t> queue_after(std::size_t n) const;

  /// Backward word after n arrivals built straight from the definition.
  DetailedWord backward_word(std::size_t n) const;
  /// Forward word after n arrivals; nullopt when a queued item has no partner
  /// within the trajectory.
  std::optional<DetailedWord> forward_word(std::size_t n) const;
  /// forward_word for a known queue (the indices queued after n arrivals).
  std::optional<DetailedWord> forward_word(std::size_t n, const std::vector<std::size_t>& queue) const;

 private:
  const Multigraph* g_;
  std::vector<NodeId> arrivals_;
  std::vector<std::int64_t> partner_;
};

/// Forward word after n arrivals, looking at most `horizon` arrivals ahead of the start.
std::optional<DetailedWord> forward_word(const Multigraph& g, const std::vector<NodeId>& arrivals,
                                         std::size_t n, std::size_t horizon);

/// An independent set of the loop-free subgraph together with an ordering of it.
struct NuBlock {
  NodeSet set;
  std::vector<NodeId> order;
};

std::vector<NuBlock> enumerate_nu_blocks(const Multigraph& g);

/// Letters that may follow the prefix of a block inside a backward word:
/// barred classes outside E(prefix) and unbarred prefix classes without a self-loop.
std::vector<DetailedLetter> block_tail_letters(const Multigraph& g, NodeSet prefix);

/// ∏_k μ(e_k) / (1 − ν(tail letters of prefix_k)). Throws NcondViolation on a
/// non-positive denominator.
Rational nu_block_mass(const NuBlock& block, const Multigraph& g, const ProbMeasure& mu);

/// All admissible backward words of length ≤ max_len.
std::vector<DetailedWord> enumerate_backward_states(const Multigraph& g, std::size_t max_len);

struct LocalBalanceReport {
  std::size_t pairs_tested = 0;
  double max_abs_z = 0;
  double fraction_within_2se = 1;
  bool all_within_3se = true;
  std::size_t undetermined_forward = 0;
  std::size_t steps = 0;
  /// Largest |ν(w)P̂_B(w,w′) − ν(w′)P̂_F(Ψw′,Ψw)| over tested pairs.
  double max_discrepancy = 0;
};

/// Estimates both detailed kernels along one FCFM run and compares
/// ν(w)P_B(w,w′) with ν(w′)P_F(Ψw′, Ψw) on pairs whose two source states were
/// visited at least min_visits times.
LocalBalanceReport verify_local_balance_empirical(const Multigraph& g, const ProbMeasure& mu,
                                                  std::uint64_t steps, std::uint64_t seed,
                                                  std::uint64_t min_visits = 500);

struct Excursion {
  std::vector<NodeId> word;
  /// Class of the partner of each letter.
  std::vector<NodeId> partners;
};

/// Splits the arrivals at the epochs where the FCFM queue empties. A trailing
/// incomplete segment is dropped. Throws InputError when no excursion completes.
std::vector<Excursion> excursion_decompose(const Multigraph& g, const std::vector<NodeId>& arrivals);

/// Partner-class word of a complete excursion, computed from scratch.
std::vector<NodeId> partner_word(const Multigraph& g, const std::vector<NodeId>& word);

/// Inverse of the partner map: g(u) = reverse(partner_word(reverse(u))). The
/// partner word of an excursion is generally not an excursion itself, but its
/// reversal is, so g(partner_word(w)) = w.
std::vector<NodeId> inverse_partner_word(const Multigraph& g, const std::vector<NodeId>& image);

/// True when word and image are permutations of each other.
bool is_letter_permutation(const std::vector<NodeId>& word, const std::vector<NodeId>& image);

}  // namespace smatch
