#include "smatch/detailed.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "smatch/random_stream.hpp"

namespace smatch {

std::size_t DetailedWordHash::operator()(const DetailedWord& w) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : w) {
    h ^= (static_cast<std::uint64_t>(l.node) << 1 | static_cast<std::uint64_t>(l.barred)) + 1;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

void strip_barred_prefix(DetailedWord& b) {
  auto first_unbarred = std::find_if(b.begin(), b.end(), [](const DetailedLetter& l) { return !l.barred; });
  b.erase(b.begin(), first_unbarred);
}

void backward_step_unchecked(const Multigraph& g, DetailedWord& b, NodeId v) {
  for (auto& letter : b) {
    if (!letter.barred && g.adjacent(v, letter.node)) {
      const NodeId old_class = letter.node;
      letter = {v, true};
      b.push_back({old_class, true});
      strip_barred_prefix(b);
      return;
    }
  }
  b.push_back({v, false});
}

}  // namespace

DetailedWord backward_step(const Multigraph& g, const DetailedWord& b, NodeId v) {
  if (v >= g.size()) throw InputError("unknown arrival class");
  if (!is_admissible_B(g, b)) throw InputError("backward step from an inadmissible word");
  DetailedWord out = b;
  backward_step_unchecked(g, out, v);
  return out;
}

bool is_admissible_B(const Multigraph& g, const DetailedWord& w) {
  if (w.empty()) return true;
  if (w.front().barred) return false;
  for (const auto& l : w) {
    if (l.node >= g.size()) return false;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].barred) continue;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (g.adjacent(w[i].node, w[j].node)) return false;
    }
  }
  return true;
}

bool is_admissible_F(const Multigraph& g, const DetailedWord& w) {
  return is_admissible_B(g, reverse_copy(w));
}

DetailedWord reverse_copy(const DetailedWord& w) {
  DetailedWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->node, !it->barred});
  return out;
}

QueueWord project_to_queue(const DetailedWord& b) {
  QueueWord out;
  for (const auto& l : b) {
    if (!l.barred) out.push_back(l.node);
  }
  return out;
}

Rational nu(const DetailedWord& w, const ProbMeasure& mu) {
  Rational p = 1;
  for (const auto& l : w) p *= mu[l.node];
  return p;
}

Rational nu_of_letters(const std::vector<DetailedLetter>& letters, const ProbMeasure& mu) {
  Rational total = 0;
  for (const auto& l : letters) total += mu[l.node];
  return total;
}

std::string format_detailed(const Multigraph& g, const DetailedWord& w, bool ascii) {
  if (w.empty()) return ascii ? "e" : "ε";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0) out += ' ';
    out += g.name(w[k].node);
    if (w[k].barred) out += ascii ? "~" : "̄";
  }
  return out;
}

DetailedWord parse_detailed(const Multigraph& g, std::string_view text) {
  static const std::string kMacron = "̄";
  DetailedWord out;
  std::istringstream in{std::string(text)};
  for (std::string t; in >> t;) {
    if (t == "ε" || t == "e") continue;
    bool barred = false;
    if (t.size() > kMacron.size() && t.compare(t.size() - kMacron.size(), kMacron.size(), kMacron) == 0) {
      barred = true;
      t.resize(t.size() - kMacron.size());
    } else if (t.size() > 1 && t.back() == '~') {
      barred = true;
      t.pop_back();
    }
    out.push_back({g.id(t), barred});
  }
  return out;
}

FcfmTrajectory::FcfmTrajectory(const Multigraph& g, std::vector<NodeId> arrivals)
    : g_(&g), arrivals_(std::move(arrivals)), partner_(arrivals_.size(), -1) {
  // One queue of arrival indices per class; FCFM takes the oldest front among compatible classes.
  std::vector<std::deque<std::size_t>> queued(g.size());
  NodeSet present;
  for (std::size_t t = 0; t < arrivals_.size(); ++t) {
    const NodeId v = arrivals_[t];
    const NodeSet candidates = g.neighbors(v) & present;
    if (candidates.empty()) {
      queued[v].push_back(t);
      present.insert(v);
      continue;
    }
    NodeId best = *candidates.begin();
    for (NodeId c : candidates) {
      if (queued[c].front() < queued[best].front()) best = c;
    }
    const std::size_t u = queued[best].front();
    queued[best].pop_front();
    if (queued[best].empty()) present.erase(best);
    partner_[u] = static_cast<std::int64_t>(t);
    partner_[t] = static_cast<std::int64_t>(u);
  }
}

std::optional<std::size_t> FcfmTrajectory::partner(std::size_t t) const {
  if (partner_.at(t) < 0) return std::nullopt;
  return static_cast<std::size_t>(partner_[t]);
}

std::vector<std::size_t> FcfmTrajectory::queue_after(std::size_t n) const {
  std::vector<std::size_t> queue;
  for (std::size_t t = 0; t < n && t < size(); ++t) {
    if (partner_[t] < 0 || static_cast<std::size_t>(partner_[t]) >= n) queue.push_back(t);
  }
  return queue;
}

DetailedWord FcfmTrajectory::backward_word(std::size_t n) const {
  const auto queue = queue_after(n);
  DetailedWord out;
  if (queue.empty()) return out;
  for (std::size_t t = queue.front(); t < n; ++t) {
    if (partner_[t] >= 0 && static_cast<std::size_t>(partner_[t]) < n) {
      out.push_back({arrivals_[static_cast<std::size_t>(partner_[t])], true});
    } else {
      out.push_back({arrivals_[t], false});
    }
  }
  return out;
}

std::optional<DetailedWord> FcfmTrajectory::forward_word(std::size_t n) const {
  return forward_word(n, queue_after(n));
}

std::optional<DetailedWord> FcfmTrajectory::forward_word(std::size_t n,
                                                         const std::vector<std::size_t>& queue) const {
  DetailedWord out;
  if (queue.empty()) return out;
  std::size_t last = n;
  for (std::size_t u : queue) {
    if (partner_[u] < 0) return std::nullopt;
    last = std::max(last, static_cast<std::size_t>(partner_[u]));
  }
  for (std::size_t t = n; t <= last; ++t) {
    if (partner_[t] >= 0 && static_cast<std::size_t>(partner_[t]) < n) {
      out.push_back({arrivals_[static_cast<std::size_t>(partner_[t])], true});
    } else {
      out.push_back({arrivals_[t], false});
    }
  }
  return out;
}

std::optional<DetailedWord> forward_word(const Multigraph& g, const std::vector<NodeId>& arrivals,
                                         std::size_t n, std::size_t horizon) {
  if (n > horizon) throw InputError("forward word index beyond the horizon");
  if (arrivals.size() < horizon) throw InputError("fewer arrivals than the horizon");
  const FcfmTrajectory traj(g, std::vector<NodeId>(arrivals.begin(),
                                                   arrivals.begin() + static_cast<std::ptrdiff_t>(horizon)));
  return traj.forward_word(n);
}

std::vector<NuBlock> enumerate_nu_blocks(const Multigraph& g) {
  std::vector<NuBlock> out;
  for (NodeSet s : independent_sets(maximal_subgraph(g))) {
    std::vector<NodeId> order = s.members();
    do {
      out.push_back({s, order});
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

std::vector<DetailedLetter> block_tail_letters(const Multigraph& g, NodeSet prefix) {
  std::vector<DetailedLetter> out;
  for (NodeId a : g.all() - g.neighborhood(prefix)) out.push_back({a, true});
  for (NodeId a : prefix & g.unlooped()) out.push_back({a, false});
  return out;
}

Rational nu_block_mass(const NuBlock& block, const Multigraph& g, const ProbMeasure& mu) {
  Rational mass = 1;
  NodeSet prefix;
  for (NodeId e : block.order) {
    prefix.insert(e);
    const Rational denom = 1 - nu_of_letters(block_tail_letters(g, prefix), mu);
    if (denom <= 0) throw NcondViolation("block mass diverges outside the stability region");
    mass *= mu[e] / denom;
  }
  return mass;
}

std::vector<DetailedWord> enumerate_backward_states(const Multigraph& g, std::size_t max_len) {
  std::vector<DetailedWord> out{DetailedWord{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (NodeId v = 0; v < g.size(); ++v) {
        for (bool barred : {false, true}) {
          if (len == 1 && barred) continue;
          bool ok = true;
          for (const auto& l : out[k]) {
            if (!l.barred && g.adjacent(l.node, v)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          DetailedWord w = out[k];
          w.push_back({v, barred});
          out.push_back(std::move(w));
        }
      }
    }
    level_begin = level_end;
  }
  return out;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<DetailedWord, DetailedWord>& p) const {
    DetailedWordHash h;
    return h(p.first) * 0x9e3779b97f4a7c15ULL ^ h(p.second);
  }
};

using Counts = std::unordered_map<DetailedWord, std::uint64_t, DetailedWordHash>;
using PairCounts = std::unordered_map<std::pair<DetailedWord, DetailedWord>, std::uint64_t, PairHash>;

}  // namespace

LocalBalanceReport verify_local_balance_empirical(const Multigraph& g, const ProbMeasure& mu,
                                                  std::uint64_t steps, std::uint64_t seed,
                                                  std::uint64_t min_visits) {
  check_support(g, mu);
  if (!ncond_check(g, mu).satisfied) throw NcondViolation("measure violates the stability condition");

  RandomStream rng(seed);
  const DiscreteSampler sampler(mu.to_doubles());
  std::vector<NodeId> arrivals(steps);
  for (auto& a : arrivals) a = static_cast<NodeId>(sampler(rng));
  const FcfmTrajectory traj(g, arrivals);

  LocalBalanceReport report;
  report.steps = steps;
  Counts from_b, from_f;
  PairCounts trans_b, trans_f;

  DetailedWord b;
  std::optional<DetailedWord> f = DetailedWord{};
  std::vector<std::size_t> queue;
  for (std::size_t n = 0; n < steps; ++n) {
    DetailedWord next_b = b;
    backward_step_unchecked(g, next_b, arrivals[n]);
    if (auto p = traj.partner(n); p && *p < n) {
      queue.erase(std::find(queue.begin(), queue.end(), *p));
    } else {
      queue.push_back(n);
    }
    std::optional<DetailedWord> next_f = traj.forward_word(n + 1, queue);
    if (!next_f) ++report.undetermined_forward;

    ++from_b[b];
    ++trans_b[{b, next_b}];
    if (f && next_f) {
      ++from_f[*f];
      ++trans_f[{*f, *next_f}];
    }
    b = std::move(next_b);
    f = std::move(next_f);
  }

  std::size_t within_two = 0;
  for (const auto& [pair, count] : trans_b) {
    const auto& [w, w2] = pair;
    const std::uint64_t nb = from_b[w];
    const DetailedWord fw = reverse_copy(w2);
    auto it_f = from_f.find(fw);
    if (nb < min_visits || it_f == from_f.end() || it_f->second < min_visits) continue;
    const std::uint64_t nf = it_f->second;
    const DetailedWord fw2 = reverse_copy(w);
    auto it_t = trans_f.find({fw, fw2});
    const double pb = static_cast<double>(count) / static_cast<double>(nb);
    const double pf = it_t == trans_f.end() ? 0.0 : static_cast<double>(it_t->second) / static_cast<double>(nf);
    const double nu_w = to_double(nu(w, mu));
    const double nu_w2 = to_double(nu(w2, mu));
    const double lhs = nu_w * pb;
    const double rhs = nu_w2 * pf;
    const double se = std::sqrt(nu_w * nu_w * pb * (1 - pb) / static_cast<double>(nb) +
                                nu_w2 * nu_w2 * pf * (1 - pf) / static_cast<double>(nf));
    double z = 0;
    if (se > 0) {
      z = std::abs(lhs - rhs) / se;
    } else if (lhs != rhs) {
      z = INFINITY;
    }
    ++report.pairs_tested;
    report.max_abs_z = std::max(report.max_abs_z, z);
    report.max_discrepancy = std::max(report.max_discrepancy, std::abs(lhs - rhs));
    if (z <= 2) ++within_two;
    if (z > 3) report.all_within_3se = false;
  }
  if (report.pairs_tested > 0) {
    report.fraction_within_2se = static_cast<double>(within_two) / static_cast<double>(report.pairs_tested);
  }
  return report;
}

std::vector<Excursion> excursion_decompose(const Multigraph& g, const std::vector<NodeId>& arrivals) {
  const FcfmTrajectory traj(g, arrivals);
  std::vector<Excursion> out;
  std::size_t start = 0;
  std::size_t open = 0;
  for (std::size_t t = 0; t < arrivals.size(); ++t) {
    auto p = traj.partner(t);
    if (p && *p < t) {
      --open;
    } else {
      ++open;
    }
    if (open == 0) {
      Excursion e;
      for (std::size_t k = start; k <= t; ++k) {
        e.word.push_back(arrivals[k]);
        e.partners.push_back(arrivals[*traj.partner(k)]);
      }
      out.push_back(std::move(e));
      start = t + 1;
    }
  }
  if (out.empty()) throw InputError("no complete excursion in the trajectory");
  return out;
}

std::vector<NodeId> partner_word(const Multigraph& g, const std::vector<NodeId>& word) {
  if (word.empty()) return {};
  const FcfmTrajectory traj(g, word);
  std::vector<NodeId> out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    auto p = traj.partner(k);
    if (!p) throw InputError("word does not empty the queue");
    out.push_back(word[*p]);
  }
  return out;
}

std::vector<NodeId> inverse_partner_word(const Multigraph& g, const std::vector<NodeId>& image) {
  std::vector<NodeId> out = partner_word(g, std::vector<NodeId>(image.rbegin(), image.rend()));
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_letter_permutation(const std::vector<NodeId>& word, const std::vector<NodeId>& image) {
  return word.size() == image.size() && std::is_permutation(word.begin(), word.end(), image.begin());
}

}  // namespace smatch
