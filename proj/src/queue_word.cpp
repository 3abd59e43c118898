#include "smatch/queue_word.hpp"

#include <algorithm>
#include <sstream>

#include "smatch/rational.hpp"

namespace smatch {

QueueWord::QueueWord(std::vector<NodeId> letters) {
  for (NodeId v : letters) push_back(v);
}

ClassDetail QueueWord::detail(std::size_t n) const {
  ClassDetail x(n, 0);
  for (NodeId i = 0; i < n && i < counts_.size(); ++i) x[i] = counts_[i];
  return x;
}

void QueueWord::push_back(NodeId v) {
  if (v >= counts_.size()) counts_.resize(v + 1, 0);
  letters_.push_back(v);
  ++counts_[v];
  support_.insert(v);
}

void QueueWord::erase_at(std::size_t k) {
  const NodeId v = letters_.at(k);
  letters_.erase(letters_.begin() + static_cast<std::ptrdiff_t>(k));
  if (--counts_[v] == 0) support_.erase(v);
}

QueueWord QueueWord::appended(NodeId v) const {
  QueueWord out = *this;
  out.push_back(v);
  return out;
}

QueueWord QueueWord::without(std::size_t k) const {
  QueueWord out = *this;
  out.erase_at(k);
  return out;
}

std::size_t QueueWord::first_position(NodeId i) const {
  if (!support_.contains(i)) return size();
  return static_cast<std::size_t>(std::find(letters_.begin(), letters_.end(), i) - letters_.begin());
}

std::size_t QueueWord::last_position(NodeId i) const {
  if (!support_.contains(i)) return size();
  for (std::size_t k = size(); k-- > 0;) {
    if (letters_[k] == i) return k;
  }
  return size();
}

bool operator<(const QueueWord& a, const QueueWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters_ < b.letters_;
}

std::size_t QueueWordHash::operator()(const QueueWord& w) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (NodeId v : w.letters()) {
    h ^= static_cast<std::uint64_t>(v) + 1;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

bool is_admissible(const Multigraph& g, const QueueWord& w) {
  for (NodeId v : w.letters()) {
    if (v >= g.size()) return false;
  }
  return is_admissible(g, w.detail(g.size()));
}

bool is_admissible(const Multigraph& g, const ClassDetail& x) {
  if (x.size() != g.size()) return false;
  NodeSet present;
  for (NodeId i = 0; i < x.size(); ++i) {
    if (x[i] > 0) present.insert(i);
  }
  for (NodeId i : present) {
    if ((g.neighbors(i) - NodeSet::single(i)).intersects(present)) return false;
    if (g.has_self_loop(i) && x[i] > 1) return false;
  }
  return true;
}

std::string format_word(const Multigraph& g, const QueueWord& w) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0) out += ' ';
    out += g.name(w[k]);
  }
  return out;
}

QueueWord parse_word(const Multigraph& g, std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "ε")) return QueueWord{};

  QueueWord w;
  if (tokens.size() == 1 && !g.find(tokens[0])) {
    for (char c : tokens[0]) w.push_back(g.id(std::string_view(&c, 1)));
    return w;
  }
  for (const auto& t : tokens) w.push_back(g.id(t));
  return w;
}

NodeSet match_candidates(const Multigraph& g, NodeSet present, NodeId v) {
  return g.neighbors(v) & present;
}

}  // namespace smatch
