#pragma once

#include <string>
#include <string_view>

#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/policies.hpp"

namespace smatch {

/// {"nodes": [...], "edges": [[a, b], ...], "self_loops": [...]}. Node ids are
/// sorted lexicographically on parse. Throws InputError.
Multigraph parse_graph(std::string_view json_text);
/// Sorted keys, two-space indent; parse then serialize is byte-stable.
std::string serialize_graph(const Multigraph& g);

/// {"<node>": "<decimal or p/q>", ...}; JSON numbers are read through their
/// shortest decimal spelling.
ProbMeasure parse_measure(const Multigraph& g, std::string_view json_text);
std::string serialize_measure(const Multigraph& g, const ProbMeasure& mu);

/// Tagged object on "kind":
///   fcfm | lcfm | uniform | ml | ms
///   priority   {"orders": {"v": ["a", ["b", "c"], ...]}}   nested arrays are tie groups
///   random     {"orders": {"v": [{"p": "0.5", "order": [...]}, ...]}}
///   maxweight  {"beta": "1", "rewards": {"v,j": "0.5", ...}, "default_reward": "0"}
///   v2favorable {"inner": {...}}
/// Throws InputError.
PolicySpec parse_policy(const Multigraph& g, std::string_view json_text);
std::string serialize_policy(const Multigraph& g, const PolicySpec& policy);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace smatch
