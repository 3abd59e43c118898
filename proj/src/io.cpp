#include "smatch/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace smatch {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) throw InputError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

Rational as_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw InputError("expected a number or a numeric string");
}

NodeSet tier_from_json(const Multigraph& g, const json& entry) {
  NodeSet t;
  if (entry.is_array()) {
    for (const auto& e : entry) t.insert(g.id(as_string(e, "tie group member")));
  } else {
    t.insert(g.id(as_string(entry, "order entry")));
  }
  return t;
}

Tiers tiers_from_json(const Multigraph& g, const json& order) {
  if (!order.is_array()) throw InputError("an order must be an array");
  Tiers tiers;
  for (const auto& entry : order) tiers.push_back(tier_from_json(g, entry));
  return tiers;
}

json tiers_to_json(const Multigraph& g, const Tiers& tiers) {
  json out = json::array();
  for (NodeSet t : tiers) {
    if (t.size() == 1) {
      out.push_back(g.name(*t.begin()));
    } else {
      json group = json::array();
      for (NodeId j : t) group.push_back(g.name(j));
      out.push_back(group);
    }
  }
  return out;
}

const json& per_class(const Multigraph& g, const json& orders, NodeId v) {
  if (!orders.is_object() || !orders.contains(g.name(v))) {
    throw InputError("missing order for class '" + g.name(v) + "'");
  }
  return orders.at(g.name(v));
}

PolicySpec policy_from_json(const Multigraph& g, const json& obj) {
  const std::string kind = as_string(require(obj, "kind"), "kind");
  PolicySpec p;
  if (kind == "fcfm") {
    p = fcfm();
  } else if (kind == "lcfm") {
    p = lcfm();
  } else if (kind == "uniform") {
    p = uniform_random();
  } else if (kind == "ml") {
    p = match_the_longest(g);
  } else if (kind == "ms") {
    p = match_the_shortest(g);
  } else if (kind == "priority") {
    const json& orders = require(obj, "orders");
    Priority pr;
    for (NodeId v = 0; v < g.size(); ++v) pr.order.push_back(tiers_from_json(g, per_class(g, orders, v)));
    p = PolicySpec{std::move(pr)};
  } else if (kind == "random") {
    const json& orders = require(obj, "orders");
    RandomOrder r;
    for (NodeId v = 0; v < g.size(); ++v) {
      std::vector<WeightedOrder> law;
      for (const auto& item : per_class(g, orders, v)) {
        law.push_back({tiers_from_json(g, require(item, "order")), as_rational(require(item, "p"))});
      }
      r.orders.push_back(std::move(law));
    }
    p = PolicySpec{std::move(r)};
  } else if (kind == "maxweight") {
    MaxWeight mw;
    mw.beta = as_rational(require(obj, "beta"));
    std::optional<Rational> fallback;
    if (obj.contains("default_reward")) fallback = as_rational(obj.at("default_reward"));
    std::map<std::pair<NodeId, NodeId>, Rational> given;
    if (obj.contains("rewards")) {
      for (const auto& [key, value] : obj.at("rewards").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) throw InputError("reward key '" + key + "' must be 'v,j'");
        const NodeId v = g.id(key.substr(0, comma));
        const NodeId j = g.id(key.substr(comma + 1));
        if (!g.adjacent(v, j)) throw InputError("reward given for incompatible pair '" + key + "'");
        given[{v, j}] = as_rational(value);
      }
    }
    mw.reward.assign(g.size(), std::vector<Rational>(g.size()));
    for (NodeId v = 0; v < g.size(); ++v) {
      for (NodeId j : g.neighbors(v)) {
        auto it = given.find({v, j});
        if (it != given.end()) {
          mw.reward[v][j] = it->second;
        } else if (fallback) {
          mw.reward[v][j] = *fallback;
        } else {
          throw InputError("missing reward for pair '" + g.name(v) + "," + g.name(j) + "'");
        }
      }
    }
    p = PolicySpec{std::move(mw)};
  } else if (kind == "v2favorable") {
    p = v2_favorable(g, policy_from_json(g, require(obj, "inner")));
  } else {
    throw InputError("unknown policy kind '" + kind + "'");
  }
  validate_policy(g, p);
  return p;
}

json policy_to_json(const Multigraph& g, const PolicySpec& policy) {
  json out;
  if (std::holds_alternative<Fcfm>(policy.kind)) {
    out["kind"] = "fcfm";
  } else if (std::holds_alternative<Lcfm>(policy.kind)) {
    out["kind"] = "lcfm";
  } else if (std::holds_alternative<UniformRandom>(policy.kind)) {
    out["kind"] = "uniform";
  } else if (const auto* pr = std::get_if<Priority>(&policy.kind)) {
    out["kind"] = "priority";
    for (NodeId v = 0; v < g.size(); ++v) out["orders"][g.name(v)] = tiers_to_json(g, pr->order[v]);
  } else if (const auto* r = std::get_if<RandomOrder>(&policy.kind)) {
    out["kind"] = "random";
    for (NodeId v = 0; v < g.size(); ++v) {
      json law = json::array();
      for (const auto& o : r->orders[v]) {
        law.push_back({{"order", tiers_to_json(g, o.tiers)}, {"p", format_rational(o.probability)}});
      }
      out["orders"][g.name(v)] = law;
    }
  } else if (const auto* mw = std::get_if<MaxWeight>(&policy.kind)) {
    out["kind"] = "maxweight";
    out["beta"] = format_rational(mw->beta);
    out["rewards"] = json::object();
    for (NodeId v = 0; v < g.size(); ++v) {
      for (NodeId j : g.neighbors(v)) {
        out["rewards"][g.name(v) + "," + g.name(j)] = format_rational(mw->reward[v][j]);
      }
    }
  } else if (const auto* f = std::get_if<V2Favorable>(&policy.kind)) {
    out["kind"] = "v2favorable";
    out["inner"] = policy_to_json(g, *f->inner);
  }
  return out;
}

}  // namespace

Multigraph parse_graph(std::string_view json_text) {
  const json doc = parse_json(json_text);
  std::vector<std::string> nodes;
  for (const auto& n : require(doc, "nodes")) nodes.push_back(as_string(n, "node id"));
  std::sort(nodes.begin(), nodes.end());

  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("an edge must be a two-element array");
      edges.emplace_back(as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"));
    }
  }
  std::vector<std::string> loops;
  if (doc.contains("self_loops")) {
    for (const auto& l : doc.at("self_loops")) loops.push_back(as_string(l, "self-loop node"));
  }
  return Multigraph(std::move(nodes), edges, loops);
}

std::string serialize_graph(const Multigraph& g) {
  json doc;
  doc["nodes"] = g.names();
  doc["edges"] = json::array();
  for (auto [i, j] : g.edges()) doc["edges"].push_back({g.name(i), g.name(j)});
  doc["self_loops"] = json::array();
  for (NodeId i : g.self_looped()) doc["self_loops"].push_back(g.name(i));
  return doc.dump(2) + "\n";
}

ProbMeasure parse_measure(const Multigraph& g, std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw InputError("a measure must be a JSON object");
  std::vector<std::optional<Rational>> weights(g.size());
  for (const auto& [key, value] : doc.items()) {
    const auto i = g.find(key);
    if (!i) throw InputError("measure names unknown node '" + key + "'");
    weights[*i] = as_rational(value);
  }
  std::vector<Rational> out;
  for (NodeId i = 0; i < g.size(); ++i) {
    if (!weights[i]) throw InputError("measure misses node '" + g.name(i) + "'");
    out.push_back(*weights[i]);
  }
  return ProbMeasure(std::move(out));
}

std::string serialize_measure(const Multigraph& g, const ProbMeasure& mu) {
  check_support(g, mu);
  json doc = json::object();
  for (NodeId i = 0; i < g.size(); ++i) doc[g.name(i)] = format_rational(mu[i]);
  return doc.dump(2) + "\n";
}

PolicySpec parse_policy(const Multigraph& g, std::string_view json_text) {
  return policy_from_json(g, parse_json(json_text));
}

std::string serialize_policy(const Multigraph& g, const PolicySpec& policy) {
  return policy_to_json(g, policy).dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace smatch
