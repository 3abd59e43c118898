// Command-line front end: every command reads a graph (and usually a measure
// and a policy), prints a JSON summary on stdout and, when the command has
// one, a CSV table. Exit 0 on success, 1 on a failed verification, 2 on bad input.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smatch/chain.hpp"
#include "smatch/detailed.hpp"
#include "smatch/drift.hpp"
#include "smatch/io.hpp"
#include "smatch/measures.hpp"
#include "smatch/multigraph.hpp"
#include "smatch/policies.hpp"
#include "smatch/stationary.hpp"

namespace {

using nlohmann::ordered_json;
using namespace smatch;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Config {
  std::string graph;
  std::string mu;
  std::string policy;
  std::uint64_t steps = 1000000;
  std::optional<std::uint64_t> burn_in;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_len;
  std::optional<double> tol;
  unsigned replicas = 1;
  std::string out;

  // command specific
  std::string function = "L";
  std::string delta;
  std::string split;
  bool check = false;
  bool blowup = false;
  std::uint64_t min_visits = 500;
};

struct Output {
  std::string name;
  std::string table;
  ordered_json summary;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

ordered_json node_list(const Multigraph& g, NodeSet s) {
  ordered_json out = ordered_json::array();
  for (NodeId i : s) out.push_back(g.name(i));
  return out;
}

Multigraph load_graph(const Config& c) {
  if (c.graph.empty()) throw InputError("--graph is required");
  return parse_graph(read_file(c.graph));
}

ProbMeasure load_mu(const Config& c, const Multigraph& g) {
  if (c.mu.empty()) throw InputError("--mu is required");
  return parse_measure(g, read_file(c.mu));
}

/// --policy accepts a file, inline JSON, or a bare kind such as "fcfm" or "ml".
PolicySpec load_policy(const Config& c, const Multigraph& g) {
  if (c.policy.empty()) return fcfm();
  if (c.policy.front() == '{') return parse_policy(g, c.policy);
  if (std::filesystem::exists(c.policy)) return parse_policy(g, read_file(c.policy));
  return parse_policy(g, ordered_json{{"kind", c.policy}}.dump());
}

double tolerance(const Config& c, double fallback) { return c.tol.value_or(fallback); }

std::size_t max_len(const Config& c, std::size_t fallback) { return c.max_len.value_or(fallback); }

std::uint64_t burn_in(const Config& c) { return c.burn_in.value_or(c.steps / 100); }

int verdict(Output& o, bool ok) {
  o.summary["verdict"] = ok ? "pass" : "fail";
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- commands

int cmd_info(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  auto& s = o.summary;
  s["nodes"] = g.names();
  s["self_looped"] = node_list(g, g.self_looped());
  s["unlooped"] = node_list(g, g.unlooped());
  s["edge_count"] = g.edge_count();
  s["ordered_edge_count"] = g.ordered_edge_count();
  ordered_json deg = ordered_json::object();
  for (NodeId i = 0; i < g.size(); ++i) deg[g.name(i)] = g.degree(i);
  s["degrees"] = deg;
  if (auto bp = bipartition(g)) {
    s["bipartite"] = true;
    s["bipartition"] = {node_list(g, bp->side_a), node_list(g, bp->side_b)};
  } else {
    s["bipartite"] = false;
  }
  ordered_json sets = ordered_json::array();
  for (NodeSet i : independent_sets(g)) sets.push_back(node_list(g, i));
  s["independent_sets"] = sets;
  const Multigraph reduced = maximal_subgraph(g);
  ordered_json reduced_sets = ordered_json::array();
  for (NodeSet i : independent_sets(reduced)) reduced_sets.push_back(node_list(g, i));
  s["maximal_subgraph_independent_sets"] = reduced_sets;
  const BlowupMap map = minimal_blowup(g);
  s["blowup_nodes"] = map.blown.names();
  s["blowup_edge_count"] = map.blown.edge_count();
  if (auto parts = complete_multipartite_decomposition(g)) {
    ordered_json p = ordered_json::array();
    for (NodeSet part : *parts) p.push_back(node_list(g, part));
    s["complete_multipartite"] = {{"p", parts->size()}, {"parts", p}};
  } else {
    s["complete_multipartite"] = nullptr;
  }
  return kOk;
}

int cmd_ncond(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  auto& s = o.summary;
  const auto bp = bipartition(g);
  if (bp) {
    s["region"] = "empty";
    s["bipartition"] = {node_list(g, bp->side_a), node_list(g, bp->side_b)};
  } else {
    s["region"] = "nonempty";
  }
  if (c.mu.empty()) {
    if (!bp) throw InputError("--mu is required for a graph that is not bipartite");
    return kOk;
  }
  const ProbMeasure mu = load_mu(c, g);
  const NcondReport r = ncond_check(g, mu);
  s["satisfied"] = r.satisfied;
  s["margin"] = r.margin ? ordered_json(format_rational(*r.margin)) : ordered_json(nullptr);
  s["witness"] = r.witness ? node_list(g, *r.witness) : ordered_json(nullptr);

  std::ostringstream t;
  t << "independent_set,mu_I,mu_E_I,gap\n";
  for (NodeSet i : independent_sets(g)) {
    const Rational a = mu.of(i);
    const Rational b = mu.of(g.neighborhood(i));
    t << csv_field(format_node_set(g, i)) << ',' << format_rational(a) << ',' << format_rational(b) << ','
      << format_rational(b - a) << '\n';
  }
  o.table = t.str();
  return kOk;
}

int cmd_mudeg(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = mu_deg(g);
  const bool bipartite = is_bipartite_graph(g);
  const NcondReport r = ncond_check(g, mu);
  auto& s = o.summary;
  s["mu_deg"] = ordered_json::parse(serialize_measure(g, mu));
  s["bipartite"] = bipartite;
  s["in_ncond"] = r.satisfied;
  std::ostringstream t;
  t << "node,degree,mu_deg\n";
  for (NodeId i = 0; i < g.size(); ++i) {
    t << csv_field(g.name(i)) << ',' << g.degree(i) << ',' << format_rational(mu[i]) << '\n';
  }
  o.table = t.str();
  // μ_deg lies in the region exactly when the graph is not bipartite.
  return verdict(o, r.satisfied != bipartite);
}

int cmd_stationary_fcfm(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProductForm dist(g, load_mu(c, g));
  const std::size_t len = max_len(c, 4);
  std::ostringstream t;
  t << "word,exact,probability\n";
  Rational mass = 0;
  for (const QueueWord& w : enumerate_states(g, len)) {
    const Rational p = dist.pi_w(w);
    mass += p;
    t << csv_field(format_word(g, w)) << ',' << format_rational(p) << ',' << fmt_double(to_double(p)) << '\n';
  }
  o.table = t.str();
  auto& s = o.summary;
  s["alpha"] = format_rational(dist.alpha());
  s["alpha_double"] = to_double(dist.alpha());
  s["max_len"] = len;
  s["truncated_mass"] = format_rational(mass);
  s["tail_mass"] = format_rational(1 - mass);
  s["tail_mass_double"] = to_double(1 - mass);
  return kOk;
}

int cmd_verify_balance(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const std::size_t len = max_len(c, 6);
  const BalanceReport r = balance_residual(g, mu, len);
  const double tol = tolerance(c, 1e-12);
  auto& s = o.summary;
  s["max_len"] = len;
  s["states_checked"] = r.states_checked;
  s["max_residual"] = format_rational(r.max_residual);
  s["max_residual_double"] = to_double(r.max_residual);
  s["argmax"] = format_word(g, r.argmax);
  s["tolerance"] = tol;
  return verdict(o, to_double(r.max_residual) < tol);
}

std::string visits_table(const Multigraph& g, const SimulationResult& r) {
  std::ostringstream t;
  t << "word,visits,frequency\n";
  for (const auto& [w, n] : r.sorted_visits()) {
    t << csv_field(format_word(g, w)) << ',' << n << ','
      << fmt_double(static_cast<double>(n) / static_cast<double>(r.total_steps)) << '\n';
  }
  return t.str();
}

int cmd_simulate(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const PolicySpec policy = load_policy(c, g);
  if (c.steps == 0) throw InputError("--steps must be positive");
  const SimulationConfig sc{c.steps, burn_in(c), c.seed};
  const auto parts = simulate_replicas(g, mu, policy, sc, c.replicas);
  const SimulationResult merged = merge_results(parts);
  o.table = visits_table(g, merged);
  auto& s = o.summary;
  s["policy"] = policy.label();
  s["seed"] = c.seed;
  s["steps"] = c.steps;
  s["burn_in"] = sc.burn_in;
  s["replicas"] = c.replicas;
  s["mean_length"] = merged.mean_length;
  s["max_length"] = merged.max_length;
  ordered_json occ = ordered_json::object();
  for (NodeId i = 0; i < g.size(); ++i) occ[g.name(i)] = merged.occupancy[i];
  s["occupancy"] = occ;
  s["distinct_states"] = merged.visits.size();
  s["steps_beyond_length_" + std::to_string(sc.record_max_len)] = merged.long_visits;
  s["stability_slope"] = stability_slope(g, mu, policy, c.steps, c.seed);
  return kOk;
}

int cmd_tv_compare(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const PolicySpec policy = load_policy(c, g);
  const ProductForm dist(g, mu);
  const std::size_t len = max_len(c, 4);
  const double tol = tolerance(c, 0.02);
  const SimulationConfig sc{c.steps, burn_in(c), c.seed, std::max<std::size_t>(32, len)};
  const auto parts = simulate_replicas(g, mu, policy, sc, c.replicas);
  const SimulationResult merged = merge_results(parts);

  std::ostringstream t;
  t << "word,exact,empirical,abs_diff\n";
  for (const QueueWord& w : enumerate_states(g, len)) {
    const double p = to_double(dist.pi_w(w));
    const double e = merged.frequency(w);
    t << csv_field(format_word(g, w)) << ',' << fmt_double(p) << ',' << fmt_double(e) << ','
      << fmt_double(std::abs(p - e)) << '\n';
  }
  o.table = t.str();

  bool ok = true;
  ordered_json reps = ordered_json::array();
  for (std::size_t r = 0; r < parts.size(); ++r) {
    const double tv = tv_to_product_form(dist, parts[r], len);
    ok = ok && tv < tol;
    reps.push_back({{"seed", parts[r].seed}, {"tv", tv}});
  }
  auto& s = o.summary;
  s["policy"] = policy.label();
  s["steps"] = c.steps;
  s["burn_in"] = sc.burn_in;
  s["max_len"] = len;
  s["exact_tail_mass"] = to_double(1 - truncated_mass(dist, len));
  s["replicas"] = reps;
  s["tolerance"] = tol;
  return verdict(o, ok);
}

int cmd_reversibility(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const LocalBalanceReport r = verify_local_balance_empirical(g, mu, c.steps, c.seed, c.min_visits);
  auto& s = o.summary;
  s["steps"] = r.steps;
  s["seed"] = c.seed;
  s["min_visits"] = c.min_visits;
  s["pairs_tested"] = r.pairs_tested;
  s["max_abs_z"] = r.max_abs_z;
  s["fraction_within_2se"] = r.fraction_within_2se;
  s["all_within_3se"] = r.all_within_3se;
  s["max_discrepancy"] = r.max_discrepancy;
  s["undetermined_forward"] = r.undetermined_forward;
  return verdict(o, r.pairs_tested > 0 && r.all_within_3se && r.fraction_within_2se >= 0.95);
}

std::vector<NodeId> draw_arrivals(const ProbMeasure& mu, std::uint64_t steps, std::uint64_t seed) {
  RandomStream rng(seed);
  const DiscreteSampler sampler(mu.to_doubles());
  std::vector<NodeId> out(steps);
  for (auto& a : out) a = static_cast<NodeId>(sampler(rng));
  return out;
}

int cmd_excursions(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const auto excursions = excursion_decompose(g, draw_arrivals(mu, c.steps, c.seed));

  std::map<std::size_t, std::uint64_t> lengths;
  std::vector<std::uint64_t> partner_counts(g.size());
  std::uint64_t letters = 0;
  std::uint64_t permutation_ok = 0;
  std::uint64_t inverse_ok = 0;
  for (const Excursion& e : excursions) {
    ++lengths[e.word.size()];
    for (NodeId p : e.partners) ++partner_counts[p];
    letters += e.word.size();
    if (is_letter_permutation(e.word, e.partners)) ++permutation_ok;
    if (inverse_partner_word(g, e.partners) == e.word) ++inverse_ok;
  }

  std::ostringstream t;
  t << "length,count\n";
  for (const auto& [len, n] : lengths) t << len << ',' << n << '\n';
  o.table = t.str();

  const double z_limit = tolerance(c, 4.0);
  bool freq_ok = true;
  ordered_json freq = ordered_json::array();
  for (NodeId i = 0; i < g.size(); ++i) {
    const double p = to_double(mu[i]);
    const double n = static_cast<double>(letters);
    const double hat = static_cast<double>(partner_counts[i]) / n;
    const double z = (hat - p) / std::sqrt(p * (1 - p) / n);
    freq_ok = freq_ok && std::abs(z) <= z_limit;
    freq.push_back({{"class", g.name(i)}, {"mu", p}, {"frequency", hat}, {"z", z}});
  }
  auto& s = o.summary;
  s["steps"] = c.steps;
  s["seed"] = c.seed;
  s["excursions"] = excursions.size();
  s["matched_letters"] = letters;
  s["permutation_valid"] = permutation_ok;
  s["inverse_valid"] = inverse_ok;
  s["partner_class_frequencies"] = freq;
  s["z_limit"] = z_limit;
  return verdict(o, freq_ok && permutation_ok == excursions.size());
}

std::map<NodeId, Rational> parse_split(const Multigraph& g, const std::string& text) {
  std::map<NodeId, Rational> split;
  if (text.empty()) return split;
  if (text.front() == '{') {
    const auto doc = ordered_json::parse(text);
    for (const auto& [k, v] : doc.items()) {
      split[g.id(k)] = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
    }
    return split;
  }
  const Rational s = parse_rational(text);
  for (NodeId i : g.self_looped()) split[i] = s;
  return split;
}

LyapunovFn lyapunov(const Config& c, const Multigraph& g, const ProbMeasure& mu) {
  if (c.function == "Q") return LyapunovFn::quadratic();
  if (c.function == "L") return LyapunovFn::linear();
  if (c.function == "Ldelta") {
    Rational delta;
    if (!c.delta.empty()) {
      delta = parse_rational(c.delta);
    } else {
      const NcondReport r = ncond_check(g, mu);
      if (!r.satisfied) throw NcondViolation("measure violates the stability condition");
      if (!r.margin) throw InputError("no independent set, so --delta is required");
      delta = *r.margin;
    }
    return LyapunovFn::weighted_linear(g, mu, delta);
  }
  throw InputError("--function must be Q, L or Ldelta");
}

int cmd_drift(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const PolicySpec policy = load_policy(c, g);
  const LyapunovFn f = lyapunov(c, g, mu);
  const std::size_t len = max_len(c, 4);
  const double tol = tolerance(c, 1e-12);
  const DriftModels models = make_drift_models(g, mu, policy, parse_split(g, c.split));

  Rational worst_q = 0, worst_left = 0, worst_right = 0;
  std::ostringstream t;
  t << "word,drift,quadratic_residual,linear_left_residual,linear_right_residual\n";
  for (const QueueWord& w : enumerate_states(g, len)) {
    const Rational d = exact_drift(g, mu, policy, w, f).drift;
    const IdentityCheck ic = check_identities(models, w);
    worst_q = std::max(worst_q, ic.quadratic_residual);
    worst_left = std::max(worst_left, ic.linear_left_residual);
    worst_right = std::max(worst_right, ic.linear_right_residual);
    t << csv_field(format_word(g, w)) << ',' << fmt_double(to_double(d)) << ','
      << fmt_double(to_double(ic.quadratic_residual)) << ',' << fmt_double(to_double(ic.linear_left_residual))
      << ',' << fmt_double(to_double(ic.linear_right_residual)) << '\n';
  }
  o.table = t.str();

  const NegativeDriftScan scan = scan_negative_drift(g, mu, policy, f, len);
  auto& s = o.summary;
  s["function"] = f.label();
  s["policy"] = policy.label();
  s["max_len"] = len;
  s["max_quadratic_residual"] = to_double(worst_q);
  s["max_linear_left_residual"] = to_double(worst_left);
  s["max_linear_right_residual"] = to_double(worst_right);
  ordered_json by_len = ordered_json::array();
  for (const Rational& m : scan.max_drift_by_length) by_len.push_back(to_double(m));
  s["max_drift_by_length"] = by_len;
  s["negative_from_length"] = scan.threshold ? ordered_json(*scan.threshold) : ordered_json(nullptr);
  s["eta"] = scan.threshold ? ordered_json(to_double(scan.eta)) : ordered_json(nullptr);
  s["tolerance"] = tol;
  return verdict(o, to_double(worst_q) < tol && to_double(worst_left) < tol && to_double(worst_right) < tol);
}

int cmd_transform(const Config& c, Output& o) {
  if (c.check == c.blowup) throw InputError("transform needs exactly one of --check or --blowup");
  const Multigraph g = load_graph(c);
  const Multigraph result = c.check ? maximal_subgraph(g) : minimal_blowup(g).blown;
  o.name = c.check ? "maximal_subgraph" : "blowup";
  o.summary = ordered_json::parse(serialize_graph(result));
  return kOk;
}

int cmd_extend_measure(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const BlowupMap map = minimal_blowup(g);
  const auto split = parse_split(g, c.split);
  const ProbMeasure mu_hat = split.empty() ? extend_measure_half(mu, map) : extend_measure(mu, map, split);
  o.summary = ordered_json::parse(serialize_measure(map.blown, mu_hat));
  return kOk;
}

int cmd_verify_identities(const Config& c, Output& o) {
  const Multigraph g = load_graph(c);
  const ProbMeasure mu = load_mu(c, g);
  const std::size_t len = max_len(c, 4);
  const double tol = tolerance(c, 1e-12);
  const auto split = parse_split(g, c.split);

  std::vector<PolicySpec> policies;
  if (c.policy.empty()) {
    policies = {fcfm(), match_the_longest(g), match_the_shortest(g), uniform_random()};
  } else {
    policies = {load_policy(c, g)};
  }

  bool ok = true;
  ordered_json checks = ordered_json::array();
  std::ostringstream t;
  t << "policy,word,quadratic_residual,linear_left_residual,linear_right_residual\n";
  for (const PolicySpec& policy : policies) {
    const DriftModels models = make_drift_models(g, mu, policy, split);
    Rational worst = 0;
    for (const QueueWord& w : enumerate_states(g, len)) {
      const IdentityCheck ic = check_identities(models, w);
      worst = std::max({worst, ic.quadratic_residual, ic.linear_left_residual, ic.linear_right_residual});
      t << csv_field(policy.label()) << ',' << csv_field(format_word(g, w)) << ','
        << format_rational(ic.quadratic_residual) << ',' << format_rational(ic.linear_left_residual) << ','
        << format_rational(ic.linear_right_residual) << '\n';
    }
    const bool pass = to_double(worst) < tol;
    ok = ok && pass;
    checks.push_back({{"check", "drift identities"}, {"policy", policy.label()},
                      {"max_residual", to_double(worst)}, {"pass", pass}});
  }
  const bool equivalence = ncond_equivalence_check(g, mu);
  ok = ok && equivalence;
  checks.push_back({{"check", "ncond equivalence on blow-up"}, {"pass", equivalence}});

  const BlowupMap map = minimal_blowup(g);
  const bool round_trip = reduce_measure(extend_measure_half(mu, map), map) == mu;
  ok = ok && round_trip;
  checks.push_back({{"check", "extend then reduce measure"}, {"pass", round_trip}});

  o.table = t.str();
  o.summary["max_len"] = len;
  o.summary["tolerance"] = tol;
  o.summary["checks"] = checks;
  return verdict(o, ok);
}

void emit(const Config& c, const Output& o) {
  const std::string summary = o.summary.dump(2) + "\n";
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    const std::filesystem::path dir(c.out);
    if (!o.table.empty()) write_file((dir / (o.name + ".csv")).string(), o.table);
    write_file((dir / (o.name + ".json")).string(), summary);
  } else if (!o.table.empty()) {
    std::cout << o.table << '\n';
  }
  std::cout << summary;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic matching models on multigraphs"};
  app.require_subcommand(1);
  Config c;

  using Handler = int (*)(const Config&, Output&);
  struct Command {
    const char* name;
    const char* help;
    Handler run;
  };
  const std::vector<Command> commands = {
      {"info", "graph structure, transforms and multipartite decomposition", cmd_info},
      {"ncond", "stability region check for a measure", cmd_ncond},
      {"mudeg", "degree measure and its membership in the stability region", cmd_mudeg},
      {"stationary-fcfm", "FCFM product-form probabilities up to --max-len", cmd_stationary_fcfm},
      {"verify-balance", "exact global balance residual of the product form", cmd_verify_balance},
      {"simulate", "Monte Carlo run of the queue-detail chain", cmd_simulate},
      {"tv-compare", "total variation between simulation and the product form", cmd_tv_compare},
      {"reversibility", "empirical local balance of the detailed chains", cmd_reversibility},
      {"excursions", "excursion lengths and matched partner frequencies", cmd_excursions},
      {"drift", "exact drift of a Lyapunov function with identity residuals", cmd_drift},
      {"transform", "emit the loop-free subgraph (--check) or the blow-up graph (--blowup)", cmd_transform},
      {"extend-measure", "extend a measure to the blow-up graph", cmd_extend_measure},
      {"verify-identities", "drift identities, region equivalence and measure round trip", cmd_verify_identities},
  };

  std::string chosen;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--graph", c.graph, "graph JSON file");
    sub->add_option("--mu", c.mu, "measure JSON file");
    sub->add_option("--policy", c.policy, "policy JSON file, inline JSON, or a kind (fcfm, lcfm, uniform, ml, ms)");
    sub->add_option("--steps", c.steps, "arrivals to simulate")->capture_default_str();
    sub->add_option("--burn-in", c.burn_in, "unrecorded arrivals (default 1% of steps)");
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--max-len", c.max_len, "largest word length considered");
    sub->add_option("--tol", c.tol, "tolerance of the verification");
    sub->add_option("--replicas", c.replicas, "concurrent replicas, seeds seed..seed+r-1")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "directory receiving <command>.csv and <command>.json");
    sub->add_option("--function", c.function, "Q, L or Ldelta")->capture_default_str();
    sub->add_option("--delta", c.delta, "delta of Ldelta (default: stability margin)");
    sub->add_option("--split", c.split, "blow-up split: a value in (0,1) or {\"node\": value}");
    sub->add_option("--min-visits", c.min_visits, "visits needed before a pair is tested")->capture_default_str();
    sub->add_flag("--check", c.check, "transform: loop-free subgraph");
    sub->add_flag("--blowup", c.blowup, "transform: minimal blow-up graph");
    sub->callback([&chosen, name = std::string(cmd.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  for (const Command& cmd : commands) {
    if (chosen != cmd.name) continue;
    Output o{cmd.name, {}, ordered_json::object()};
    try {
      const int status = cmd.run(c, o);
      emit(c, o);
      return status;
    } catch (const InputError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const NcondViolation& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kBadInput;
    }
  }
  return kBadInput;
}
