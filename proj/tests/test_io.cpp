#include <gtest/gtest.h>

#include <filesystem>

#include "smatch/chain.hpp"
#include "smatch/io.hpp"
#include "support.hpp"

using namespace smatch;
using namespace smatch::testing;

namespace {

const std::vector<std::string> kFixtures = {"square_loops", "two_triangles_loop", "path_loop", "partite_loop"};

std::vector<std::string> names(const Multigraph& g, NodeSet s) {
  std::vector<std::string> out;
  for (NodeId i : s) out.push_back(g.name(i));
  return out;
}

}  // namespace

TEST(Io, GraphRoundTrip) {
  const std::string text = R"({"nodes": ["b", "a", "c"], "edges": [["a", "b"], ["c", "b"]], "self_loops": ["c"]})";
  const Multigraph g = parse_graph(text);
  EXPECT_EQ(g.name(0), "a");
  EXPECT_TRUE(g.has_self_loop(2));
  EXPECT_TRUE(g.adjacent(0, 1));
  const std::string once = serialize_graph(g);
  EXPECT_EQ(serialize_graph(parse_graph(once)), once);
  EXPECT_EQ(parse_graph(once), g);
}

TEST(Io, GraphRejectsBadInput) {
  EXPECT_THROW(parse_graph("{"), InputError);
  EXPECT_THROW(parse_graph(R"({"nodes": ["a", "a"], "edges": []})"), InputError);
  EXPECT_THROW(parse_graph(R"({"nodes": ["a", "b"], "edges": [["a", "z"]]})"), InputError);
  EXPECT_THROW(parse_graph(R"({"nodes": ["a"], "edges": [], "self_loops": ["q"]})"), InputError);
}

TEST(Io, MeasureRoundTrip) {
  const Multigraph g = path_loop();
  const ProbMeasure mu = parse_measure(g, R"({"1": 0.2, "2": "3/10", "3": "0.5"})");
  EXPECT_EQ(mu, path_loop_mu());
  const std::string once = serialize_measure(g, mu);
  EXPECT_EQ(parse_measure(g, once), mu);
  EXPECT_EQ(serialize_measure(g, parse_measure(g, once)), once);
  EXPECT_THROW(parse_measure(g, R"({"1": "0.5", "2": "0.5"})"), InputError);
  EXPECT_THROW(parse_measure(g, R"({"1": "0.5", "2": "0.5", "3": "0.5"})"), InputError);
  EXPECT_THROW(parse_measure(g, R"({"1": "x", "2": "0.5", "3": "0.5"})"), InputError);
}

TEST(Io, PolicyRoundTrip) {
  const Multigraph g = partite_loop();
  const std::vector<std::string> texts = {
      R"({"kind": "fcfm"})",
      R"({"kind": "lcfm"})",
      R"({"kind": "uniform"})",
      R"({"kind": "ml"})",
      R"({"kind": "ms"})",
      R"({"kind": "priority", "orders": {"1": ["3", ["2", "4"], "5"], "2": ["1", "3", "5"], "3": ["1", "2", "4"],
          "4": ["3", "1", "5"], "5": ["5", "1", "2", "4"]}})",
      R"({"kind": "maxweight", "beta": "1", "rewards": {"1,2": "0.5"}, "default_reward": "0"})",
      R"({"kind": "v2favorable", "inner": {"kind": "ml"}})",
  };
  for (const std::string& text : texts) {
    const PolicySpec p = parse_policy(g, text);
    validate_policy(g, p);
    const std::string once = serialize_policy(g, p);
    const PolicySpec back = parse_policy(g, once);
    EXPECT_EQ(serialize_policy(g, back), once) << text;
    EXPECT_EQ(back.label(), p.label());
    // Same decisions on every small state.
    for (const QueueWord& w : enumerate_states(g, 3)) {
      for (NodeId v = 0; v < g.size(); ++v) {
        const auto a = decision_distribution(g, p, w, v);
        const auto b = decision_distribution(g, back, w, v);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
          EXPECT_EQ(a[k].decision, b[k].decision);
          EXPECT_EQ(a[k].probability, b[k].probability);
        }
      }
    }
  }
  const Multigraph c = Multigraph::numbered(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  const std::string random = R"({"kind": "random", "orders": {
      "1": [{"p": "0.25", "order": ["2", "4"]}, {"p": "0.75", "order": ["4", "2"]}],
      "2": [{"p": "1", "order": ["1", "3"]}], "3": [{"p": "1", "order": ["2", "4"]}],
      "4": [{"p": "1", "order": ["1", "3"]}]}})";
  const PolicySpec r = parse_policy(c, random);
  EXPECT_EQ(serialize_policy(c, parse_policy(c, serialize_policy(c, r))), serialize_policy(c, r));
  EXPECT_THROW(parse_policy(g, R"({"kind": "nonsense"})"), InputError);
  EXPECT_THROW(parse_policy(g, R"({"kind": "priority", "orders": {"1": ["1"]}})"), InputError);
}

TEST(Io, FixtureFilesAreCanonical) {
  for (const std::string& name : kFixtures) {
    const Multigraph g = load_fixture_graph(name);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
    for (const auto& entry : std::filesystem::directory_iterator(fixture_path(name))) {
      const std::string file = entry.path().filename().string();
      if (file.rfind("mu", 0) == 0) {
        const ProbMeasure mu = parse_measure(g, read_file(entry.path().string()));
        EXPECT_EQ(parse_measure(g, serialize_measure(g, mu)), mu) << name << "/" << file;
      } else if (file.rfind("policy", 0) == 0) {
        const PolicySpec p = parse_policy(g, read_file(entry.path().string()));
        EXPECT_NO_THROW(validate_policy(g, p)) << name << "/" << file;
      }
    }
  }
}

TEST(Io, FixtureGoldens) {
  for (const std::string& name : kFixtures) {
    const Multigraph g = load_fixture_graph(name);
    const ProbMeasure mu = load_fixture_measure(g, name);
    const auto expected = load_expected(name);
    EXPECT_EQ(bipartition(g).has_value(), expected["bipartite"].get<bool>()) << name;

    const NcondReport r = ncond_check(g, mu);
    const auto& nc = expected["ncond"];
    EXPECT_EQ(r.satisfied, nc["satisfied"].get<bool>()) << name;
    if (nc["margin"].is_null()) {
      EXPECT_FALSE(r.margin);
    } else {
      ASSERT_TRUE(r.margin);
      EXPECT_EQ(*r.margin, q(nc["margin"].get<std::string>().c_str())) << name;
    }
    if (nc.contains("witness")) {
      ASSERT_TRUE(r.witness);
      EXPECT_EQ(names(g, *r.witness), nc["witness"].get<std::vector<std::string>>()) << name;
    }
    if (expected.contains("ncond_violating")) {
      const NcondReport v = ncond_check(g, load_fixture_measure(g, name, "mu_violating.json"));
      EXPECT_FALSE(v.satisfied);
      EXPECT_EQ(names(g, *v.witness), expected["ncond_violating"]["witness"].get<std::vector<std::string>>());
    }
    if (expected.contains("mu_deg")) {
      EXPECT_EQ(serialize_measure(g, mu_deg(g)), serialize_measure(g, parse_measure(g, expected["mu_deg"].dump())));
    }
    if (expected.contains("parts")) {
      const auto parts = complete_multipartite_decomposition(g);
      ASSERT_TRUE(parts);
      std::vector<std::vector<std::string>> got;
      for (NodeSet p : *parts) got.push_back(names(g, p));
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expected["parts"].get<std::vector<std::vector<std::string>>>());
    }
    if (expected.contains("states")) {
      std::vector<std::string> got;
      for (const QueueWord& w : enumerate_states(g, 2)) got.push_back(format_word(g, w));
      auto want = expected["states"].get<std::vector<std::string>>();
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want);
    }
  }
}

TEST(Io, FilesRoundTrip) {
  const std::string path = (std::filesystem::temp_directory_path() / "smatch_io_roundtrip.json").string();
  const std::string text = serialize_graph(partite_loop());
  write_file(path, text);
  EXPECT_EQ(read_file(path), text);
  std::filesystem::remove(path);
  EXPECT_THROW(read_file("/nonexistent/smatch.json"), InputError);
}
