#include <sstream>

#include "doctest.h"
#include "netour/error.hpp"
#include "netour/graph.hpp"
#include "support.hpp"

using netour::ErrorCode;

namespace {

ErrorCode load_error(std::string_view json_text) {
  try {
    netour::load_dataset(json_text);
  } catch (const netour::Error& e) {
    return e.code();
  }
  FAIL("dataset loaded");
  return ErrorCode::BadRequest;
}

ErrorCode csv_error(const std::string& nodes, const std::string& links) {
  std::istringstream n(nodes), l(links);
  try {
    netour::load_graph(n, l);
  } catch (const netour::Error& e) {
    return e.code();
  }
  FAIL("csv loaded");
  return ErrorCode::BadRequest;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("bundled fixture has 25 cities and 600 routes") {
    const auto g = testing::srilanka();
    CHECK(g.node_count() == 25);
    CHECK(g.link_count() == 600);
    CHECK(g.directed());
    CHECK(g.capabilities() == netour::Capabilities{true, true, true});
    CHECK(g.terminology().node.plural == "cities");
    CHECK(g.terminology().weight.plural == "migrant counts");
  }

  TEST_CASE("capabilities need every link or node to carry the attribute") {
    const auto g = netour::load_dataset(R"({"nodes":[{"id":"a","lat":1,"lon":2},{"id":"b"}],
      "links":[{"source":"a","target":"b","weight":2},{"source":"b","target":"a"}]})");
    CHECK_FALSE(g.capabilities().weighted);
    CHECK_FALSE(g.capabilities().geographic);
    CHECK_FALSE(g.directed());
  }

  TEST_CASE("loader rejects broken datasets with the matching code") {
    CHECK(load_error("not json") == ErrorCode::MalformedFile);
    CHECK(load_error(R"({"links":[]})") == ErrorCode::MalformedFile);
    CHECK(load_error(R"({"nodes":[{"id":"a"},{"id":"a"}],"links":[]})") == ErrorCode::DuplicateNodeId);
    CHECK(load_error(R"({"nodes":[{"id":"a"}],"links":[{"source":"a","target":"z"}]})") ==
          ErrorCode::DanglingEndpoint);
    CHECK(load_error(R"({"nodes":[{"id":"a"}],"links":[{"source":"a","target":"a","weight":-1}]})") ==
          ErrorCode::NegativeWeight);
    CHECK(load_error(R"({"nodes":[{"id":"a","lat":95,"lon":0}],"links":[]})") == ErrorCode::MalformedFile);
    CHECK(load_error(R"({"nodes":[{"id":"a","lat":5}],"links":[]})") == ErrorCode::MalformedFile);
    CHECK(load_error(R"({"nodes":[{"id":"a"}],"links":[{"source":"a","target":"a","time":"yesterday"}]})") ==
          ErrorCode::MalformedFile);
  }

  TEST_CASE("every link with a dangling endpoint is reported") {
    try {
      netour::load_dataset(R"({"nodes":[{"id":"a"}],"links":[
        {"id":"x","source":"a","target":"p"},{"id":"y","source":"q","target":"a"}]})");
      FAIL("loaded");
    } catch (const netour::Error& e) {
      const std::string msg = e.what();
      CHECK(e.code() == ErrorCode::DanglingEndpoint);
      CHECK(msg.find("0, 1") != std::string::npos);
    }
  }

  TEST_CASE("csv pair loads with quoted fields and iso times") {
    std::istringstream nodes("id,label,lat,lon\nA,\"Kandy, Central\",7.29,80.63\nB,Galle,6.05,80.22\n");
    std::istringstream links("source,target,weight,time\nA,B,3,2020-03-01\nB,A,1.5,2020-03-02T12:00:00Z\n");
    netour::LoadOptions options;
    options.directed = true;
    const auto g = netour::load_graph(nodes, links, options);
    REQUIRE(g.node_count() == 2);
    CHECK(g.node(0).label == "Kandy, Central");
    CHECK(g.capabilities() == netour::Capabilities{true, true, true});
    CHECK(g.link(0).time == netour::parse_timestamp("2020-03-01"));
    CHECK(g.link(1).weight == 1.5);
  }

  TEST_CASE("csv errors") {
    CHECK(csv_error("name\nA\n", "source,target\n") == ErrorCode::MalformedFile);
    CHECK(csv_error("id\nA\n", "from,to\nA,A\n") == ErrorCode::MalformedFile);
    CHECK(csv_error("id\nA\nA\n", "source,target\n") == ErrorCode::DuplicateNodeId);
    CHECK(csv_error("id\nA\n", "source,target\nA,B\n") == ErrorCode::DanglingEndpoint);
    CHECK(csv_error("id\nA\n", "source,target,weight\nA,A,abc\n") == ErrorCode::MalformedFile);
  }

  TEST_CASE("column mapping renames canonical columns") {
    std::istringstream nodes("code\nA\nB\n");
    std::istringstream links("from,to\nA,B\n");
    netour::LoadOptions options;
    options.columns = {{"id", "code"}, {"source", "from"}, {"target", "to"}};
    CHECK(netour::load_graph(nodes, links, options).link_count() == 1);
  }

  TEST_CASE("timestamps round-trip") {
    CHECK(netour::parse_timestamp("1970-01-02") == 86400);
    CHECK(netour::parse_timestamp("2020-03-01T12:30:00+02:00") == netour::parse_timestamp("2020-03-01T10:30:00Z"));
    CHECK(netour::format_timestamp(86400) == "1970-01-02");
    CHECK(netour::format_timestamp(86401) == "1970-01-02T00:00:01Z");
    CHECK(netour::parse_timestamp("12345") == 12345);
  }

  TEST_CASE("pluralization of nouns and noun phrases") {
    CHECK(netour::pluralize("city") == "cities");
    CHECK(netour::pluralize("flow") == "flows");
    CHECK(netour::pluralize("bus") == "buses");
    CHECK(netour::pluralize("day") == "days");
    CHECK(netour::pluralize("number of commuters") == "numbers of commuters");
  }

  TEST_CASE("terminology substitution keeps the data shared") {
    const auto g = testing::srilanka();
    const auto renamed = netour::set_terminology(g, netour::Terminology::from_nouns("town", "flow", "people", "area"));
    CHECK(renamed.terminology().link.plural == "flows");
    CHECK(&renamed.nodes() == &g.nodes());
    CHECK_THROWS_AS(netour::set_terminology(g, netour::Terminology::from_nouns("", "a", "b", "c")), netour::Error);
  }

  TEST_CASE("json round-trip preserves the graph") {
    const auto g = testing::srilanka();
    CHECK(netour::graph_from_json(netour::to_json(g)) == g);
  }

  TEST_CASE("induced subgraphs keep sorted ids and internal links") {
    const auto g = testing::make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, true);
    const std::vector<std::string> pick{"c", "a"};
    const auto sg = netour::induce_subgraph(g, std::span<const std::string>(pick));
    CHECK(sg.node_ids == std::vector<std::string>{"a", "c"});
    CHECK(sg.link_ids == std::vector<std::string>{"e2"});
    const std::vector<std::string> none;
    CHECK_THROWS_AS(netour::induce_subgraph(g, std::span<const std::string>(none)), netour::Error);
  }
}
