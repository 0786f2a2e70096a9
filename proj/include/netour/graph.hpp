#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace netour {

using NodeIndex = std::uint32_t;
using LinkIndex = std::uint32_t;

struct GeoCoord {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]

  friend bool operator==(const GeoCoord&, const GeoCoord&) = default;
};

struct Node {
  std::string id;
  std::string label;
  std::optional<GeoCoord> coord;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Link {
  std::string id;
  std::string source;
  std::string target;
  std::optional<double> weight;
  std::optional<std::int64_t> time;  // epoch seconds

  friend bool operator==(const Link&, const Link&) = default;
};

// Derived from the data, never set by callers.
struct Capabilities {
  bool weighted = false;
  bool temporal = false;
  bool geographic = false;

  friend bool operator==(const Capabilities&, const Capabilities&) = default;
};

struct Noun {
  std::string singular;
  std::string plural;

  const std::string& form(bool many) const { return many ? plural : singular; }
  friend bool operator==(const Noun&, const Noun&) = default;
};

// English plural of a noun phrase. "city" -> "cities", "number of commuters"
// -> "numbers of commuters".
std::string pluralize(std::string_view noun);

// Domain-specific nouns substituted into captions.
struct Terminology {
  Noun node{"node", "nodes"};
  Noun link{"link", "links"};
  Noun weight{"link weight", "link weights"};
  Noun subgraph{"subgraph", "subgraphs"};

  // Builds a terminology from singular nouns; empty plurals are derived.
  static Terminology from_nouns(std::string node, std::string link, std::string weight,
                                std::string subgraph, std::string node_plural = {},
                                std::string link_plural = {}, std::string weight_plural = {},
                                std::string subgraph_plural = {});

  friend bool operator==(const Terminology&, const Terminology&) = default;
};

nlohmann::json to_json(const Terminology& t);
// Missing keys keep their defaults; plurals are derived when absent.
Terminology terminology_from_json(const nlohmann::json& doc, const Terminology& base = {});

// Immutable node/link store. Copies share the underlying data.
class Graph {
 public:
  Graph();
  // Validates every invariant; throws Error on the first violated one
  // (DanglingEndpoint lists every offending link).
  Graph(std::vector<Node> nodes, std::vector<Link> links, bool directed, Terminology terminology = {});

  const std::vector<Node>& nodes() const;
  const std::vector<Link>& links() const;
  bool directed() const;
  const Capabilities& capabilities() const;
  const Terminology& terminology() const { return terminology_; }

  std::size_t node_count() const { return nodes().size(); }
  std::size_t link_count() const { return links().size(); }

  const Node& node(NodeIndex n) const { return nodes()[n]; }
  const Link& link(LinkIndex l) const { return links()[l]; }
  NodeIndex source(LinkIndex l) const;
  NodeIndex target(LinkIndex l) const;

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<LinkIndex> find_link(std::string_view id) const;
  // Throws UnknownNode.
  NodeIndex node_index(std::string_view id) const;

  // Every link touching n; a self-loop appears once.
  std::span<const LinkIndex> incident_links(NodeIndex n) const;
  std::span<const LinkIndex> out_links(NodeIndex n) const;
  std::span<const LinkIndex> in_links(NodeIndex n) const;
  // Distinct adjacent nodes ignoring direction, excluding n, ascending index.
  std::span<const NodeIndex> neighbors(NodeIndex n) const;
  // Distinct nodes reachable over one link honoring direction (== neighbors
  // for undirected graphs).
  std::span<const NodeIndex> successors(NodeIndex n) const;

  Graph with_terminology(Terminology t) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  Terminology terminology_;
};

// Throws EmptyNoun if any noun or plural is empty.
Graph set_terminology(const Graph& g, Terminology t);

// Node-induced subgraph: ids are kept sorted and unique.
struct SubgraphRef {
  std::vector<std::string> node_ids;
  std::vector<std::string> link_ids;

  friend bool operator==(const SubgraphRef&, const SubgraphRef&) = default;
};

// Throws EmptySelection, UnknownNode.
SubgraphRef induce_subgraph(const Graph& g, std::span<const std::string> node_ids);
SubgraphRef induce_subgraph(const Graph& g, std::span<const NodeIndex> nodes);

// Resolves a subgraph's node ids to indices (ascending).
std::vector<NodeIndex> node_indices(const Graph& g, const SubgraphRef& sg);
std::vector<LinkIndex> link_indices(const Graph& g, const SubgraphRef& sg);

struct LoadOptions {
  bool directed = false;
  // canonical column name ("id", "source", ...) -> header name in the file
  std::map<std::string, std::string> columns;
  // When set to true, every link must carry the attribute or the load fails.
  std::optional<bool> require_weights;
  std::optional<bool> require_times;
};

// Node CSV + link CSV with header rows.
Graph load_graph(std::istream& node_csv, std::istream& link_csv, const LoadOptions& options = {},
                 std::vector<std::string>* warnings = nullptr);

// Single JSON dataset document: {"directed", "nodes", "links", "terminology"?}.
Graph load_dataset(std::string_view json_text, const LoadOptions& options = {});
Graph graph_from_json(const nlohmann::json& doc, const LoadOptions& options = {});
nlohmann::json to_json(const Graph& g);

// Integer epoch seconds or ISO-8601 ("2020-03-01", "2020-03-01T12:30:00Z",
// "2020-03-01T12:30:00+02:00"). Throws MalformedFile.
std::int64_t parse_timestamp(std::string_view text);
// "YYYY-MM-DD" at midnight UTC, otherwise "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace netour
