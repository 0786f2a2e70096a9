#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netour/graph.hpp"

// Graph computations consumed by facts. Distances are hop counts; ties in
// every ranking are broken by id ascending.
namespace netour::metrics {

struct Degree {
  int in = 0;
  int out = 0;
  int total = 0;

  friend bool operator==(const Degree&, const Degree&) = default;
};

enum class Extremum { Strongest, Weakest };

struct CommunityPartition {
  std::map<std::string, int> assignment;
  std::vector<int> community_of;  // by node index
  int community_count = 0;
  double modularity = 0.0;
  std::string algorithm = "newman-fast-greedy";
};

struct PathResult {
  std::vector<std::string> node_sequence;
  std::vector<std::string> link_sequence;
  int length = 0;
  std::optional<double> total_weight;
  std::optional<double> min_link_weight;

  friend bool operator==(const PathResult&, const PathResult&) = default;
};

struct TimeSlice {
  int index = 0;
  std::int64_t start = 0;  // inclusive
  std::int64_t end = 0;    // exclusive
  std::vector<std::string> link_ids;
  double density = 0.0;
};

struct GeoExtent {
  double min_lat = 0.0;
  double max_lat = 0.0;
  double min_lon = 0.0;
  double max_lon = 0.0;

  friend bool operator==(const GeoExtent&, const GeoExtent&) = default;
};

// ---- sizes and density -------------------------------------------------

std::size_t node_count(const Graph& g);
std::size_t link_count(const Graph& g);

// Connected node pairs over possible pairs; self-loops and parallel links do
// not add pairs. Throws DegenerateGraph when fewer than two nodes.
double density(const Graph& g);
double density(const Graph& g, const SubgraphRef& sg);
double density(const Graph& g, std::span<const NodeIndex> nodes, std::span<const LinkIndex> links);

// Number of distinct connected (ordered if directed) node pairs.
std::size_t connected_pairs(const Graph& g, std::span<const LinkIndex> links);

// ---- centralities -------------------------------------------------------

// Undirected graphs report in = out = total. A self-loop adds 2 to the total
// of an undirected node, 1 to in and out of a directed one.
std::vector<Degree> degrees(const Graph& g);
std::vector<Degree> degrees(const Graph& g, std::span<const LinkIndex> links);
std::map<std::string, Degree> degree_centrality(const Graph& g);
std::map<std::string, Degree> degree_centrality(const Graph& g, const SubgraphRef& sg);

// Brandes over hop-count shortest paths; undirected scores are halved.
std::vector<double> betweenness(const Graph& g);
std::map<std::string, double> betweenness_centrality(const Graph& g);

// Harmonic closeness: sum of 1/d(v,u) over reachable u != v.
std::vector<double> closeness(const Graph& g);
std::map<std::string, double> closeness_centrality(const Graph& g);

// Sum of weights of links touching each node (0 when unweighted).
std::vector<double> strengths(const Graph& g);

// Node order by score descending, ties by id ascending.
std::vector<NodeIndex> rank_nodes(const Graph& g, std::span<const double> scores);
std::vector<NodeIndex> rank_nodes(const Graph& g, std::span<const NodeIndex> nodes,
                                  std::span<const double> scores);

// 1-based rank by total degree. Throws UnknownNode.
int connectivity_ranking(const Graph& g, std::string_view node_id);

// ---- links --------------------------------------------------------------

// Links ordered by weight (descending for Strongest), ties by id ascending.
std::vector<LinkIndex> order_links(const Graph& g, std::span<const LinkIndex> links, Extremum which);
// Throws Unweighted, RankOutOfRange.
LinkIndex link_extremum(const Graph& g, std::span<const LinkIndex> links, Extremum which, int rank);
const Link& link_extremum(const Graph& g, Extremum which, int rank);
const Link& link_extremum(const Graph& g, const SubgraphRef& sg, Extremum which, int rank);

// Throws Unweighted; average also throws EmptyScope.
double total_link_weight(const Graph& g, std::span<const LinkIndex> links);
double average_link_weight(const Graph& g, std::span<const LinkIndex> links);
double total_link_weight(const Graph& g);
double average_link_weight(const Graph& g);

std::vector<LinkIndex> all_links(const Graph& g);
std::vector<NodeIndex> all_nodes(const Graph& g);

// ---- communities --------------------------------------------------------

// Greedy agglomerative modularity maximization on the simple undirected
// projection. Deterministic; returns the best partition along the merge path.
CommunityPartition detect_communities(const Graph& g);
// Modularity of an assignment on the same projection (0 when it has no links).
double modularity(const Graph& g, std::span<const int> community_of);

// ---- neighborhoods and paths ----------------------------------------------

// Throws UnknownNode, SameNode.
std::vector<std::string> common_neighbors(const Graph& g, std::string_view a, std::string_view b);
// Ego plus nodes within `radius` hops ignoring direction. Throws UnknownNode.
SubgraphRef ego_network(const Graph& g, std::string_view node_id, int radius);
std::vector<NodeIndex> ego_nodes(const Graph& g, NodeIndex ego, int radius);

// Hop distances from `from` (-1 when unreachable).
std::vector<int> hop_distances(const Graph& g, NodeIndex from, bool follow_direction);

// Up to k loopless paths ordered by (hops, total weight, node id sequence).
// Empty when no path exists. Throws UnknownNode, SameNode.
std::vector<PathResult> k_shortest_paths(const Graph& g, std::string_view source, std::string_view target,
                                         int k);

// The cheapest link joining consecutive path nodes (honoring direction).
std::optional<LinkIndex> cheapest_link(const Graph& g, NodeIndex from, NodeIndex to);

// Links with one endpoint in each set. Throws OverlappingSubgraphs.
std::vector<std::string> links_between(const Graph& g, const SubgraphRef& a, const SubgraphRef& b);

// Weakly connected components; component id per node, ordered by first node.
std::vector<int> components(const Graph& g);

// Transitivity of the simple undirected projection; 0 without connected triples.
double transitivity(const Graph& g);

// ---- time and space -------------------------------------------------------

// Equal-width half-open bins over [min time, max time + 1). Throws NotTemporal.
std::vector<TimeSlice> temporal_slices(const Graph& g, int bins = 5);

// Throws NotGeographic.
GeoExtent geo_extent(const Graph& g);
GeoExtent geo_extent(const Graph& g, std::span<const NodeIndex> nodes);

// Great-circle distance in kilometres.
double haversine_km(const GeoCoord& a, const GeoCoord& b);

}  // namespace netour::metrics
