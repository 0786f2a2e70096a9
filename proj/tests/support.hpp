#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netour/graph.hpp"

namespace testing {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(NETOUR_SOURCE_DIR) / rel;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline netour::Graph srilanka() {
  return netour::load_dataset(read_file(source_path("data/datasets/srilanka_migration.json")));
}

struct Shape {
  bool directed = false;
  bool weighted = false;
  bool temporal = false;
  bool geographic = false;
};

inline Shape shape_from_bits(unsigned bits) {
  return {(bits & 1u) != 0, (bits & 2u) != 0, (bits & 4u) != 0, (bits & 8u) != 0};
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Small random graph. Node ids are shuffled letters so index order and id
// order disagree; parallel links and self-loops occur.
inline netour::Graph random_graph(std::mt19937_64& rng, const Shape& shape, std::size_t min_nodes = 2,
                                  std::size_t max_nodes = 10, std::size_t max_links = 25) {
  const std::size_t n = min_nodes + pick(rng, max_nodes - min_nodes + 1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<netour::Node> nodes;
  for (const auto& id : ids) {
    netour::Node node{id, "Node " + id, std::nullopt, {}};
    if (shape.geographic) {
      node.coord = netour::GeoCoord{-60.0 + static_cast<double>(pick(rng, 1200)) / 10.0,
                                    -170.0 + static_cast<double>(pick(rng, 3400)) / 10.0};
    }
    nodes.push_back(std::move(node));
  }
  const std::size_t m = pick(rng, max_links + 1);
  std::vector<netour::Link> links;
  for (std::size_t i = 0; i < m; ++i) {
    netour::Link l;
    l.id = "l" + std::to_string(i);
    l.source = ids[pick(rng, n)];
    // Self-loops are rare but present.
    l.target = pick(rng, 12) == 0 ? l.source : ids[pick(rng, n)];
    if (shape.weighted) l.weight = static_cast<double>(1 + pick(rng, 9)) / (pick(rng, 2) == 0 ? 1.0 : 2.0);
    if (shape.temporal) l.time = 1'600'000'000 + static_cast<std::int64_t>(pick(rng, 1000)) * 3600;
    links.push_back(std::move(l));
  }
  return netour::Graph(std::move(nodes), std::move(links), shape.directed);
}

struct Edge {
  std::string source;
  std::string target;
  double weight = 1.0;
};

inline netour::Graph make_graph(const std::vector<std::string>& ids, const std::vector<Edge>& edges, bool directed,
                                bool weighted = true) {
  std::vector<netour::Node> nodes;
  for (const auto& id : ids) nodes.push_back({id, id, std::nullopt, {}});
  std::vector<netour::Link> links;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    netour::Link l{"e" + std::to_string(i), edges[i].source, edges[i].target, std::nullopt, std::nullopt};
    if (weighted) l.weight = edges[i].weight;
    links.push_back(std::move(l));
  }
  return netour::Graph(std::move(nodes), std::move(links), directed);
}

// Graph with exactly `link_count` links spread over `node_count` nodes.
inline netour::Graph sized_graph(std::size_t node_count, std::size_t link_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<netour::Node> nodes;
  for (std::size_t i = 0; i < node_count; ++i) {
    const std::string id = "m" + std::to_string(i);
    nodes.push_back({id, "Municipality " + std::to_string(i), std::nullopt, {}});
  }
  std::vector<netour::Link> links;
  for (std::size_t i = 0; i < link_count; ++i) {
    netour::Link l;
    l.id = "f" + std::to_string(i);
    l.source = nodes[pick(rng, node_count)].id;
    l.target = nodes[pick(rng, node_count)].id;
    l.weight = static_cast<double>(1 + pick(rng, 500));
    links.push_back(std::move(l));
  }
  return netour::Graph(std::move(nodes), std::move(links), true);
}

}  // namespace testing
