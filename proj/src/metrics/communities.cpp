#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "netour/metrics.hpp"

namespace netour::metrics {

namespace {

// Distinct undirected non-loop node pairs.
std::set<std::pair<NodeIndex, NodeIndex>> simple_edges(const Graph& g) {
  std::set<std::pair<NodeIndex, NodeIndex>> edges;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    NodeIndex a = g.source(l);
    NodeIndex b = g.target(l);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    edges.emplace(a, b);
  }
  return edges;
}

std::vector<int> relabel(std::span<const int> raw) {
  std::map<int, int> remap;
  std::vector<int> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto [it, inserted] = remap.emplace(raw[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

double modularity(const Graph& g, std::span<const int> community_of) {
  const auto edges = simple_edges(g);
  if (edges.empty()) return 0.0;
  const double m = static_cast<double>(edges.size());
  std::map<int, double> inside;
  std::map<int, double> degree_sum;
  for (const auto& [a, b] : edges) {
    degree_sum[community_of[a]] += 1.0;
    degree_sum[community_of[b]] += 1.0;
    if (community_of[a] == community_of[b]) inside[community_of[a]] += 1.0;
  }
  double q = 0.0;
  for (const auto& [c, d] : degree_sum) {
    const double l = inside.count(c) ? inside.at(c) : 0.0;
    q += l / m - (d / (2.0 * m)) * (d / (2.0 * m));
  }
  return q;
}

CommunityPartition detect_communities(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto edges = simple_edges(g);
  const auto m = static_cast<std::int64_t>(edges.size());

  // links[i][j]: number of edges between communities i and j (i != j).
  std::vector<std::map<int, std::int64_t>> between(n);
  std::vector<std::int64_t> degree_sum(n, 0);
  for (const auto& [a, b] : edges) {
    ++between[a][static_cast<int>(b)];
    ++between[b][static_cast<int>(a)];
    ++degree_sum[a];
    ++degree_sum[b];
  }

  std::vector<int> community_of(n);
  for (std::size_t v = 0; v < n; ++v) community_of[v] = static_cast<int>(v);
  std::vector<bool> alive(n, true);

  // Modularity scaled by 4m^2 stays integral: sum_c (4m * L_c - D_c^2).
  std::int64_t q_scaled = 0;
  for (std::size_t v = 0; v < n; ++v) q_scaled -= degree_sum[v] * degree_sum[v];
  std::int64_t best_q = q_scaled;
  std::vector<int> best = community_of;

  while (m > 0) {
    // Gain of merging i and j, scaled: 2 * (2m * E_ij - K_i * K_j).
    int bi = -1;
    int bj = -1;
    std::int64_t best_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (const auto& [j, e] : between[i]) {
        if (j <= static_cast<int>(i)) continue;
        const std::int64_t gain = 2 * (2 * m * e - degree_sum[i] * degree_sum[j]);
        if (bi < 0 || gain > best_gain) {
          bi = static_cast<int>(i);
          bj = j;
          best_gain = gain;
        }
      }
    }
    if (bi < 0) break;

    for (const auto& [k, e] : between[bj]) {
      if (k == bi) continue;
      between[bi][k] += e;
      auto& back = between[k];
      back.erase(bj);
      back[bi] += e;
    }
    between[bi].erase(bj);
    between[bj].clear();
    degree_sum[bi] += degree_sum[bj];
    degree_sum[bj] = 0;
    alive[bj] = false;
    for (auto& c : community_of) {
      if (c == bj) c = bi;
    }
    q_scaled += best_gain;
    if (q_scaled > best_q) {
      best_q = q_scaled;
      best = community_of;
    }
  }

  CommunityPartition p;
  p.community_of = relabel(best);
  p.community_count = n == 0 ? 0 : *std::max_element(p.community_of.begin(), p.community_of.end()) + 1;
  for (std::size_t v = 0; v < n; ++v) p.assignment.emplace(g.node(static_cast<NodeIndex>(v)).id, p.community_of[v]);
  p.modularity = modularity(g, p.community_of);
  return p;
}

}  // namespace netour::metrics
