#include <deque>

#include "netour/metrics.hpp"

namespace netour::metrics {

std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> cb(n, 0.0);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<NodeIndex>> preds(n);
  std::vector<NodeIndex> order;
  order.reserve(n);
  std::deque<NodeIndex> queue;

  for (NodeIndex s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeIndex v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeIndex w : g.successors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeIndex w = *it;
      for (NodeIndex v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  if (!g.directed()) {
    for (auto& c : cb) c /= 2.0;
  }
  return cb;
}

std::map<std::string, double> betweenness_centrality(const Graph& g) {
  const auto cb = betweenness(g);
  std::map<std::string, double> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v) out.emplace(g.node(v).id, cb[v]);
  return out;
}

std::vector<double> closeness(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto dist = hop_distances(g, v, true);
    double sum = 0.0;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      if (u != v && dist[u] > 0) sum += 1.0 / dist[u];
    }
    out[v] = sum;
  }
  return out;
}

std::map<std::string, double> closeness_centrality(const Graph& g) {
  const auto c = closeness(g);
  std::map<std::string, double> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v) out.emplace(g.node(v).id, c[v]);
  return out;
}

}  // namespace netour::metrics
