#include <algorithm>
#include <deque>
#include <queue>
#include <set>

#include "netour/error.hpp"
#include "netour/metrics.hpp"

namespace netour::metrics {

std::vector<int> hop_distances(const Graph& g, NodeIndex from, bool follow_direction) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeIndex> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const NodeIndex v = queue.front();
    queue.pop_front();
    const auto next = follow_direction ? g.successors(v) : g.neighbors(v);
    for (NodeIndex u : next) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<NodeIndex> ego_nodes(const Graph& g, NodeIndex ego, int radius) {
  const auto dist = hop_distances(g, ego, false);
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (dist[v] >= 0 && dist[v] <= radius) out.push_back(v);
  }
  return out;
}

SubgraphRef ego_network(const Graph& g, std::string_view node_id, int radius) {
  const NodeIndex ego = g.node_index(node_id);
  const auto nodes = ego_nodes(g, ego, radius);
  return induce_subgraph(g, std::span<const NodeIndex>(nodes));
}

std::vector<std::string> common_neighbors(const Graph& g, std::string_view a, std::string_view b) {
  const NodeIndex na = g.node_index(a);
  const NodeIndex nb = g.node_index(b);
  if (na == nb) throw Error(ErrorCode::SameNode, "common neighbors need two distinct nodes");
  const auto xa = g.neighbors(na);
  const auto xb = g.neighbors(nb);
  std::vector<NodeIndex> both;
  std::set_intersection(xa.begin(), xa.end(), xb.begin(), xb.end(), std::back_inserter(both));
  std::vector<std::string> out;
  for (NodeIndex v : both) {
    if (v != na && v != nb) out.push_back(g.node(v).id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<LinkIndex> cheapest_link(const Graph& g, NodeIndex from, NodeIndex to) {
  std::optional<LinkIndex> best;
  for (LinkIndex l : g.out_links(from)) {
    const NodeIndex other = g.source(l) == from ? g.target(l) : g.source(l);
    if (other != to || (g.directed() && g.source(l) != from)) continue;
    if (!best) {
      best = l;
      continue;
    }
    const auto& cand = g.link(l);
    const auto& cur = g.link(*best);
    const double wc = cand.weight.value_or(0.0);
    const double wb = cur.weight.value_or(0.0);
    if (wc < wb || (wc == wb && cand.id < cur.id)) best = l;
  }
  return best;
}

namespace {

struct Candidate {
  int hops = 0;
  double weight = 0.0;
  std::vector<NodeIndex> nodes;
};

// (hops, weight, node id sequence) ascending
bool path_less(const Graph& g, const Candidate& a, const Candidate& b) {
  if (a.hops != b.hops) return a.hops < b.hops;
  if (a.weight != b.weight) return a.weight < b.weight;
  return std::lexicographical_compare(a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
                                      [&](NodeIndex x, NodeIndex y) { return g.node(x).id < g.node(y).id; });
}

double step_weight(const Graph& g, NodeIndex from, NodeIndex to) {
  const auto l = cheapest_link(g, from, to);
  return l ? g.link(*l).weight.value_or(0.0) : 0.0;
}

Candidate measure(const Graph& g, std::vector<NodeIndex> nodes) {
  Candidate c;
  c.hops = static_cast<int>(nodes.size()) - 1;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) c.weight += step_weight(g, nodes[i], nodes[i + 1]);
  c.nodes = std::move(nodes);
  return c;
}

using EdgeSet = std::set<std::pair<NodeIndex, NodeIndex>>;

// Label-setting search minimizing the full path key.
std::optional<Candidate> best_path(const Graph& g, NodeIndex s, NodeIndex t, const std::vector<bool>& blocked,
                                   const EdgeSet& removed) {
  const std::size_t n = g.node_count();
  std::vector<std::optional<Candidate>> label(n);
  std::vector<bool> settled(n, false);
  // Lazy deletion: stale heap entries are skipped via `settled`.
  struct Entry {
    NodeIndex node;
    Candidate label;
  };
  const auto entry_cmp = [&](const Entry& a, const Entry& b) { return path_less(g, b.label, a.label); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(entry_cmp)> heap(entry_cmp);

  label[s] = Candidate{0, 0.0, {s}};
  heap.push({s, *label[s]});
  while (!heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    const NodeIndex v = top.node;
    if (settled[v]) continue;
    settled[v] = true;
    if (v == t) return label[v];
    for (NodeIndex w : g.successors(v)) {
      if (blocked[w] || settled[w] || removed.count({v, w})) continue;
      Candidate next = *label[v];
      next.hops += 1;
      next.weight += step_weight(g, v, w);
      next.nodes.push_back(w);
      if (!label[w] || path_less(g, next, *label[w])) {
        label[w] = next;
        heap.push({w, std::move(next)});
      }
    }
  }
  return std::nullopt;
}

PathResult to_result(const Graph& g, const Candidate& c) {
  PathResult r;
  r.length = c.hops;
  for (NodeIndex v : c.nodes) r.node_sequence.push_back(g.node(v).id);
  const bool weighted = g.capabilities().weighted;
  double total = 0.0;
  double lowest = 0.0;
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) {
    const LinkIndex l = *cheapest_link(g, c.nodes[i], c.nodes[i + 1]);
    r.link_sequence.push_back(g.link(l).id);
    if (weighted) {
      const double w = *g.link(l).weight;
      total += w;
      lowest = i == 0 ? w : std::min(lowest, w);
    }
  }
  if (weighted) {
    r.total_weight = total;
    r.min_link_weight = lowest;
  }
  return r;
}

}  // namespace

std::vector<PathResult> k_shortest_paths(const Graph& g, std::string_view source, std::string_view target,
                                         int k) {
  const NodeIndex s = g.node_index(source);
  const NodeIndex t = g.node_index(target);
  if (s == t) throw Error(ErrorCode::SameNode, "paths need two distinct endpoints");
  if (k < 1) return {};

  const std::vector<bool> none(g.node_count(), false);
  auto first = best_path(g, s, t, none, {});
  if (!first) return {};

  std::vector<Candidate> found{measure(g, first->nodes)};
  std::vector<Candidate> pending;
  const auto known = [&](const std::vector<NodeIndex>& nodes) {
    const auto same = [&](const Candidate& c) { return c.nodes == nodes; };
    return std::any_of(found.begin(), found.end(), same) || std::any_of(pending.begin(), pending.end(), same);
  };

  while (static_cast<int>(found.size()) < k) {
    const std::vector<NodeIndex> prev = found.back().nodes;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      const NodeIndex spur = prev[i];
      EdgeSet removed;
      for (const auto& p : found) {
        if (p.nodes.size() > i + 1 && std::equal(prev.begin(), prev.begin() + i + 1, p.nodes.begin())) {
          removed.emplace(p.nodes[i], p.nodes[i + 1]);
        }
      }
      std::vector<bool> blocked(g.node_count(), false);
      for (std::size_t r = 0; r < i; ++r) blocked[prev[r]] = true;
      const auto spur_path = best_path(g, spur, t, blocked, removed);
      if (!spur_path) continue;
      std::vector<NodeIndex> nodes(prev.begin(), prev.begin() + i);
      nodes.insert(nodes.end(), spur_path->nodes.begin(), spur_path->nodes.end());
      if (!known(nodes)) pending.push_back(measure(g, std::move(nodes)));
    }
    if (pending.empty()) break;
    const auto best = std::min_element(pending.begin(), pending.end(),
                                       [&](const Candidate& a, const Candidate& b) { return path_less(g, a, b); });
    found.push_back(std::move(*best));
    pending.erase(best);
  }

  std::vector<PathResult> out;
  out.reserve(found.size());
  for (const auto& c : found) out.push_back(to_result(g, c));
  return out;
}

std::vector<std::string> links_between(const Graph& g, const SubgraphRef& a, const SubgraphRef& b) {
  std::vector<char> side(g.node_count(), 0);
  for (NodeIndex v : node_indices(g, a)) side[v] = 1;
  for (NodeIndex v : node_indices(g, b)) {
    if (side[v] == 1) {
      throw Error(ErrorCode::OverlappingSubgraphs,
                  "'" + g.node(v).id + "' belongs to both " + g.terminology().subgraph.plural);
    }
    side[v] = 2;
  }
  std::vector<std::string> out;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    const char x = side[g.source(l)];
    const char y = side[g.target(l)];
    if (x && y && x != y) out.push_back(g.link(l).id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace netour::metrics
