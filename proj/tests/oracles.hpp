#pragma once

// Brute-force reference implementations. They read only the raw node and
// link lists, never the graph's adjacency indexes or the metrics code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netour/graph.hpp"

namespace oracle {

using netour::Graph;

struct Raw {
  std::size_t n = 0;
  bool directed = false;
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  struct L {
    std::size_t s;
    std::size_t t;
    std::optional<double> w;
  };
  std::vector<L> links;
};

inline Raw raw(const Graph& g) {
  Raw r;
  r.directed = g.directed();
  for (const auto& node : g.nodes()) {
    r.index[node.id] = r.ids.size();
    r.ids.push_back(node.id);
  }
  r.n = r.ids.size();
  for (const auto& l : g.links()) r.links.push_back({r.index.at(l.source), r.index.at(l.target), l.weight});
  return r;
}

// adj[u][v]: some link leads from u to v (either way when `ignore_direction`
// or the graph is undirected). Self-loops excluded.
inline std::vector<std::vector<bool>> adjacency(const Raw& r, bool ignore_direction) {
  std::vector<std::vector<bool>> adj(r.n, std::vector<bool>(r.n, false));
  for (const auto& l : r.links) {
    if (l.s == l.t) continue;
    adj[l.s][l.t] = true;
    if (!r.directed || ignore_direction) adj[l.t][l.s] = true;
  }
  return adj;
}

inline double density(const Graph& g) {
  const Raw r = raw(g);
  const auto adj = adjacency(r, false);
  std::size_t ordered = 0;
  for (std::size_t u = 0; u < r.n; ++u) {
    for (std::size_t v = 0; v < r.n; ++v) ordered += (u != v && adj[u][v]) ? 1 : 0;
  }
  return static_cast<double>(ordered) / static_cast<double>(r.n * (r.n - 1));
}

struct Deg {
  int in = 0;
  int out = 0;
  int total = 0;
};

inline std::vector<Deg> degrees(const Graph& g) {
  const Raw r = raw(g);
  std::vector<Deg> d(r.n);
  for (const auto& l : r.links) {
    d[l.s].out += 1;
    d[l.t].in += 1;
  }
  for (auto& x : d) {
    x.total = x.in + x.out;
    if (!r.directed) x.in = x.out = x.total;
  }
  return d;
}

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Floyd-Warshall hop distances.
inline std::vector<std::vector<int>> distances(const Raw& r, bool ignore_direction) {
  const auto adj = adjacency(r, ignore_direction);
  std::vector<std::vector<int>> d(r.n, std::vector<int>(r.n, kInf));
  for (std::size_t u = 0; u < r.n; ++u) {
    d[u][u] = 0;
    for (std::size_t v = 0; v < r.n; ++v) {
      if (adj[u][v]) d[u][v] = 1;
    }
  }
  for (std::size_t k = 0; k < r.n; ++k) {
    for (std::size_t i = 0; i < r.n; ++i) {
      for (std::size_t j = 0; j < r.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

inline std::vector<double> closeness(const Graph& g) {
  const Raw r = raw(g);
  const auto d = distances(r, false);
  std::vector<double> out(r.n, 0.0);
  for (std::size_t v = 0; v < r.n; ++v) {
    for (std::size_t u = 0; u < r.n; ++u) {
      if (u != v && d[v][u] < kInf) out[v] += 1.0 / d[v][u];
    }
  }
  return out;
}

// Counts every shortest s-t path explicitly and credits its inner nodes.
inline std::vector<double> betweenness(const Graph& g) {
  const Raw r = raw(g);
  const auto adj = adjacency(r, false);
  const auto d = distances(r, false);
  std::vector<double> out(r.n, 0.0);
  for (std::size_t s = 0; s < r.n; ++s) {
    for (std::size_t t = 0; t < r.n; ++t) {
      if (s == t || d[s][t] >= kInf) continue;
      double total = 0.0;
      std::vector<double> through(r.n, 0.0);
      std::vector<std::size_t> path{s};
      std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (v == t) {
          total += 1.0;
          for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
          return;
        }
        if (static_cast<int>(path.size()) - 1 >= d[s][t]) return;
        for (std::size_t w = 0; w < r.n; ++w) {
          if (!adj[v][w] || std::find(path.begin(), path.end(), w) != path.end()) continue;
          path.push_back(w);
          walk(w);
          path.pop_back();
        }
      };
      walk(s);
      for (std::size_t v = 0; v < r.n; ++v) out[v] += through[v] / total;
    }
  }
  if (!r.directed) {
    for (auto& x : out) x /= 2.0;
  }
  return out;
}

inline std::vector<std::string> common_neighbors(const Graph& g, const std::string& a, const std::string& b) {
  const Raw r = raw(g);
  const auto adj = adjacency(r, true);
  const std::size_t ia = r.index.at(a);
  const std::size_t ib = r.index.at(b);
  std::vector<std::string> out;
  for (std::size_t v = 0; v < r.n; ++v) {
    if (v != ia && v != ib && adj[ia][v] && adj[ib][v]) out.push_back(r.ids[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> ego(const Graph& g, const std::string& id, int radius) {
  const Raw r = raw(g);
  const auto d = distances(r, true);
  const std::size_t e = r.index.at(id);
  std::vector<std::string> out;
  for (std::size_t v = 0; v < r.n; ++v) {
    if (d[e][v] <= radius) out.push_back(r.ids[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Path {
  std::vector<std::string> nodes;
  double weight = 0.0;
  double lowest = 0.0;
};

// Every loopless path, sorted by (hops, summed lightest-step weight, id
// sequence), truncated to k.
inline std::vector<Path> k_shortest(const Graph& g, const std::string& from, const std::string& to, int k) {
  const Raw r = raw(g);
  const auto lightest = [&](std::size_t u, std::size_t v) {
    std::optional<double> best;
    for (const auto& l : r.links) {
      const bool fits = (l.s == u && l.t == v) || (!r.directed && l.s == v && l.t == u);
      if (fits && u != v) best = std::min(best.value_or(l.w.value_or(0.0)), l.w.value_or(0.0));
    }
    return best;
  };
  std::vector<std::vector<std::optional<double>>> step(r.n, std::vector<std::optional<double>>(r.n));
  for (std::size_t u = 0; u < r.n; ++u) {
    for (std::size_t v = 0; v < r.n; ++v) step[u][v] = lightest(u, v);
  }
  const std::size_t s = r.index.at(from);
  const std::size_t t = r.index.at(to);
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> path{s};
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == t) {
      found.push_back(path);
      return;
    }
    for (std::size_t w = 0; w < r.n; ++w) {
      if (!step[v][w] || std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      walk(w);
      path.pop_back();
    }
  };
  walk(s);
  std::vector<Path> out;
  for (const auto& p : found) {
    Path x;
    for (std::size_t i = 0; i < p.size(); ++i) {
      x.nodes.push_back(r.ids[p[i]]);
      if (i + 1 < p.size()) {
        const double w = *step[p[i]][p[i + 1]];
        x.weight += w;
        x.lowest = i == 0 ? w : std::min(x.lowest, w);
      }
    }
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.nodes < b.nodes;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  return out;
}

inline int connectivity_rank(const Graph& g, const std::string& id) {
  const Raw r = raw(g);
  const auto d = degrees(g);
  int better = 0;
  const std::size_t me = r.index.at(id);
  for (std::size_t v = 0; v < r.n; ++v) {
    if (v == me) continue;
    if (d[v].total > d[me].total || (d[v].total == d[me].total && r.ids[v] < id)) ++better;
  }
  return better + 1;
}

// Q = 1/(2m) * sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j] on the simple
// undirected graph.
inline double modularity(const Graph& g, const std::vector<int>& community) {
  const Raw r = raw(g);
  const auto adj = adjacency(r, true);
  std::vector<double> k(r.n, 0.0);
  double two_m = 0.0;
  for (std::size_t u = 0; u < r.n; ++u) {
    for (std::size_t v = 0; v < r.n; ++v) {
      if (adj[u][v]) {
        k[u] += 1.0;
        two_m += 1.0;
      }
    }
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t u = 0; u < r.n; ++u) {
    for (std::size_t v = 0; v < r.n; ++v) {
      if (community[u] == community[v]) q += (adj[u][v] ? 1.0 : 0.0) - k[u] * k[v] / two_m;
    }
  }
  return q / two_m;
}

// Greedy agglomeration recomputing the whole (4m^2-scaled) modularity for
// every candidate merge. Communities are named by their smallest node
// index; the first best merge in (a, b) order wins; the best partition seen
// is returned, relabelled by first appearance.
inline std::vector<int> greedy_communities(const Graph& g) {
  const Raw r = raw(g);
  const auto adj = adjacency(r, true);
  std::int64_t m = 0;
  for (std::size_t u = 0; u < r.n; ++u) {
    for (std::size_t v = u + 1; v < r.n; ++v) m += adj[u][v] ? 1 : 0;
  }
  std::vector<int> c(r.n);
  for (std::size_t v = 0; v < r.n; ++v) c[v] = static_cast<int>(v);
  const auto scaled_q = [&](const std::vector<int>& part) {
    std::map<int, std::int64_t> inner, deg;
    for (std::size_t u = 0; u < r.n; ++u) {
      for (std::size_t v = 0; v < r.n; ++v) {
        if (!adj[u][v]) continue;
        deg[part[u]] += 1;
        if (part[u] == part[v] && u < v) inner[part[u]] += 1;
      }
    }
    std::int64_t q = 0;
    for (const auto& [label, d] : deg) q += 4 * m * inner[label] - d * d;
    return q;
  };
  std::int64_t q = scaled_q(c);
  std::int64_t best_q = q;
  std::vector<int> best = c;
  while (m > 0) {
    std::set<int> labels(c.begin(), c.end());
    bool any = false;
    std::int64_t top = 0;
    int ta = 0, tb = 0;
    for (int a : labels) {
      for (int b : labels) {
        if (b <= a) continue;
        bool touching = false;
        for (std::size_t u = 0; u < r.n && !touching; ++u) {
          for (std::size_t v = 0; v < r.n; ++v) {
            if (adj[u][v] && c[u] == a && c[v] == b) {
              touching = true;
              break;
            }
          }
        }
        if (!touching) continue;
        auto merged = c;
        for (auto& x : merged) {
          if (x == b) x = a;
        }
        const std::int64_t gain = scaled_q(merged) - q;
        if (!any || gain > top) {
          any = true;
          top = gain;
          ta = a;
          tb = b;
        }
      }
    }
    if (!any) break;
    for (auto& x : c) {
      if (x == tb) x = ta;
    }
    q += top;
    if (q > best_q) {
      best_q = q;
      best = c;
    }
  }
  std::map<int, int> remap;
  for (auto& x : best) x = remap.emplace(x, static_cast<int>(remap.size())).first->second;
  return best;
}

}  // namespace oracle
