#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "netour/error.hpp"
#include "netour/metrics.hpp"

namespace netour::metrics {

namespace {

void require_weighted(const Graph& g) {
  if (!g.capabilities().weighted) {
    throw Error(ErrorCode::Unweighted, "the network's " + g.terminology().link.plural + " carry no weights");
  }
}

}  // namespace

std::size_t node_count(const Graph& g) { return g.node_count(); }
std::size_t link_count(const Graph& g) { return g.link_count(); }

std::vector<LinkIndex> all_links(const Graph& g) {
  std::vector<LinkIndex> v(g.link_count());
  std::iota(v.begin(), v.end(), LinkIndex{0});
  return v;
}

std::vector<NodeIndex> all_nodes(const Graph& g) {
  std::vector<NodeIndex> v(g.node_count());
  std::iota(v.begin(), v.end(), NodeIndex{0});
  return v;
}

std::size_t connected_pairs(const Graph& g, std::span<const LinkIndex> links) {
  std::set<std::pair<NodeIndex, NodeIndex>> pairs;
  for (LinkIndex l : links) {
    NodeIndex s = g.source(l);
    NodeIndex t = g.target(l);
    if (s == t) continue;
    if (!g.directed() && t < s) std::swap(s, t);
    pairs.emplace(s, t);
  }
  return pairs.size();
}

double density(const Graph& g, std::span<const NodeIndex> nodes, std::span<const LinkIndex> links) {
  const double n = static_cast<double>(nodes.size());
  if (nodes.size() < 2) {
    throw Error(ErrorCode::DegenerateGraph, "density needs at least two " + g.terminology().node.plural);
  }
  const double pairs = static_cast<double>(connected_pairs(g, links));
  return (g.directed() ? pairs : 2.0 * pairs) / (n * (n - 1.0));
}

double density(const Graph& g) {
  const auto nodes = all_nodes(g);
  const auto links = all_links(g);
  return density(g, nodes, links);
}

double density(const Graph& g, const SubgraphRef& sg) {
  const auto nodes = node_indices(g, sg);
  const auto links = link_indices(g, sg);
  return density(g, nodes, links);
}

std::vector<Degree> degrees(const Graph& g, std::span<const LinkIndex> links) {
  std::vector<Degree> deg(g.node_count());
  for (LinkIndex l : links) {
    const NodeIndex s = g.source(l);
    const NodeIndex t = g.target(l);
    if (g.directed()) {
      ++deg[s].out;
      ++deg[t].in;
      ++deg[s].total;
      ++deg[t].total;
    } else {
      ++deg[s].total;
      ++deg[t].total;
    }
  }
  if (!g.directed()) {
    for (auto& d : deg) d.in = d.out = d.total;
  }
  return deg;
}

std::vector<Degree> degrees(const Graph& g) { return degrees(g, all_links(g)); }

std::map<std::string, Degree> degree_centrality(const Graph& g) {
  const auto deg = degrees(g);
  std::map<std::string, Degree> out;
  for (NodeIndex n = 0; n < g.node_count(); ++n) out.emplace(g.node(n).id, deg[n]);
  return out;
}

std::map<std::string, Degree> degree_centrality(const Graph& g, const SubgraphRef& sg) {
  const auto deg = degrees(g, link_indices(g, sg));
  std::map<std::string, Degree> out;
  for (NodeIndex n : node_indices(g, sg)) out.emplace(g.node(n).id, deg[n]);
  return out;
}

std::vector<double> strengths(const Graph& g) {
  std::vector<double> s(g.node_count(), 0.0);
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    const double w = g.link(l).weight.value_or(0.0);
    s[g.source(l)] += w;
    if (g.target(l) != g.source(l)) s[g.target(l)] += w;
  }
  return s;
}

std::vector<NodeIndex> rank_nodes(const Graph& g, std::span<const NodeIndex> nodes,
                                  std::span<const double> scores) {
  std::vector<NodeIndex> order(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return g.node(a).id < g.node(b).id;
  });
  return order;
}

std::vector<NodeIndex> rank_nodes(const Graph& g, std::span<const double> scores) {
  return rank_nodes(g, all_nodes(g), scores);
}

int connectivity_ranking(const Graph& g, std::string_view node_id) {
  const NodeIndex target = g.node_index(node_id);
  const auto deg = degrees(g);
  std::vector<double> scores(deg.size());
  for (std::size_t i = 0; i < deg.size(); ++i) scores[i] = deg[i].total;
  const auto order = rank_nodes(g, scores);
  return static_cast<int>(std::find(order.begin(), order.end(), target) - order.begin()) + 1;
}

std::vector<LinkIndex> order_links(const Graph& g, std::span<const LinkIndex> links, Extremum which) {
  require_weighted(g);
  std::vector<LinkIndex> order(links.begin(), links.end());
  std::sort(order.begin(), order.end(), [&](LinkIndex a, LinkIndex b) {
    const double wa = *g.link(a).weight;
    const double wb = *g.link(b).weight;
    if (wa != wb) return which == Extremum::Strongest ? wa > wb : wa < wb;
    return g.link(a).id < g.link(b).id;
  });
  return order;
}

LinkIndex link_extremum(const Graph& g, std::span<const LinkIndex> links, Extremum which, int rank) {
  require_weighted(g);
  if (rank < 1 || static_cast<std::size_t>(rank) > links.size()) {
    throw Error(ErrorCode::RankOutOfRange,
                "rank " + std::to_string(rank) + " exceeds " + std::to_string(links.size()) + " " +
                    g.terminology().link.plural);
  }
  const auto order = order_links(g, links, which);
  return order[static_cast<std::size_t>(rank - 1)];
}

const Link& link_extremum(const Graph& g, Extremum which, int rank) {
  return g.link(link_extremum(g, all_links(g), which, rank));
}

const Link& link_extremum(const Graph& g, const SubgraphRef& sg, Extremum which, int rank) {
  return g.link(link_extremum(g, link_indices(g, sg), which, rank));
}

double total_link_weight(const Graph& g, std::span<const LinkIndex> links) {
  require_weighted(g);
  double sum = 0.0;
  for (LinkIndex l : links) sum += *g.link(l).weight;
  return sum;
}

double average_link_weight(const Graph& g, std::span<const LinkIndex> links) {
  require_weighted(g);
  if (links.empty()) throw Error(ErrorCode::EmptyScope, "no " + g.terminology().link.plural + " in scope");
  return total_link_weight(g, links) / static_cast<double>(links.size());
}

double total_link_weight(const Graph& g) { return total_link_weight(g, all_links(g)); }
double average_link_weight(const Graph& g) { return average_link_weight(g, all_links(g)); }

std::vector<int> components(const Graph& g) {
  std::vector<int> comp(g.node_count(), -1);
  int next = 0;
  std::vector<NodeIndex> stack;
  for (NodeIndex start = 0; start < g.node_count(); ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      for (NodeIndex u : g.neighbors(v)) {
        if (comp[u] < 0) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return comp;
}

double transitivity(const Graph& g) {
  double closed = 0.0;
  double triples = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    const double k = static_cast<double>(nb.size());
    triples += k * (k - 1.0) / 2.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const auto nbi = g.neighbors(nb[i]);
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (std::binary_search(nbi.begin(), nbi.end(), nb[j])) closed += 1.0;
      }
    }
  }
  return triples > 0.0 ? closed / triples : 0.0;
}

std::vector<TimeSlice> temporal_slices(const Graph& g, int bins) {
  if (!g.capabilities().temporal) {
    throw Error(ErrorCode::NotTemporal, "the network's " + g.terminology().link.plural + " carry no times");
  }
  if (bins < 1) throw Error(ErrorCode::RankOutOfRange, "time bin count must be at least 1");
  std::int64_t lo = *g.link(0).time;
  std::int64_t hi = lo;
  for (const auto& l : g.links()) {
    lo = std::min(lo, *l.time);
    hi = std::max(hi, *l.time);
  }
  const std::int64_t span = hi + 1 - lo;
  const auto boundary = [&](std::int64_t i) {
    // ceil(i * span / bins), exact in integers
    const __int128 num = static_cast<__int128>(i) * span;
    return lo + static_cast<std::int64_t>((num + bins - 1) / bins);
  };

  std::vector<TimeSlice> slices(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    slices[i].index = i;
    slices[i].start = boundary(i);
    slices[i].end = i + 1 == bins ? hi + 1 : boundary(i + 1);
  }
  std::vector<std::vector<LinkIndex>> members(slices.size());
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    const __int128 offset = *g.link(l).time - lo;
    const auto idx = static_cast<std::size_t>(offset * bins / span);
    members[idx].push_back(l);
  }
  for (std::size_t i = 0; i < slices.size(); ++i) {
    std::set<NodeIndex> touched;
    for (LinkIndex l : members[i]) {
      slices[i].link_ids.push_back(g.link(l).id);
      touched.insert(g.source(l));
      touched.insert(g.target(l));
    }
    std::sort(slices[i].link_ids.begin(), slices[i].link_ids.end());
    const std::vector<NodeIndex> nodes(touched.begin(), touched.end());
    slices[i].density = nodes.size() < 2 ? 0.0 : density(g, nodes, members[i]);
  }
  return slices;
}

GeoExtent geo_extent(const Graph& g, std::span<const NodeIndex> nodes) {
  if (!g.capabilities().geographic) {
    throw Error(ErrorCode::NotGeographic, "the network has no geographic coordinates");
  }
  if (nodes.empty()) throw Error(ErrorCode::EmptyScope, "no nodes in scope");
  GeoExtent e{90.0, -90.0, 180.0, -180.0};
  for (NodeIndex n : nodes) {
    const auto& c = *g.node(n).coord;
    e.min_lat = std::min(e.min_lat, c.lat);
    e.max_lat = std::max(e.max_lat, c.lat);
    e.min_lon = std::min(e.min_lon, c.lon);
    e.max_lon = std::max(e.max_lon, c.lon);
  }
  return e;
}

GeoExtent geo_extent(const Graph& g) { return geo_extent(g, all_nodes(g)); }

double haversine_km(const GeoCoord& a, const GeoCoord& b) {
  constexpr double kEarthRadiusKm = 6371.0088;
  constexpr double kRad = 3.14159265358979323846 / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace netour::metrics
