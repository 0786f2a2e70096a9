#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "netour/error.hpp"
#include "netour/facts.hpp"

namespace netour {

using nlohmann::json;

namespace {

using metrics::Extremum;

// ---- helpers ---------------------------------------------------------------

std::string label(const Graph& g, NodeIndex n) { return g.node(n).label; }

std::vector<std::string> labels(const Graph& g, std::span<const NodeIndex> nodes) {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (NodeIndex n : nodes) out.push_back(label(g, n));
  return out;
}

// Lists at most `limit` names, summarizing the rest.
std::string name_list(const Graph& g, std::span<const NodeIndex> nodes, std::size_t limit = 5) {
  std::vector<std::string> names = labels(g, nodes.first(std::min(limit, nodes.size())));
  if (nodes.size() > limit) names.push_back(std::to_string(nodes.size() - limit) + " more");
  return join_names(names);
}

std::string param_str(const FactContext& ctx, const char* key, const char* fallback) {
  if (ctx.params.contains(key) && ctx.params[key].is_string()) return ctx.params[key].get<std::string>();
  return fallback;
}

int param_int(const FactContext& ctx, const char* key, int fallback) {
  if (ctx.params.contains(key) && ctx.params[key].is_number_integer()) return ctx.params[key].get<int>();
  return fallback;
}

bool param_bool(const FactContext& ctx, const char* key, bool fallback) {
  if (ctx.params.contains(key) && ctx.params[key].is_boolean()) return ctx.params[key].get<bool>();
  return fallback;
}

std::int64_t count(std::size_t n) { return static_cast<std::int64_t>(n); }

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

[[noreturn]] void rank_out_of_range(int rank, std::size_t available) {
  throw Error(ErrorCode::RankOutOfRange,
              "rank " + std::to_string(rank) + " exceeds the " + std::to_string(available) + " available");
}

std::vector<NodeIndex> path_nodes(const Graph& g, const PathSubject& p) {
  std::vector<NodeIndex> out;
  for (const auto& id : p.nodes) out.push_back(g.node_index(id));
  return out;
}

// Nodes the subject covers, in a stable order.
std::vector<NodeIndex> scope_nodes(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  return std::visit(
      [&](const auto& s) -> std::vector<NodeIndex> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, std::monostate>) return metrics::all_nodes(g);
        if constexpr (std::is_same_v<T, NodeSubject>) return {g.node_index(s.id)};
        if constexpr (std::is_same_v<T, SubgraphRef>) return node_indices(g, s);
        if constexpr (std::is_same_v<T, NodePairSubject>) return {g.node_index(s.first), g.node_index(s.second)};
        if constexpr (std::is_same_v<T, SubgraphPairSubject>) {
          auto a = node_indices(g, s.first);
          const auto b = node_indices(g, s.second);
          a.insert(a.end(), b.begin(), b.end());
          return a;
        }
        if constexpr (std::is_same_v<T, PathSubject>) {
          auto nodes = path_nodes(g, s);
          std::vector<NodeIndex> unique;
          for (NodeIndex n : nodes) {
            if (std::find(unique.begin(), unique.end(), n) == unique.end()) unique.push_back(n);
          }
          return unique;
        }
      },
      ctx.subject);
}

std::vector<LinkIndex> induced_links(const Graph& g, std::span<const NodeIndex> nodes) {
  std::vector<bool> in(g.node_count(), false);
  for (NodeIndex n : nodes) in[n] = true;
  std::vector<LinkIndex> out;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    if (in[g.source(l)] && in[g.target(l)]) out.push_back(l);
  }
  return out;
}

std::vector<LinkIndex> scope_links(const FactContext& ctx) {
  if (std::holds_alternative<std::monostate>(ctx.subject)) return metrics::all_links(ctx.graph());
  return induced_links(ctx.graph(), scope_nodes(ctx));
}

bool is_overall(const FactContext& ctx) { return std::holds_alternative<std::monostate>(ctx.subject); }

void add_nodes(Highlight& h, const Graph& g, std::span<const NodeIndex> nodes) {
  for (NodeIndex n : nodes) h.node_ids.push_back(g.node(n).id);
}

void add_links(Highlight& h, const Graph& g, std::span<const LinkIndex> links) {
  for (LinkIndex l : links) h.link_ids.push_back(g.link(l).id);
}

void add_link_with_ends(Highlight& h, const Graph& g, LinkIndex l) {
  h.link_ids.push_back(g.link(l).id);
  h.node_ids.push_back(g.link(l).source);
  h.node_ids.push_back(g.link(l).target);
}

void add_node_star(Highlight& h, const Graph& g, NodeIndex n) {
  h.node_ids.push_back(g.node(n).id);
  for (LinkIndex l : g.incident_links(n)) add_link_with_ends(h, g, l);
}

// Highlights the scope itself unless it is the whole network.
Highlight scope_highlight(const FactContext& ctx) {
  Highlight h;
  if (is_overall(ctx)) return h;
  add_nodes(h, ctx.graph(), scope_nodes(ctx));
  add_links(h, ctx.graph(), scope_links(ctx));
  return h;
}

SubgraphRef subgraph_of(const Graph& g, std::span<const NodeIndex> nodes) { return induce_subgraph(g, nodes); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

// Cheapest link joining a and b in either direction.
std::optional<LinkIndex> any_link(const Graph& g, NodeIndex a, NodeIndex b) {
  auto ab = metrics::cheapest_link(g, a, b);
  auto ba = metrics::cheapest_link(g, b, a);
  if (!ab) return ba;
  if (!ba) return ab;
  const auto& x = g.link(*ab);
  const auto& y = g.link(*ba);
  const double wx = x.weight.value_or(0.0);
  const double wy = y.weight.value_or(0.0);
  return (wy < wx || (wy == wx && y.id < x.id)) ? ba : ab;
}

std::vector<LinkIndex> path_links(const Graph& g, std::span<const NodeIndex> nodes) {
  std::vector<LinkIndex> out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto l = any_link(g, nodes[i], nodes[i + 1]);
    if (!l) {
      throw Error(ErrorCode::DisconnectedPath,
                  "no " + g.terminology().link.singular + " joins '" + g.node(nodes[i]).id + "' and '" +
                      g.node(nodes[i + 1]).id + "'");
    }
    out.push_back(*l);
  }
  return out;
}

const PathSubject& path_subject(const FactContext& ctx) { return std::get<PathSubject>(ctx.subject); }
const NodePairSubject& pair_subject(const FactContext& ctx) { return std::get<NodePairSubject>(ctx.subject); }
const SubgraphPairSubject& subgraph_pair(const FactContext& ctx) {
  return std::get<SubgraphPairSubject>(ctx.subject);
}
NodeIndex subject_node(const FactContext& ctx) {
  return ctx.graph().node_index(std::get<NodeSubject>(ctx.subject).id);
}

// Scores per node index for a named measure; integral measures report
// through `integral`.
std::vector<double> measure_scores(const FactContext& ctx, const std::string& measure, bool within,
                                   bool& integral) {
  const Graph& g = ctx.graph();
  integral = false;
  if (measure == "degree" || measure == "in" || measure == "out") {
    integral = true;
    const auto deg = within ? metrics::degrees(g, scope_links(ctx)) : ctx.analysis.degrees();
    std::vector<double> s(g.node_count());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = measure == "in" ? deg[i].in : measure == "out" ? deg[i].out : deg[i].total;
    }
    return s;
  }
  if (measure == "betweenness") return ctx.analysis.betweenness();
  if (measure == "closeness") return ctx.analysis.closeness();
  if (measure == "strength") return metrics::strengths(g);
  throw Error(ErrorCode::SchemaViolation, "unknown measure '" + measure + "'");
}

FactValue score_value(double score, bool integral) {
  if (integral) return static_cast<std::int64_t>(std::llround(score));
  return score;
}

// Links in the scope named by params.scope.
std::vector<LinkIndex> links_for(const FactContext& ctx, const std::string& scope) {
  const Graph& g = ctx.graph();
  if (scope == "network") return metrics::all_links(g);
  if (scope == "subgraph") return scope_links(ctx);
  if (scope == "external") {
    const auto nodes = scope_nodes(ctx);
    std::vector<bool> in(g.node_count(), false);
    for (NodeIndex n : nodes) in[n] = true;
    std::vector<LinkIndex> out;
    for (LinkIndex l = 0; l < g.link_count(); ++l) {
      if (in[g.source(l)] != in[g.target(l)]) out.push_back(l);
    }
    return out;
  }
  if (scope == "between") {
    const auto& p = subgraph_pair(ctx);
    std::vector<LinkIndex> out;
    for (const auto& id : metrics::links_between(g, p.first, p.second)) out.push_back(*g.find_link(id));
    return out;
  }
  if (scope == "node") {
    const auto inc = g.incident_links(subject_node(ctx));
    return {inc.begin(), inc.end()};
  }
  if (scope == "pair") {
    const auto& p = pair_subject(ctx);
    const NodeIndex a = g.node_index(p.first);
    const NodeIndex b = g.node_index(p.second);
    std::vector<LinkIndex> out;
    for (LinkIndex l : g.incident_links(a)) {
      const NodeIndex other = g.source(l) == a ? g.target(l) : g.source(l);
      if (other == b) out.push_back(l);
    }
    return out;
  }
  if (scope == "path") return path_links(ctx.graph(), path_nodes(ctx.graph(), path_subject(ctx)));
  throw Error(ErrorCode::SchemaViolation, "unknown link scope '" + scope + "'");
}

// ---- network sizes -----------------------------------------------------------

FactOutcome node_count(const FactContext& ctx) {
  FactOutcome o;
  const auto nodes = scope_nodes(ctx);
  o.values["value"] = count(nodes.size());
  o.values["total"] = count(ctx.graph().node_count());
  o.values["percent"] = percent(nodes.size(), ctx.graph().node_count());
  o.highlight = scope_highlight(ctx);
  return o;
}

FactOutcome link_count(const FactContext& ctx) {
  FactOutcome o;
  const auto links = scope_links(ctx);
  o.values["value"] = count(links.size());
  o.values["total"] = count(ctx.graph().link_count());
  o.highlight = scope_highlight(ctx);
  return o;
}

FactOutcome density(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  const auto links = scope_links(ctx);
  FactOutcome o;
  o.values["value"] = metrics::density(g, nodes, links);
  const std::size_t n = nodes.size();
  o.values["pairs"] = count(metrics::connected_pairs(g, links));
  o.values["possible"] = count(g.directed() ? n * (n - 1) : n * (n - 1) / 2);
  o.highlight = scope_highlight(ctx);
  return o;
}

FactOutcome subgraph_share(const FactContext& ctx) {
  const auto nodes = scope_nodes(ctx);
  FactOutcome o;
  o.values["value"] = percent(nodes.size(), ctx.graph().node_count());
  o.values["count"] = count(nodes.size());
  o.values["total"] = count(ctx.graph().node_count());
  o.highlight = scope_highlight(ctx);
  return o;
}

FactOutcome average_degree(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  if (nodes.empty()) throw Error(ErrorCode::EmptyScope, "no " + g.terminology().node.plural + " in scope");
  const bool within = param_bool(ctx, "within", std::holds_alternative<SubgraphRef>(ctx.subject));
  const auto deg = within ? metrics::degrees(g, scope_links(ctx)) : ctx.analysis.degrees();
  double sum = 0.0;
  int best = 0;
  for (NodeIndex n : nodes) {
    sum += deg[n].total;
    best = std::max(best, deg[n].total);
  }
  FactOutcome o;
  o.values["value"] = sum / static_cast<double>(nodes.size());
  o.values["max"] = static_cast<std::int64_t>(best);
  o.highlight = scope_highlight(ctx);
  return o;
}

FactOutcome degree_spread(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().node.plural);
  const auto& deg = ctx.analysis.degrees();
  std::vector<double> d;
  for (const auto& x : deg) d.push_back(x.total);
  FactOutcome o;
  o.values["min"] = static_cast<std::int64_t>(*std::min_element(d.begin(), d.end()));
  o.values["max"] = static_cast<std::int64_t>(*std::max_element(d.begin(), d.end()));
  o.values["median"] = median(d);
  return o;
}

// ---- node rankings -------------------------------------------------------------

FactOutcome top_nodes(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  if (nodes.empty()) throw Error(ErrorCode::EmptyScope, "no " + g.terminology().node.plural + " in scope");
  bool integral = false;
  const bool within = param_bool(ctx, "within", std::holds_alternative<SubgraphRef>(ctx.subject));
  const auto scores = measure_scores(ctx, param_str(ctx, "measure", "degree"), within, integral);
  const auto order = metrics::rank_nodes(g, nodes, scores);
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(param_int(ctx, "count", 5)), order.size());
  const std::vector<NodeIndex> top(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
  FactOutcome o;
  o.values["nodes"] = join_names(labels(g, top));
  o.values["count"] = count(n);
  o.values["score"] = score_value(scores[top.front()], integral);
  add_nodes(o.highlight, g, top);
  o.subject = subgraph_of(g, top);
  return o;
}

FactOutcome node_ranked(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  bool integral = false;
  const bool within = param_bool(ctx, "within", std::holds_alternative<SubgraphRef>(ctx.subject));
  const auto scores = measure_scores(ctx, param_str(ctx, "measure", "degree"), within, integral);
  const auto order = metrics::rank_nodes(g, nodes, scores);
  if (static_cast<std::size_t>(ctx.rank) > order.size()) rank_out_of_range(ctx.rank, order.size());
  const NodeIndex n = order[static_cast<std::size_t>(ctx.rank - 1)];
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["score"] = score_value(scores[n], integral);
  o.values["count"] = count(order.size());
  o.highlight.node_ids.push_back(g.node(n).id);
  const auto scope = within ? scope_links(ctx) : metrics::all_links(g);
  const std::set<LinkIndex> allowed(scope.begin(), scope.end());
  for (LinkIndex l : g.incident_links(n)) {
    if (allowed.count(l)) add_link_with_ends(o.highlight, g, l);
  }
  o.subject = NodeSubject{g.node(n).id};
  return o;
}

FactOutcome node_centrality(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  bool integral = false;
  const auto scores = measure_scores(ctx, param_str(ctx, "measure", "betweenness"), false, integral);
  const auto order = metrics::rank_nodes(g, scores);
  const auto pos = std::find(order.begin(), order.end(), n) - order.begin() + 1;
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = score_value(scores[n], integral);
  o.values["position"] = ordinal(pos);
  o.values["total"] = count(g.node_count());
  o.highlight.node_ids.push_back(g.node(n).id);
  return o;
}

// ---- links -----------------------------------------------------------------------

FactOutcome link_ranked(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto which = param_str(ctx, "which", "strongest") == "weakest" ? Extremum::Weakest : Extremum::Strongest;
  const auto links = links_for(ctx, param_str(ctx, "scope", "network"));
  const LinkIndex l = metrics::link_extremum(g, links, which, ctx.rank);
  FactOutcome o;
  o.values["source"] = label(g, g.source(l));
  o.values["target"] = label(g, g.target(l));
  o.values["weight"] = *g.link(l).weight;
  o.values["count"] = count(links.size());
  add_link_with_ends(o.highlight, g, l);
  o.subject = NodePairSubject{g.link(l).source, g.link(l).target};
  return o;
}

FactOutcome weight_total(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const std::string scope = param_str(ctx, "scope", "network");
  const auto links = links_for(ctx, scope);
  FactOutcome o;
  o.values["value"] = metrics::total_link_weight(g, links);
  o.values["count"] = count(links.size());
  if (scope != "network") {
    for (LinkIndex l : links) add_link_with_ends(o.highlight, g, l);
  }
  if (scope == "node") o.values["node"] = label(g, subject_node(ctx));
  return o;
}

FactOutcome weight_average(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto links = links_for(ctx, param_str(ctx, "scope", "network"));
  FactOutcome o;
  o.values["value"] = metrics::average_link_weight(g, links);
  o.values["count"] = count(links.size());
  return o;
}

FactOutcome weight_range(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto strongest = metrics::order_links(g, metrics::all_links(g), Extremum::Strongest);
  if (strongest.empty()) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().link.plural);
  std::vector<double> w;
  for (const auto& l : g.links()) w.push_back(*l.weight);
  FactOutcome o;
  o.values["max"] = *g.link(strongest.front()).weight;
  o.values["min"] = *g.link(strongest.back()).weight;
  o.values["median"] = median(w);
  add_link_with_ends(o.highlight, g, strongest.front());
  add_link_with_ends(o.highlight, g, strongest.back());
  return o;
}

FactOutcome heavy_links_share(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto order = metrics::order_links(g, metrics::all_links(g), Extremum::Strongest);
  const double total = metrics::total_link_weight(g);
  if (order.empty() || total <= 0.0) {
    throw Error(ErrorCode::DegenerateGraph, "the network carries no " + g.terminology().weight.singular);
  }
  const std::size_t top = (order.size() + 9) / 10;
  double heavy = 0.0;
  for (std::size_t i = 0; i < top; ++i) heavy += *g.link(order[i]).weight;
  FactOutcome o;
  o.values["count"] = count(top);
  o.values["share"] = 100.0 * heavy / total;
  o.values["percentLinks"] = percent(top, order.size());
  for (std::size_t i = 0; i < top; ++i) add_link_with_ends(o.highlight, g, order[i]);
  return o;
}

FactOutcome self_loops(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  FactOutcome o;
  std::int64_t n = 0;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    if (g.source(l) == g.target(l)) {
      ++n;
      add_link_with_ends(o.highlight, g, l);
    }
  }
  o.values["value"] = n;
  if (n == 0) o.variant = "none";
  return o;
}

FactOutcome parallel_links(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<LinkIndex>> groups;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    NodeIndex a = g.source(l);
    NodeIndex b = g.target(l);
    if (!g.directed() && b < a) std::swap(a, b);
    groups[{a, b}].push_back(l);
  }
  FactOutcome o;
  std::int64_t pairs = 0;
  std::int64_t links = 0;
  for (const auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    ++pairs;
    links += count(members.size());
    for (LinkIndex l : members) add_link_with_ends(o.highlight, g, l);
  }
  o.values["value"] = pairs;
  o.values["links"] = links;
  if (pairs == 0) o.variant = "none";
  return o;
}

FactOutcome reciprocity(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  std::set<std::pair<NodeIndex, NodeIndex>> arcs;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    if (g.source(l) != g.target(l)) arcs.emplace(g.source(l), g.target(l));
  }
  if (arcs.empty()) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().link.plural);
  std::int64_t mutual = 0;
  for (const auto& [a, b] : arcs) {
    if (arcs.count({b, a})) ++mutual;
  }
  FactOutcome o;
  o.values["value"] = 100.0 * static_cast<double>(mutual) / static_cast<double>(arcs.size());
  o.values["mutual"] = mutual / 2;
  return o;
}

// ---- structure -------------------------------------------------------------------

FactOutcome isolated_nodes(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  std::vector<NodeIndex> isolated;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (g.neighbors(n).empty()) isolated.push_back(n);
  }
  FactOutcome o;
  o.values["value"] = count(isolated.size());
  o.values["nodes"] = name_list(g, isolated);
  add_nodes(o.highlight, g, isolated);
  if (isolated.empty()) o.variant = "none";
  return o;
}

FactOutcome leaf_nodes(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  std::vector<NodeIndex> leaves;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (g.neighbors(n).size() == 1) leaves.push_back(n);
  }
  FactOutcome o;
  o.values["value"] = count(leaves.size());
  o.values["percent"] = percent(leaves.size(), g.node_count());
  add_nodes(o.highlight, g, leaves);
  if (leaves.empty()) o.variant = "none";
  return o;
}

std::vector<std::vector<NodeIndex>> component_members(const Analysis& a) {
  const auto& comp = a.components();
  const int n = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<NodeIndex>> members(static_cast<std::size_t>(n));
  for (NodeIndex v = 0; v < comp.size(); ++v) members[static_cast<std::size_t>(comp[v])].push_back(v);
  return members;
}

FactOutcome components(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().node.plural);
  const auto members = component_members(ctx.analysis);
  std::size_t largest = 0;
  for (const auto& m : members) largest = std::max(largest, m.size());
  FactOutcome o;
  o.values["value"] = count(members.size());
  o.values["largest"] = count(largest);
  return o;
}

FactOutcome largest_component(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto members = component_members(ctx.analysis);
  if (members.empty()) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().node.plural);
  const auto largest = std::max_element(members.begin(), members.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  FactOutcome o;
  o.values["value"] = count(largest->size());
  o.values["percent"] = percent(largest->size(), g.node_count());
  add_nodes(o.highlight, g, *largest);
  add_links(o.highlight, g, induced_links(g, *largest));
  o.subject = subgraph_of(g, *largest);
  return o;
}

FactOutcome diameter(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& stats = ctx.analysis.distances();
  FactOutcome o;
  o.values["value"] = static_cast<std::int64_t>(stats.diameter);
  if (stats.reachable_pairs == 0) {
    o.variant = "none";
    return o;
  }
  // First pair (by node order) realizing the diameter.
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto dist = metrics::hop_distances(g, v, true);
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      if (dist[u] != stats.diameter) continue;
      o.values["from"] = label(g, v);
      o.values["to"] = label(g, u);
      const auto paths = metrics::k_shortest_paths(g, g.node(v).id, g.node(u).id, 1);
      for (const auto& id : paths.front().node_sequence) o.highlight.node_ids.push_back(id);
      for (const auto& id : paths.front().link_sequence) o.highlight.link_ids.push_back(id);
      o.subject = NodePairSubject{g.node(v).id, g.node(u).id};
      return o;
    }
  }
  return o;
}

FactOutcome average_path_length(const FactContext& ctx) {
  const auto& stats = ctx.analysis.distances();
  if (stats.reachable_pairs == 0) {
    throw Error(ErrorCode::DegenerateGraph, "no two " + ctx.graph().terminology().node.plural + " are connected");
  }
  FactOutcome o;
  o.values["value"] = stats.average;
  o.values["pairs"] = count(stats.reachable_pairs);
  return o;
}

FactOutcome transitivity(const FactContext& ctx) {
  FactOutcome o;
  o.values["value"] = metrics::transitivity(ctx.graph());
  o.values["percent"] = 100.0 * metrics::transitivity(ctx.graph());
  return o;
}

// ---- communities -------------------------------------------------------------------

std::vector<std::vector<NodeIndex>> community_members(const Analysis& a) {
  const auto& p = a.communities();
  std::vector<std::vector<NodeIndex>> members(static_cast<std::size_t>(p.community_count));
  for (NodeIndex v = 0; v < p.community_of.size(); ++v) members[static_cast<std::size_t>(p.community_of[v])].push_back(v);
  return members;
}

void require_nodes(const Graph& g) {
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyScope, "the network has no " + g.terminology().node.plural);
}

FactOutcome community_count(const FactContext& ctx) {
  require_nodes(ctx.graph());
  const auto& p = ctx.analysis.communities();
  FactOutcome o;
  o.values["value"] = static_cast<std::int64_t>(p.community_count);
  o.values["modularity"] = p.modularity;
  return o;
}

FactOutcome community_sizes(const FactContext& ctx) {
  require_nodes(ctx.graph());
  const auto members = community_members(ctx.analysis);
  std::size_t lo = members.front().size();
  std::size_t hi = lo;
  for (const auto& m : members) {
    lo = std::min(lo, m.size());
    hi = std::max(hi, m.size());
  }
  FactOutcome o;
  o.values["largest"] = count(hi);
  o.values["smallest"] = count(lo);
  o.values["count"] = count(members.size());
  return o;
}

FactOutcome largest_community(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  require_nodes(g);
  const auto members = community_members(ctx.analysis);
  const auto largest = std::max_element(members.begin(), members.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  FactOutcome o;
  o.values["value"] = count(largest->size());
  o.values["percent"] = percent(largest->size(), g.node_count());
  o.values["nodes"] = name_list(g, *largest);
  add_nodes(o.highlight, g, *largest);
  add_links(o.highlight, g, induced_links(g, *largest));
  o.subject = subgraph_of(g, *largest);
  return o;
}

FactOutcome most_connected_community(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  require_nodes(g);
  const auto& p = ctx.analysis.communities();
  if (p.community_count < 2) {
    throw Error(ErrorCode::DegenerateGraph, "the network forms a single cluster");
  }
  std::vector<std::int64_t> external(static_cast<std::size_t>(p.community_count), 0);
  std::vector<std::vector<LinkIndex>> ext_links(external.size());
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    const int a = p.community_of[g.source(l)];
    const int b = p.community_of[g.target(l)];
    if (a == b) continue;
    ++external[static_cast<std::size_t>(a)];
    ++external[static_cast<std::size_t>(b)];
    ext_links[static_cast<std::size_t>(a)].push_back(l);
    ext_links[static_cast<std::size_t>(b)].push_back(l);
  }
  std::vector<int> order(external.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return external[a] > external[b]; });
  if (static_cast<std::size_t>(ctx.rank) > order.size()) rank_out_of_range(ctx.rank, order.size());
  const int c = order[static_cast<std::size_t>(ctx.rank - 1)];
  const auto members = community_members(ctx.analysis);
  const auto& nodes = members[static_cast<std::size_t>(c)];
  FactOutcome o;
  o.values["value"] = external[static_cast<std::size_t>(c)];
  o.values["size"] = count(nodes.size());
  o.values["nodes"] = name_list(g, nodes);
  add_nodes(o.highlight, g, nodes);
  for (LinkIndex l : ext_links[static_cast<std::size_t>(c)]) add_link_with_ends(o.highlight, g, l);
  o.subject = subgraph_of(g, nodes);
  return o;
}

FactOutcome modularity(const FactContext& ctx) {
  require_nodes(ctx.graph());
  const auto& p = ctx.analysis.communities();
  FactOutcome o;
  o.values["value"] = p.modularity;
  o.values["count"] = static_cast<std::int64_t>(p.community_count);
  return o;
}

FactOutcome subgraph_communities(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = ctx.analysis.communities();
  const auto nodes = scope_nodes(ctx);
  std::map<int, std::size_t> hits;
  for (NodeIndex n : nodes) ++hits[p.community_of[n]];
  std::size_t dominant = 0;
  for (const auto& [c, k] : hits) dominant = std::max(dominant, k);
  FactOutcome o;
  o.values["value"] = count(hits.size());
  o.values["dominant"] = percent(dominant, nodes.size());
  o.highlight = scope_highlight(ctx);
  (void)g;
  return o;
}

FactOutcome node_community(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto& p = ctx.analysis.communities();
  const auto members = community_members(ctx.analysis);
  const auto& nodes = members[static_cast<std::size_t>(p.community_of[n])];
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["size"] = count(nodes.size() - 1);
  o.values["count"] = static_cast<std::int64_t>(p.community_count);
  add_nodes(o.highlight, g, nodes);
  add_links(o.highlight, g, induced_links(g, nodes));
  o.subject = subgraph_of(g, nodes);
  return o;
}

// ---- subgraphs ------------------------------------------------------------------------

FactOutcome external_links(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto links = links_for(ctx, "external");
  const auto nodes = scope_nodes(ctx);
  const std::set<NodeIndex> inside(nodes.begin(), nodes.end());
  std::set<NodeIndex> outside;
  FactOutcome o;
  for (LinkIndex l : links) {
    add_link_with_ends(o.highlight, g, l);
    for (NodeIndex e : {g.source(l), g.target(l)}) {
      if (!inside.count(e)) outside.insert(e);
    }
  }
  o.values["value"] = count(links.size());
  o.values["neighbors"] = count(outside.size());
  if (links.empty()) o.variant = "none";
  return o;
}

FactOutcome most_external_node(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  std::vector<double> ext(g.node_count(), 0.0);
  const auto links = links_for(ctx, "external");
  for (LinkIndex l : links) {
    ext[g.source(l)] += 1.0;
    ext[g.target(l)] += 1.0;
  }
  const auto order = metrics::rank_nodes(g, nodes, ext);
  if (static_cast<std::size_t>(ctx.rank) > order.size()) rank_out_of_range(ctx.rank, order.size());
  const NodeIndex n = order[static_cast<std::size_t>(ctx.rank - 1)];
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["score"] = static_cast<std::int64_t>(ext[n]);
  o.highlight.node_ids.push_back(g.node(n).id);
  for (LinkIndex l : links) {
    if (g.source(l) == n || g.target(l) == n) add_link_with_ends(o.highlight, g, l);
  }
  o.subject = NodeSubject{g.node(n).id};
  return o;
}

FactOutcome between_link_count(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto links = links_for(ctx, "between");
  FactOutcome o;
  o.values["value"] = count(links.size());
  for (LinkIndex l : links) add_link_with_ends(o.highlight, g, l);
  if (links.empty()) o.variant = "none";
  return o;
}

FactOutcome pair_size_comparison(const FactContext& ctx) {
  const auto& p = subgraph_pair(ctx);
  FactOutcome o;
  o.values["firstNodes"] = count(p.first.node_ids.size());
  o.values["secondNodes"] = count(p.second.node_ids.size());
  o.values["firstLinks"] = count(p.first.link_ids.size());
  o.values["secondLinks"] = count(p.second.link_ids.size());
  o.highlight.node_ids = p.first.node_ids;
  o.highlight.node_ids.insert(o.highlight.node_ids.end(), p.second.node_ids.begin(), p.second.node_ids.end());
  o.highlight.link_ids = p.first.link_ids;
  o.highlight.link_ids.insert(o.highlight.link_ids.end(), p.second.link_ids.begin(), p.second.link_ids.end());
  return o;
}

FactOutcome pair_density_comparison(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = subgraph_pair(ctx);
  const double a = metrics::density(g, p.first);
  const double b = metrics::density(g, p.second);
  FactOutcome o;
  o.values["first"] = a;
  o.values["second"] = b;
  o.variant = a > b ? "" : a < b ? "secondDenser" : "equal";
  return o;
}

// ---- single nodes -----------------------------------------------------------------------

FactOutcome node_degree(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto& d = ctx.analysis.degrees()[n];
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["degree"] = static_cast<std::int64_t>(d.total);
  o.values["in"] = static_cast<std::int64_t>(d.in);
  o.values["out"] = static_cast<std::int64_t>(d.out);
  o.values["neighbors"] = count(g.neighbors(n).size());
  add_node_star(o.highlight, g, n);
  return o;
}

FactOutcome node_position(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["position"] = ordinal(metrics::connectivity_ranking(g, g.node(n).id));
  o.values["total"] = count(g.node_count());
  o.values["degree"] = static_cast<std::int64_t>(ctx.analysis.degrees()[n].total);
  add_node_star(o.highlight, g, n);
  return o;
}

FactOutcome node_neighbors(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto nb = g.neighbors(n);
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = count(nb.size());
  o.values["nodes"] = name_list(g, std::vector<NodeIndex>(nb.begin(), nb.end()));
  add_node_star(o.highlight, g, n);
  if (nb.empty()) o.variant = "none";
  const auto ego = metrics::ego_nodes(g, n, 1);
  o.subject = subgraph_of(g, ego);
  return o;
}

FactOutcome node_neighborhood_density(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto ego = metrics::ego_nodes(g, n, 1);
  const auto links = induced_links(g, ego);
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = metrics::density(g, ego, links);
  o.values["links"] = count(links.size());
  add_nodes(o.highlight, g, ego);
  add_links(o.highlight, g, links);
  o.subject = subgraph_of(g, ego);
  return o;
}

FactOutcome node_mutual_connections(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto nb = g.neighbors(n);
  std::vector<NodeIndex> neighbors(nb.begin(), nb.end());
  std::vector<LinkIndex> among;
  for (LinkIndex l : induced_links(g, neighbors)) {
    if (g.source(l) != g.target(l)) among.push_back(l);
  }
  const std::size_t k = neighbors.size();
  const std::size_t pairs = metrics::connected_pairs(g, among);
  const std::size_t possible = g.directed() ? k * (k - 1) : k * (k - 1) / 2;
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = count(among.size());
  o.values["pairs"] = count(pairs);
  o.values["possible"] = count(possible);
  o.values["percent"] = percent(pairs, possible);
  add_nodes(o.highlight, g, neighbors);
  add_links(o.highlight, g, among);
  if (among.empty()) o.variant = "none";
  return o;
}

FactOutcome node_second_neighbors(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto dist = metrics::hop_distances(g, n, false);
  std::vector<NodeIndex> second;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (dist[v] == 2) second.push_back(v);
  }
  const auto ego = metrics::ego_nodes(g, n, 2);
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = count(second.size());
  o.values["total"] = count(ego.size() - 1);
  add_nodes(o.highlight, g, ego);
  add_links(o.highlight, g, induced_links(g, ego));
  if (second.empty()) o.variant = "none";
  o.subject = subgraph_of(g, ego);
  return o;
}

FactOutcome node_in_out(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto& d = ctx.analysis.degrees()[n];
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["in"] = static_cast<std::int64_t>(d.in);
  o.values["out"] = static_cast<std::int64_t>(d.out);
  o.variant = d.out > d.in ? "" : d.out < d.in ? "receiver" : "balanced";
  add_node_star(o.highlight, g, n);
  return o;
}

FactOutcome node_reach(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto dist = metrics::hop_distances(g, n, true);
  std::vector<NodeIndex> reach;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (v != n && dist[v] > 0) reach.push_back(v);
  }
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["value"] = count(reach.size());
  o.values["percent"] = percent(reach.size(), g.node_count() > 1 ? g.node_count() - 1 : 0);
  o.highlight.node_ids.push_back(g.node(n).id);
  add_nodes(o.highlight, g, reach);
  return o;
}

FactOutcome node_location(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto& c = *g.node(n).coord;
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["lat"] = c.lat;
  o.values["lon"] = c.lon;
  std::optional<NodeIndex> nearest;
  double best = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (v == n) continue;
    const double d = metrics::haversine_km(c, *g.node(v).coord);
    if (!nearest || d < best) {
      nearest = v;
      best = d;
    }
  }
  o.highlight.node_ids.push_back(g.node(n).id);
  if (!nearest) {
    o.variant = "alone";
    return o;
  }
  o.values["nearest"] = label(g, *nearest);
  o.values["km"] = best;
  o.highlight.node_ids.push_back(g.node(*nearest).id);
  return o;
}

FactOutcome node_activity(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const NodeIndex n = subject_node(ctx);
  const auto inc = g.incident_links(n);
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["count"] = count(inc.size());
  if (inc.empty()) {
    o.variant = "none";
    return o;
  }
  std::int64_t lo = *g.link(inc.front()).time;
  std::int64_t hi = lo;
  for (LinkIndex l : inc) {
    lo = std::min(lo, *g.link(l).time);
    hi = std::max(hi, *g.link(l).time);
  }
  o.values["first"] = format_timestamp(lo);
  o.values["last"] = format_timestamp(hi);
  add_node_star(o.highlight, g, n);
  return o;
}

// ---- node pairs ------------------------------------------------------------------------

FactOutcome pair_links(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const auto links = links_for(ctx, "pair");
  FactOutcome o;
  o.values["first"] = label(g, g.node_index(p.first));
  o.values["second"] = label(g, g.node_index(p.second));
  o.values["value"] = count(links.size());
  o.highlight.node_ids = {p.first, p.second};
  add_links(o.highlight, g, links);
  if (links.empty()) o.variant = "none";
  return o;
}

FactOutcome pair_ranking(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const auto& deg = ctx.analysis.degrees();
  FactOutcome o;
  o.values["first"] = label(g, g.node_index(p.first));
  o.values["second"] = label(g, g.node_index(p.second));
  o.values["firstRank"] = ordinal(metrics::connectivity_ranking(g, p.first));
  o.values["secondRank"] = ordinal(metrics::connectivity_ranking(g, p.second));
  o.values["firstDegree"] = static_cast<std::int64_t>(deg[g.node_index(p.first)].total);
  o.values["secondDegree"] = static_cast<std::int64_t>(deg[g.node_index(p.second)].total);
  o.highlight.node_ids = {p.first, p.second};
  return o;
}

FactOutcome pair_weights(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const auto s = metrics::strengths(g);
  const NodeIndex a = g.node_index(p.first);
  const NodeIndex b = g.node_index(p.second);
  FactOutcome o;
  o.values["first"] = label(g, a);
  o.values["second"] = label(g, b);
  o.values["firstWeight"] = s[a];
  o.values["secondWeight"] = s[b];
  add_node_star(o.highlight, g, a);
  add_node_star(o.highlight, g, b);
  return o;
}

FactOutcome common_neighbors(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const auto common = metrics::common_neighbors(g, p.first, p.second);
  const NodeIndex a = g.node_index(p.first);
  const NodeIndex b = g.node_index(p.second);
  std::vector<NodeIndex> nodes;
  for (const auto& id : common) nodes.push_back(g.node_index(id));
  FactOutcome o;
  o.values["first"] = label(g, a);
  o.values["second"] = label(g, b);
  o.values["value"] = count(common.size());
  o.values["nodes"] = name_list(g, nodes);
  o.highlight.node_ids = {p.first, p.second};
  add_nodes(o.highlight, g, nodes);
  for (NodeIndex c : nodes) {
    for (NodeIndex end : {a, b}) {
      for (LinkIndex l : g.incident_links(c)) {
        const NodeIndex other = g.source(l) == c ? g.target(l) : g.source(l);
        if (other == end) o.highlight.link_ids.push_back(g.link(l).id);
      }
    }
  }
  if (common.empty()) o.variant = "none";
  if (common.size() == 1) o.subject = NodeSubject{common.front()};
  return o;
}

FactOutcome pair_distance(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  FactOutcome o;
  o.values["first"] = label(g, g.node_index(p.first));
  o.values["second"] = label(g, g.node_index(p.second));
  o.highlight.node_ids = {p.first, p.second};
  const auto paths = metrics::k_shortest_paths(g, p.first, p.second, 1);
  if (paths.empty()) {
    o.variant = "none";
    return o;
  }
  o.values["value"] = static_cast<std::int64_t>(paths.front().length);
  o.highlight.node_ids = paths.front().node_sequence;
  o.highlight.link_ids = paths.front().link_sequence;
  return o;
}

FactOutcome pair_geo_distance(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const NodeIndex a = g.node_index(p.first);
  const NodeIndex b = g.node_index(p.second);
  FactOutcome o;
  o.values["first"] = label(g, a);
  o.values["second"] = label(g, b);
  o.values["km"] = metrics::haversine_km(*g.node(a).coord, *g.node(b).coord);
  o.highlight.node_ids = {p.first, p.second};
  return o;
}

// ---- possible paths between two nodes ---------------------------------------------------

std::vector<metrics::PathResult> candidate_paths(const FactContext& ctx) {
  const auto& p = pair_subject(ctx);
  return metrics::k_shortest_paths(ctx.graph(), p.first, p.second, std::max(1, param_int(ctx, "k", 3)));
}

std::string route(const Graph& g, const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += " → ";
    out += g.node(g.node_index(id)).label;
  }
  return out;
}

void add_path(Highlight& h, const metrics::PathResult& p) {
  h.node_ids.insert(h.node_ids.end(), p.node_sequence.begin(), p.node_sequence.end());
  h.link_ids.insert(h.link_ids.end(), p.link_sequence.begin(), p.link_sequence.end());
}

[[noreturn]] void no_path(const FactContext& ctx) {
  const auto& p = pair_subject(ctx);
  throw Error(ErrorCode::NoPath, "no path connects '" + p.first + "' and '" + p.second + "'");
}

FactOutcome paths_overview(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto& p = pair_subject(ctx);
  const auto paths = candidate_paths(ctx);
  FactOutcome o;
  o.values["first"] = label(g, g.node_index(p.first));
  o.values["second"] = label(g, g.node_index(p.second));
  o.values["value"] = count(paths.size());
  o.values["k"] = static_cast<std::int64_t>(std::max(1, param_int(ctx, "k", 3)));
  o.highlight.node_ids = {p.first, p.second};
  if (paths.empty()) {
    o.variant = "none";
    return o;
  }
  o.values["shortest"] = static_cast<std::int64_t>(paths.front().length);
  o.values["longest"] = static_cast<std::int64_t>(paths.back().length);
  for (const auto& path : paths) add_path(o.highlight, path);
  return o;
}

FactOutcome paths_shortest(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto paths = candidate_paths(ctx);
  if (paths.empty()) no_path(ctx);
  const auto shortest = paths.front().length;
  const auto tied = std::count_if(paths.begin(), paths.end(), [&](const auto& p) { return p.length == shortest; });
  FactOutcome o;
  o.values["value"] = static_cast<std::int64_t>(shortest);
  o.values["tied"] = static_cast<std::int64_t>(tied);
  o.values["route"] = route(g, paths.front().node_sequence);
  add_path(o.highlight, paths.front());
  return o;
}

FactOutcome path_detail(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto paths = candidate_paths(ctx);
  if (paths.empty()) no_path(ctx);
  if (static_cast<std::size_t>(ctx.rank) > paths.size()) rank_out_of_range(ctx.rank, paths.size());
  const auto& path = paths[static_cast<std::size_t>(ctx.rank - 1)];
  FactOutcome o;
  o.values["route"] = route(g, path.node_sequence);
  o.values["length"] = static_cast<std::int64_t>(path.length);
  if (path.total_weight) {
    o.values["total"] = *path.total_weight;
    o.values["min"] = *path.min_link_weight;
  } else {
    o.variant = "unweighted";
  }
  add_path(o.highlight, path);
  return o;
}

FactOutcome paths_bottleneck(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto paths = candidate_paths(ctx);
  if (paths.empty()) no_path(ctx);
  std::size_t best = 0;
  for (std::size_t i = 1; i < paths.size(); ++i) {
    if (*paths[i].min_link_weight > *paths[best].min_link_weight) best = i;
  }
  FactOutcome o;
  o.values["route"] = route(g, paths[best].node_sequence);
  o.values["min"] = *paths[best].min_link_weight;
  o.values["count"] = count(paths.size());
  add_path(o.highlight, paths[best]);
  return o;
}

FactOutcome paths_lightest(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto paths = candidate_paths(ctx);
  if (paths.empty()) no_path(ctx);
  std::size_t best = 0;
  for (std::size_t i = 1; i < paths.size(); ++i) {
    if (*paths[i].total_weight < *paths[best].total_weight) best = i;
  }
  FactOutcome o;
  o.values["route"] = route(g, paths[best].node_sequence);
  o.values["total"] = *paths[best].total_weight;
  o.values["count"] = count(paths.size());
  add_path(o.highlight, paths[best]);
  return o;
}

// ---- following a path ----------------------------------------------------------------------

FactOutcome path_overview(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = path_nodes(g, path_subject(ctx));
  const auto links = path_links(g, nodes);
  FactOutcome o;
  o.values["stops"] = count(nodes.size());
  o.values["hops"] = count(links.size());
  o.values["route"] = route(g, path_subject(ctx).nodes);
  add_nodes(o.highlight, g, nodes);
  add_links(o.highlight, g, links);
  return o;
}

FactOutcome path_stop(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = path_nodes(g, path_subject(ctx));
  if (static_cast<std::size_t>(ctx.rank) > nodes.size()) rank_out_of_range(ctx.rank, nodes.size());
  const NodeIndex n = nodes[static_cast<std::size_t>(ctx.rank - 1)];
  const std::set<NodeIndex> on_path(nodes.begin(), nodes.end());
  std::int64_t off = 0;
  for (NodeIndex v : g.neighbors(n)) off += on_path.count(v) ? 0 : 1;
  FactOutcome o;
  o.values["node"] = label(g, n);
  o.values["position"] = ordinal(ctx.rank);
  o.values["stops"] = count(nodes.size());
  o.values["degree"] = static_cast<std::int64_t>(ctx.analysis.degrees()[n].total);
  o.values["offPath"] = off;
  add_node_star(o.highlight, g, n);
  o.subject = NodeSubject{g.node(n).id};
  return o;
}

FactOutcome path_weakest_hop(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto links = links_for(ctx, "path");
  if (links.empty()) throw Error(ErrorCode::EmptyScope, "the path has no " + g.terminology().link.plural);
  const LinkIndex l = metrics::link_extremum(g, links, Extremum::Weakest, 1);
  FactOutcome o;
  o.values["source"] = label(g, g.source(l));
  o.values["target"] = label(g, g.target(l));
  o.values["weight"] = *g.link(l).weight;
  add_link_with_ends(o.highlight, g, l);
  o.subject = NodePairSubject{g.link(l).source, g.link(l).target};
  return o;
}

FactOutcome path_neighborhood(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = path_nodes(g, path_subject(ctx));
  const std::set<NodeIndex> on_path(nodes.begin(), nodes.end());
  std::set<NodeIndex> around;
  for (NodeIndex n : nodes) {
    for (NodeIndex v : g.neighbors(n)) {
      if (!on_path.count(v)) around.insert(v);
    }
  }
  FactOutcome o;
  o.values["value"] = count(around.size());
  o.values["stops"] = count(nodes.size());
  add_nodes(o.highlight, g, nodes);
  add_nodes(o.highlight, g, std::vector<NodeIndex>(around.begin(), around.end()));
  if (around.empty()) o.variant = "none";
  return o;
}

// ---- time -----------------------------------------------------------------------------------

std::vector<metrics::TimeSlice> slices(const FactContext& ctx) {
  return metrics::temporal_slices(ctx.graph(), param_int(ctx, "bins", 5));
}

// Calendar dates once the data spans a few days, full timestamps below.
struct MomentFormat {
  bool date_only;
  std::string operator()(std::int64_t t) const {
    const std::string s = format_timestamp(t);
    return date_only ? s.substr(0, 10) : s;
  }
};

MomentFormat moment_format(const std::vector<metrics::TimeSlice>& s) {
  return {s.back().end - s.front().start >= 3 * 86400};
}

void add_link_ids(Highlight& h, const Graph& g, const std::vector<std::string>& ids) {
  for (const auto& id : ids) add_link_with_ends(h, g, *g.find_link(id));
}

FactOutcome time_span(const FactContext& ctx) {
  const auto s = slices(ctx);
  const auto fmt = moment_format(s);
  FactOutcome o;
  o.values["start"] = fmt(s.front().start);
  o.values["end"] = fmt(s.back().end - 1);
  o.values["count"] = count(ctx.graph().link_count());
  o.values["bins"] = count(s.size());
  return o;
}

FactOutcome busiest_period(const FactContext& ctx) {
  const auto s = slices(ctx);
  const auto fmt = moment_format(s);
  const auto busiest = std::max_element(s.begin(), s.end(), [](const auto& a, const auto& b) {
    return a.link_ids.size() < b.link_ids.size();
  });
  FactOutcome o;
  o.values["start"] = fmt(busiest->start);
  o.values["end"] = fmt(busiest->end - 1);
  o.values["value"] = count(busiest->link_ids.size());
  o.values["percent"] = percent(busiest->link_ids.size(), ctx.graph().link_count());
  add_link_ids(o.highlight, ctx.graph(), busiest->link_ids);
  return o;
}

FactOutcome slice_density(const FactContext& ctx) {
  const auto s = slices(ctx);
  const auto fmt = moment_format(s);
  if (static_cast<std::size_t>(ctx.rank) > s.size()) rank_out_of_range(ctx.rank, s.size());
  const auto& slice = s[static_cast<std::size_t>(ctx.rank - 1)];
  FactOutcome o;
  o.values["start"] = fmt(slice.start);
  o.values["end"] = fmt(slice.end - 1);
  o.values["value"] = slice.density;
  o.values["count"] = count(slice.link_ids.size());
  o.values["period"] = static_cast<std::int64_t>(slice.index + 1);
  o.values["periods"] = count(s.size());
  add_link_ids(o.highlight, ctx.graph(), slice.link_ids);
  return o;
}

FactOutcome density_trend(const FactContext& ctx) {
  const auto s = slices(ctx);
  const auto fmt = moment_format(s);
  const auto peak = std::max_element(s.begin(), s.end(), [](const auto& a, const auto& b) {
    return a.density < b.density;
  });
  FactOutcome o;
  o.values["first"] = s.front().density;
  o.values["last"] = s.back().density;
  o.values["peakStart"] = fmt(peak->start);
  o.values["peakEnd"] = fmt(peak->end - 1);
  o.values["peak"] = peak->density;
  o.variant = s.back().density > s.front().density   ? ""
              : s.back().density < s.front().density ? "fell"
                                                     : "flat";
  add_link_ids(o.highlight, ctx.graph(), peak->link_ids);
  return o;
}

FactOutcome active_nodes_trend(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto s = slices(ctx);
  const auto active = [&](const metrics::TimeSlice& slice) {
    std::set<NodeIndex> nodes;
    for (const auto& id : slice.link_ids) {
      const LinkIndex l = *g.find_link(id);
      nodes.insert(g.source(l));
      nodes.insert(g.target(l));
    }
    return nodes.size();
  };
  FactOutcome o;
  o.values["first"] = count(active(s.front()));
  o.values["last"] = count(active(s.back()));
  o.values["periods"] = count(s.size());
  return o;
}

// ---- geography --------------------------------------------------------------------------------

FactOutcome geo_extent(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  const auto nodes = scope_nodes(ctx);
  const auto e = metrics::geo_extent(g, nodes);
  const auto pick = [&](auto better) {
    NodeIndex best = nodes.front();
    for (NodeIndex n : nodes) {
      if (better(*g.node(n).coord, *g.node(best).coord)) best = n;
    }
    return best;
  };
  const NodeIndex north = pick([](const GeoCoord& a, const GeoCoord& b) { return a.lat > b.lat; });
  const NodeIndex south = pick([](const GeoCoord& a, const GeoCoord& b) { return a.lat < b.lat; });
  const NodeIndex east = pick([](const GeoCoord& a, const GeoCoord& b) { return a.lon > b.lon; });
  const NodeIndex west = pick([](const GeoCoord& a, const GeoCoord& b) { return a.lon < b.lon; });
  FactOutcome o;
  o.values["minLat"] = e.min_lat;
  o.values["maxLat"] = e.max_lat;
  o.values["minLon"] = e.min_lon;
  o.values["maxLon"] = e.max_lon;
  o.values["north"] = label(g, north);
  o.values["south"] = label(g, south);
  o.values["east"] = label(g, east);
  o.values["west"] = label(g, west);
  o.values["km"] = metrics::haversine_km({e.min_lat, e.min_lon}, {e.max_lat, e.max_lon});
  for (NodeIndex n : {north, south, east, west}) o.highlight.node_ids.push_back(g.node(n).id);
  return o;
}

FactOutcome longest_geo_link(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  std::vector<std::pair<double, LinkIndex>> lengths;
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    if (g.source(l) == g.target(l)) continue;
    lengths.emplace_back(metrics::haversine_km(*g.node(g.source(l)).coord, *g.node(g.target(l)).coord), l);
  }
  std::sort(lengths.begin(), lengths.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return g.link(a.second).id < g.link(b.second).id;
  });
  if (static_cast<std::size_t>(ctx.rank) > lengths.size()) rank_out_of_range(ctx.rank, lengths.size());
  const auto [km, l] = lengths[static_cast<std::size_t>(ctx.rank - 1)];
  FactOutcome o;
  o.values["source"] = label(g, g.source(l));
  o.values["target"] = label(g, g.target(l));
  o.values["km"] = km;
  add_link_with_ends(o.highlight, g, l);
  o.subject = NodePairSubject{g.link(l).source, g.link(l).target};
  return o;
}

FactOutcome geo_center(const FactContext& ctx) {
  const Graph& g = ctx.graph();
  require_nodes(g);
  double lat = 0.0;
  double lon = 0.0;
  for (const auto& n : g.nodes()) {
    lat += n.coord->lat;
    lon += n.coord->lon;
  }
  const GeoCoord center{lat / static_cast<double>(g.node_count()), lon / static_cast<double>(g.node_count())};
  NodeIndex best = 0;
  double best_km = metrics::haversine_km(center, *g.node(0).coord);
  for (NodeIndex n = 1; n < g.node_count(); ++n) {
    const double d = metrics::haversine_km(center, *g.node(n).coord);
    if (d < best_km) {
      best = n;
      best_km = d;
    }
  }
  FactOutcome o;
  o.values["node"] = label(g, best);
  o.values["km"] = best_km;
  o.highlight.node_ids.push_back(g.node(best).id);
  o.subject = NodeSubject{g.node(best).id};
  return o;
}

}  // namespace

const std::map<std::string, ComputeFn, std::less<>>& compute_bindings() {
  static const std::map<std::string, ComputeFn, std::less<>> bindings = {
      {"active-nodes-trend", &active_nodes_trend},
      {"average-degree", &average_degree},
      {"average-path-length", &average_path_length},
      {"between-link-count", &between_link_count},
      {"busiest-period", &busiest_period},
      {"common-neighbors", &common_neighbors},
      {"community-count", &community_count},
      {"community-sizes", &community_sizes},
      {"components", &components},
      {"degree-spread", &degree_spread},
      {"density", &density},
      {"density-trend", &density_trend},
      {"diameter", &diameter},
      {"external-links", &external_links},
      {"geo-center", &geo_center},
      {"geo-extent", &geo_extent},
      {"heavy-links-share", &heavy_links_share},
      {"isolated-nodes", &isolated_nodes},
      {"largest-community", &largest_community},
      {"largest-component", &largest_component},
      {"leaf-nodes", &leaf_nodes},
      {"link-count", &link_count},
      {"link-ranked", &link_ranked},
      {"longest-geo-link", &longest_geo_link},
      {"modularity", &modularity},
      {"most-connected-community", &most_connected_community},
      {"most-external-node", &most_external_node},
      {"node-activity", &node_activity},
      {"node-centrality", &node_centrality},
      {"node-community", &node_community},
      {"node-count", &node_count},
      {"node-degree", &node_degree},
      {"node-in-out", &node_in_out},
      {"node-location", &node_location},
      {"node-mutual-connections", &node_mutual_connections},
      {"node-neighborhood-density", &node_neighborhood_density},
      {"node-neighbors", &node_neighbors},
      {"node-position", &node_position},
      {"node-ranked", &node_ranked},
      {"node-reach", &node_reach},
      {"node-second-neighbors", &node_second_neighbors},
      {"pair-density-comparison", &pair_density_comparison},
      {"pair-distance", &pair_distance},
      {"pair-geo-distance", &pair_geo_distance},
      {"pair-links", &pair_links},
      {"pair-ranking", &pair_ranking},
      {"pair-size-comparison", &pair_size_comparison},
      {"pair-weights", &pair_weights},
      {"parallel-links", &parallel_links},
      {"path-detail", &path_detail},
      {"path-neighborhood", &path_neighborhood},
      {"path-overview", &path_overview},
      {"path-stop", &path_stop},
      {"path-weakest-hop", &path_weakest_hop},
      {"paths-bottleneck", &paths_bottleneck},
      {"paths-lightest", &paths_lightest},
      {"paths-overview", &paths_overview},
      {"paths-shortest", &paths_shortest},
      {"reciprocity", &reciprocity},
      {"self-loops", &self_loops},
      {"slice-density", &slice_density},
      {"subgraph-communities", &subgraph_communities},
      {"subgraph-share", &subgraph_share},
      {"time-span", &time_span},
      {"top-nodes", &top_nodes},
      {"transitivity", &transitivity},
      {"weight-average", &weight_average},
      {"weight-range", &weight_range},
      {"weight-total", &weight_total},
  };
  return bindings;
}

}  // namespace netour
