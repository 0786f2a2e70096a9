#include "netour/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "netour/error.hpp"

namespace netour {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string pluralize_word(std::string_view w) {
  std::string s(w);
  if (s.empty()) return s;
  const auto ends = [&](std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2])) {
    s.pop_back();
    return s + "ies";
  }
  if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh")) return s + "es";
  return s + "s";
}

}  // namespace

std::string pluralize(std::string_view noun) {
  // The head of "X of Y" is X.
  if (const auto of = noun.find(" of "); of != std::string_view::npos) {
    return pluralize_word(noun.substr(0, of)) + std::string(noun.substr(of));
  }
  return pluralize_word(noun);
}

Terminology Terminology::from_nouns(std::string node, std::string link, std::string weight,
                                    std::string subgraph, std::string node_plural,
                                    std::string link_plural, std::string weight_plural,
                                    std::string subgraph_plural) {
  const auto make = [](std::string singular, std::string plural) {
    if (plural.empty()) plural = pluralize(singular);
    return Noun{std::move(singular), std::move(plural)};
  };
  Terminology t;
  t.node = make(std::move(node), std::move(node_plural));
  t.link = make(std::move(link), std::move(link_plural));
  t.weight = make(std::move(weight), std::move(weight_plural));
  t.subgraph = make(std::move(subgraph), std::move(subgraph_plural));
  return t;
}

nlohmann::json to_json(const Terminology& t) {
  return {{"nodeNoun", t.node.singular},         {"nodePlural", t.node.plural},
          {"linkNoun", t.link.singular},         {"linkPlural", t.link.plural},
          {"weightNoun", t.weight.singular},     {"weightPlural", t.weight.plural},
          {"subgraphNoun", t.subgraph.singular}, {"subgraphPlural", t.subgraph.plural}};
}

Terminology terminology_from_json(const nlohmann::json& doc, const Terminology& base) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "terminology must be an object");
  const auto read = [&](const char* noun_key, const char* plural_key, const Noun& current) {
    Noun out = current;
    if (doc.contains(noun_key)) {
      if (!doc[noun_key].is_string()) {
        throw Error(ErrorCode::MalformedFile, std::string("terminology.") + noun_key + " must be a string");
      }
      out.singular = doc[noun_key].get<std::string>();
      out.plural = pluralize(out.singular);
    }
    if (doc.contains(plural_key)) {
      if (!doc[plural_key].is_string()) {
        throw Error(ErrorCode::MalformedFile, std::string("terminology.") + plural_key + " must be a string");
      }
      out.plural = doc[plural_key].get<std::string>();
    }
    return out;
  };
  Terminology t;
  t.node = read("nodeNoun", "nodePlural", base.node);
  t.link = read("linkNoun", "linkPlural", base.link);
  t.weight = read("weightNoun", "weightPlural", base.weight);
  t.subgraph = read("subgraphNoun", "subgraphPlural", base.subgraph);
  return t;
}

struct Graph::Data {
  std::vector<Node> nodes;
  std::vector<Link> links;
  bool directed = false;
  Capabilities caps;
  std::unordered_map<std::string, NodeIndex> node_by_id;
  std::unordered_map<std::string, LinkIndex> link_by_id;
  std::vector<NodeIndex> src;
  std::vector<NodeIndex> dst;
  std::vector<std::vector<LinkIndex>> incident;
  std::vector<std::vector<LinkIndex>> out;
  std::vector<std::vector<LinkIndex>> in;
  std::vector<std::vector<NodeIndex>> adjacent;
  std::vector<std::vector<NodeIndex>> succ;
};

Graph::Graph() : Graph({}, {}, false) {}

Graph::Graph(std::vector<Node> nodes, std::vector<Link> links, bool directed, Terminology terminology)
    : terminology_(std::move(terminology)) {
  auto d = std::make_shared<Data>();
  d->directed = directed;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.id.empty()) throw Error(ErrorCode::MalformedFile, "node " + std::to_string(i) + " has an empty id");
    if (n.coord) {
      const bool ok = std::isfinite(n.coord->lat) && std::isfinite(n.coord->lon) &&
                      n.coord->lat >= -90.0 && n.coord->lat <= 90.0 && n.coord->lon >= -180.0 &&
                      n.coord->lon <= 180.0;
      if (!ok) throw Error(ErrorCode::MalformedFile, "node '" + n.id + "' has coordinates out of range");
    }
    if (!d->node_by_id.emplace(n.id, static_cast<NodeIndex>(i)).second) {
      throw Error(ErrorCode::DuplicateNodeId, "duplicate node id '" + n.id + "'");
    }
  }

  std::string dangling;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    if (l.id.empty()) throw Error(ErrorCode::MalformedFile, "link " + std::to_string(i) + " has an empty id");
    if (!d->link_by_id.emplace(l.id, static_cast<LinkIndex>(i)).second) {
      throw Error(ErrorCode::MalformedFile, "duplicate link id '" + l.id + "'");
    }
    const auto s = d->node_by_id.find(l.source);
    const auto t = d->node_by_id.find(l.target);
    if (s == d->node_by_id.end() || t == d->node_by_id.end()) {
      if (!dangling.empty()) dangling += "; ";
      dangling += "link '" + l.id + "' (" + l.source + " -> " + l.target + ")";
      continue;
    }
    if (l.weight) {
      if (!std::isfinite(*l.weight)) {
        throw Error(ErrorCode::MalformedFile, "link '" + l.id + "' has a non-finite weight");
      }
      if (*l.weight < 0.0) throw Error(ErrorCode::NegativeWeight, "link '" + l.id + "' has a negative weight");
    }
    d->src.push_back(s->second);
    d->dst.push_back(t->second);
  }
  if (!dangling.empty()) throw Error(ErrorCode::DanglingEndpoint, "unknown endpoints: " + dangling);

  const std::size_t n = nodes.size();
  d->incident.resize(n);
  d->out.resize(n);
  d->in.resize(n);
  d->adjacent.resize(n);
  d->succ.resize(n);
  for (LinkIndex l = 0; l < links.size(); ++l) {
    const NodeIndex s = d->src[l];
    const NodeIndex t = d->dst[l];
    d->incident[s].push_back(l);
    if (t != s) d->incident[t].push_back(l);
    d->out[s].push_back(l);
    d->in[t].push_back(l);
    if (!directed && t != s) {
      d->out[t].push_back(l);
      d->in[s].push_back(l);
    }
    if (s != t) {
      d->adjacent[s].push_back(t);
      d->adjacent[t].push_back(s);
      d->succ[s].push_back(t);
      if (!directed) d->succ[t].push_back(s);
    }
  }
  for (auto* lists : {&d->adjacent, &d->succ}) {
    for (auto& v : *lists) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  d->caps.weighted = !links.empty() && std::all_of(links.begin(), links.end(), [](const Link& l) {
    return l.weight.has_value();
  });
  d->caps.temporal = !links.empty() && std::all_of(links.begin(), links.end(), [](const Link& l) {
    return l.time.has_value();
  });
  d->caps.geographic = !nodes.empty() && std::all_of(nodes.begin(), nodes.end(), [](const Node& nd) {
    return nd.coord.has_value();
  });

  d->nodes = std::move(nodes);
  d->links = std::move(links);
  data_ = std::move(d);
}

const std::vector<Node>& Graph::nodes() const { return data_->nodes; }
const std::vector<Link>& Graph::links() const { return data_->links; }
bool Graph::directed() const { return data_->directed; }
const Capabilities& Graph::capabilities() const { return data_->caps; }
NodeIndex Graph::source(LinkIndex l) const { return data_->src[l]; }
NodeIndex Graph::target(LinkIndex l) const { return data_->dst[l]; }

std::optional<NodeIndex> Graph::find_node(std::string_view id) const {
  const auto it = data_->node_by_id.find(std::string(id));
  if (it == data_->node_by_id.end()) return std::nullopt;
  return it->second;
}

std::optional<LinkIndex> Graph::find_link(std::string_view id) const {
  const auto it = data_->link_by_id.find(std::string(id));
  if (it == data_->link_by_id.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::node_index(std::string_view id) const {
  if (auto n = find_node(id)) return *n;
  throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
}

std::span<const LinkIndex> Graph::incident_links(NodeIndex n) const { return data_->incident[n]; }
std::span<const LinkIndex> Graph::out_links(NodeIndex n) const { return data_->out[n]; }
std::span<const LinkIndex> Graph::in_links(NodeIndex n) const { return data_->in[n]; }
std::span<const NodeIndex> Graph::neighbors(NodeIndex n) const { return data_->adjacent[n]; }
std::span<const NodeIndex> Graph::successors(NodeIndex n) const { return data_->succ[n]; }

Graph Graph::with_terminology(Terminology t) const {
  Graph copy = *this;
  copy.terminology_ = std::move(t);
  return copy;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.directed() == b.directed() && a.capabilities() == b.capabilities() &&
         a.terminology() == b.terminology() && a.nodes() == b.nodes() && a.links() == b.links();
}

Graph set_terminology(const Graph& g, Terminology t) {
  for (const Noun* noun : {&t.node, &t.link, &t.weight, &t.subgraph}) {
    if (noun->singular.empty() || noun->plural.empty()) {
      throw Error(ErrorCode::EmptyNoun, "terminology nouns must be non-empty");
    }
  }
  return g.with_terminology(std::move(t));
}

SubgraphRef induce_subgraph(const Graph& g, std::span<const std::string> node_ids) {
  std::vector<NodeIndex> nodes;
  nodes.reserve(node_ids.size());
  for (const auto& id : node_ids) nodes.push_back(g.node_index(id));
  return induce_subgraph(g, std::span<const NodeIndex>(nodes));
}

SubgraphRef induce_subgraph(const Graph& g, std::span<const NodeIndex> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::EmptySelection, "subgraph selection is empty");
  std::vector<bool> member(g.node_count(), false);
  for (NodeIndex n : nodes) {
    if (n >= g.node_count()) throw Error(ErrorCode::UnknownNode, "node index out of range");
    member[n] = true;
  }
  SubgraphRef sg;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (member[n]) sg.node_ids.push_back(g.node(n).id);
  }
  for (LinkIndex l = 0; l < g.link_count(); ++l) {
    if (member[g.source(l)] && member[g.target(l)]) sg.link_ids.push_back(g.link(l).id);
  }
  std::sort(sg.node_ids.begin(), sg.node_ids.end());
  std::sort(sg.link_ids.begin(), sg.link_ids.end());
  return sg;
}

std::vector<NodeIndex> node_indices(const Graph& g, const SubgraphRef& sg) {
  std::vector<NodeIndex> out;
  out.reserve(sg.node_ids.size());
  for (const auto& id : sg.node_ids) out.push_back(g.node_index(id));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinkIndex> link_indices(const Graph& g, const SubgraphRef& sg) {
  std::vector<LinkIndex> out;
  out.reserve(sg.link_ids.size());
  for (const auto& id : sg.link_ids) {
    const auto l = g.find_link(id);
    if (!l) throw Error(ErrorCode::SchemaViolation, "unknown link '" + id + "' in subgraph");
    out.push_back(*l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace netour
