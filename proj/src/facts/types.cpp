#include <algorithm>

#include "netour/error.hpp"
#include "netour/facts.hpp"

namespace netour {

using nlohmann::json;

namespace {

constexpr std::array<Tag, kTagCount> kAllTags = {
    Tag::Geography, Tag::Nodes,      Tag::Links, Tag::Weight,   Tag::Outliers,
    Tag::Connectivity, Tag::Statistics, Tag::Density, Tag::Extrema, Tag::Time,
    Tag::Paths,     Tag::Clusters,   Tag::Centrality, Tag::Comparison, Tag::Ranking,
};

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "geography", "nodes", "links", "weight",   "outliers",   "connectivity", "statistics", "density",
    "extrema",   "time",  "paths", "clusters", "centrality", "comparison",   "ranking",
};

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaViolation, msg); }

std::vector<std::string> string_list(const json& doc, const std::string& where) {
  if (!doc.is_array()) schema(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : doc) {
    if (!v.is_string()) schema(where + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::string> node_list(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::SubjectMismatch, std::string("subject is missing '") + key + "'");
  const auto& v = doc[key];
  if (!v.is_array()) throw Error(ErrorCode::SubjectMismatch, std::string("subject '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw Error(ErrorCode::SubjectMismatch, "subject node ids must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::string node_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw Error(ErrorCode::SubjectMismatch, std::string("subject needs a string '") + key + "'");
  }
  return doc[key].get<std::string>();
}

json subgraph_json(const SubgraphRef& sg) { return {{"nodes", sg.node_ids}, {"links", sg.link_ids}}; }

}  // namespace

std::span<const Tag> all_tags() { return kAllTags; }

std::string_view to_string(Tag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

Tag parse_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (kTagNames[i] == name) return kAllTags[i];
  }
  throw Error(ErrorCode::UnknownTag, "unknown tag '" + std::string(name) + "'");
}

TagSet::TagSet(std::initializer_list<Tag> tags) {
  for (Tag t : tags) insert(t);
}

TagSet TagSet::all() {
  TagSet s;
  for (Tag t : kAllTags) s.insert(t);
  return s;
}

TagSet TagSet::parse(std::span<const std::string> names) {
  TagSet s;
  for (const auto& n : names) s.insert(parse_tag(n));
  return s;
}

std::vector<Tag> TagSet::tags() const {
  std::vector<Tag> out;
  for (Tag t : kAllTags) {
    if (contains(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> TagSet::names() const {
  std::vector<std::string> out;
  for (Tag t : tags()) out.emplace_back(to_string(t));
  return out;
}

SubjectKind kind_of(const Subject& s) {
  return std::visit(
      [](const auto& v) -> SubjectKind {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return SubjectKind::None;
        if constexpr (std::is_same_v<T, NodeSubject>) return SubjectKind::Node;
        if constexpr (std::is_same_v<T, SubgraphRef>) return SubjectKind::Subgraph;
        if constexpr (std::is_same_v<T, NodePairSubject>) return SubjectKind::NodePair;
        if constexpr (std::is_same_v<T, SubgraphPairSubject>) return SubjectKind::SubgraphPair;
        if constexpr (std::is_same_v<T, PathSubject>) return SubjectKind::Path;
      },
      s);
}

std::string_view to_string(SubjectKind k) {
  switch (k) {
    case SubjectKind::None: return "none";
    case SubjectKind::Node: return "node";
    case SubjectKind::Subgraph: return "subgraph";
    case SubjectKind::NodePair: return "nodePair";
    case SubjectKind::SubgraphPair: return "subgraphPair";
    case SubjectKind::Path: return "path";
  }
  return "none";
}

SubjectKind parse_subject_kind(std::string_view name) {
  for (SubjectKind k : {SubjectKind::None, SubjectKind::Node, SubjectKind::Subgraph, SubjectKind::NodePair,
                        SubjectKind::SubgraphPair, SubjectKind::Path}) {
    if (to_string(k) == name) return k;
  }
  if (name == "overall") return SubjectKind::None;
  schema("unknown subject kind '" + std::string(name) + "'");
}

FactScope scope_of(SubjectKind k) {
  switch (k) {
    case SubjectKind::None: return FactScope::Overall;
    case SubjectKind::Node: return FactScope::SingleNode;
    default: return FactScope::NodeSet;
  }
}

std::string_view to_string(FactScope s) {
  switch (s) {
    case FactScope::Overall: return "overall";
    case FactScope::NodeSet: return "nodeSet";
    case FactScope::SingleNode: return "singleNode";
  }
  return "overall";
}

json to_json(const Subject& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return {{"kind", "none"}};
        if constexpr (std::is_same_v<T, NodeSubject>) return {{"kind", "node"}, {"node", v.id}};
        if constexpr (std::is_same_v<T, SubgraphRef>) {
          json j = subgraph_json(v);
          j["kind"] = "subgraph";
          return j;
        }
        if constexpr (std::is_same_v<T, NodePairSubject>) {
          return {{"kind", "nodePair"}, {"first", v.first}, {"second", v.second}};
        }
        if constexpr (std::is_same_v<T, SubgraphPairSubject>) {
          return {{"kind", "subgraphPair"}, {"first", subgraph_json(v.first)}, {"second", subgraph_json(v.second)}};
        }
        if constexpr (std::is_same_v<T, PathSubject>) return {{"kind", "path"}, {"nodes", v.nodes}};
      },
      s);
}

Subject subject_from_json(const json& doc, const Graph& g) {
  if (doc.is_null()) return std::monostate{};
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw Error(ErrorCode::SubjectMismatch, "subject must be an object with a 'kind'");
  }
  const std::string kind = doc["kind"].get<std::string>();
  const auto subgraph = [&](const json& d) {
    if (!d.is_object()) throw Error(ErrorCode::SubjectMismatch, "subgraph subject must be an object");
    const auto ids = node_list(d, "nodes");
    return induce_subgraph(g, std::span<const std::string>(ids));
  };
  if (kind == "none") return std::monostate{};
  if (kind == "node") {
    NodeSubject n{node_field(doc, "node")};
    g.node_index(n.id);
    return n;
  }
  if (kind == "subgraph") return subgraph(doc);
  if (kind == "nodePair") {
    NodePairSubject p{node_field(doc, "first"), node_field(doc, "second")};
    g.node_index(p.first);
    g.node_index(p.second);
    return p;
  }
  if (kind == "subgraphPair") {
    if (!doc.contains("first") || !doc.contains("second")) {
      throw Error(ErrorCode::SubjectMismatch, "subgraph pair needs 'first' and 'second'");
    }
    return SubgraphPairSubject{subgraph(doc["first"]), subgraph(doc["second"])};
  }
  if (kind == "path") {
    PathSubject p{node_list(doc, "nodes")};
    for (const auto& id : p.nodes) g.node_index(id);
    return p;
  }
  throw Error(ErrorCode::SubjectMismatch, "unknown subject kind '" + kind + "'");
}

TagSet FactTemplate::tag_set() const {
  TagSet s;
  for (Tag t : tags) s.insert(t);
  return s;
}

FactTemplate fact_from_json(const json& doc) {
  if (!doc.is_object()) schema("fact record must be an object");
  const auto str = [&](const char* key, bool required) -> std::string {
    if (!doc.contains(key)) {
      if (required) schema(std::string("fact record is missing '") + key + "'");
      return {};
    }
    if (!doc[key].is_string()) schema(std::string("fact field '") + key + "' must be a string");
    return doc[key].get<std::string>();
  };

  FactTemplate t;
  t.id = str("id", true);
  const std::string where = "fact '" + t.id + "'";
  t.title = str("title", true);
  t.caption = str("caption", true);
  t.compute = str("compute", true);
  t.subject = parse_subject_kind(doc.contains("subject") ? str("subject", true) : "none");

  if (doc.contains("scope")) {
    const std::string scope = str("scope", true);
    if (scope != to_string(t.scope())) {
      schema(where + ": scope '" + scope + "' does not match subject '" + std::string(to_string(t.subject)) + "'");
    }
  }
  const std::string link_type = doc.contains("linkType") ? str("linkType", true) : "both";
  if (link_type == "directed") {
    t.link_type = LinkType::Directed;
  } else if (link_type == "undirected") {
    t.link_type = LinkType::Undirected;
  } else if (link_type == "both") {
    t.link_type = LinkType::Both;
  } else {
    schema(where + ": linkType must be directed, undirected or both");
  }
  const std::string weight_type = doc.contains("weightType") ? str("weightType", true) : "both";
  if (weight_type == "weighted") {
    t.weight_type = WeightType::Weighted;
  } else if (weight_type == "unweighted") {
    t.weight_type = WeightType::Unweighted;
  } else if (weight_type == "both") {
    t.weight_type = WeightType::Both;
  } else {
    schema(where + ": weightType must be weighted, unweighted or both");
  }
  if (doc.contains("requires")) {
    for (const auto& r : string_list(doc["requires"], where + ".requires")) {
      if (r == "temporal") {
        t.needs.temporal = true;
      } else if (r == "geographic") {
        t.needs.geographic = true;
      } else {
        schema(where + ": unknown requirement '" + r + "'");
      }
    }
  }
  if (!doc.contains("tags")) schema(where + " has no tags");
  for (const auto& name : string_list(doc["tags"], where + ".tags")) t.tags.push_back(parse_tag(name));
  if (doc.contains("captionVariants")) {
    if (!doc["captionVariants"].is_object()) schema(where + ": captionVariants must be an object");
    for (const auto& [k, v] : doc["captionVariants"].items()) {
      if (!v.is_string()) schema(where + ": caption variants must be strings");
      t.caption_variants[k] = v.get<std::string>();
    }
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) schema(where + ": params must be an object");
    t.params = doc["params"];
  }
  if (doc.contains("rankable")) {
    if (!doc["rankable"].is_boolean()) schema(where + ": rankable must be a boolean");
    t.rankable = doc["rankable"].get<bool>();
  }
  if (doc.contains("concepts")) t.concepts = string_list(doc["concepts"], where + ".concepts");
  return t;
}

json to_json(const FactTemplate& t) {
  json needs = json::array();
  if (t.needs.temporal) needs.push_back("temporal");
  if (t.needs.geographic) needs.push_back("geographic");
  json tags = json::array();
  for (Tag tag : t.tags) tags.push_back(to_string(tag));
  const char* link_type = t.link_type == LinkType::Directed     ? "directed"
                          : t.link_type == LinkType::Undirected ? "undirected"
                                                                : "both";
  const char* weight_type = t.weight_type == WeightType::Weighted     ? "weighted"
                            : t.weight_type == WeightType::Unweighted ? "unweighted"
                                                                      : "both";
  json j = {{"id", t.id},
            {"title", t.title},
            {"scope", to_string(t.scope())},
            {"subject", to_string(t.subject)},
            {"linkType", link_type},
            {"weightType", weight_type},
            {"requires", needs},
            {"tags", tags},
            {"caption", t.caption},
            {"compute", t.compute},
            {"params", t.params},
            {"rankable", t.rankable},
            {"concepts", t.concepts}};
  if (!t.caption_variants.empty()) j["captionVariants"] = t.caption_variants;
  return j;
}

json to_json(const Slide& s) {
  json values = json::object();
  for (const auto& [k, v] : s.values) {
    std::visit([&](const auto& x) { values[k] = x; }, v);
  }
  json doc = {{"fact", s.fact_id},
          {"rank", s.rank},
          {"params", s.params},
          {"title", s.title},
          {"caption", s.caption},
          {"highlight", {{"nodes", s.highlight.node_ids}, {"links", s.highlight.link_ids}}},
          {"subject", to_json(s.subject)},
          {"values", values},
          {"starred", s.starred},
          {"concepts", s.concepts}};
  if (!s.id.empty()) doc["id"] = s.id;
  return doc;
}

}  // namespace netour
