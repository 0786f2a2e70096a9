#include <algorithm>
#include <set>

#include "netour/error.hpp"
#include "netour/facts.hpp"

namespace netour {

using nlohmann::json;

Analysis::Analysis(Graph g) : graph_(std::move(g)) {}

const std::vector<metrics::Degree>& Analysis::degrees() const {
  std::call_once(degrees_once_, [this] { degrees_ = metrics::degrees(graph_); });
  return degrees_;
}

const std::vector<double>& Analysis::betweenness() const {
  std::call_once(betweenness_once_, [this] { betweenness_ = metrics::betweenness(graph_); });
  return betweenness_;
}

const std::vector<double>& Analysis::closeness() const {
  std::call_once(closeness_once_, [this] { closeness_ = metrics::closeness(graph_); });
  return closeness_;
}

const metrics::CommunityPartition& Analysis::communities() const {
  std::call_once(communities_once_, [this] { communities_ = metrics::detect_communities(graph_); });
  return communities_;
}

const std::vector<int>& Analysis::components() const {
  std::call_once(components_once_, [this] { components_ = metrics::components(graph_); });
  return components_;
}

const Analysis::DistanceStats& Analysis::distances() const {
  std::call_once(distances_once_, [this] {
    DistanceStats s;
    double sum = 0.0;
    for (NodeIndex v = 0; v < graph_.node_count(); ++v) {
      const auto dist = metrics::hop_distances(graph_, v, true);
      for (NodeIndex u = 0; u < graph_.node_count(); ++u) {
        if (u == v || dist[u] <= 0) continue;
        s.diameter = std::max(s.diameter, dist[u]);
        sum += dist[u];
        ++s.reachable_pairs;
      }
    }
    s.average = s.reachable_pairs ? sum / static_cast<double>(s.reachable_pairs) : 0.0;
    distances_ = s;
  });
  return distances_;
}

void FactRegistry::register_fact(FactTemplate t) {
  const std::string where = "fact '" + t.id + "'";
  if (t.id.empty()) throw Error(ErrorCode::SchemaViolation, "fact id must be non-empty");
  if (facts_.count(t.id)) throw Error(ErrorCode::DuplicateFactId, "duplicate fact id '" + t.id + "'");
  if (t.tags.empty() || t.tags.size() > 4) {
    throw Error(ErrorCode::SchemaViolation, where + " must carry 1 to 4 tags");
  }
  if (std::set<Tag>(t.tags.begin(), t.tags.end()).size() != t.tags.size()) {
    throw Error(ErrorCode::SchemaViolation, where + " repeats a tag");
  }
  if (!compute_bindings().count(t.compute)) {
    throw Error(ErrorCode::SchemaViolation, where + " binds unknown computation '" + t.compute + "'");
  }
  if (t.title.empty() || t.caption.empty()) {
    throw Error(ErrorCode::SchemaViolation, where + " needs a title and a caption");
  }
  facts_.emplace(t.id, std::move(t));
}

void FactRegistry::register_manifest(const json& manifest) {
  if (!manifest.is_array()) throw Error(ErrorCode::SchemaViolation, "fact manifest must be a JSON array");
  for (const auto& record : manifest) register_fact(fact_from_json(record));
}

const FactTemplate* FactRegistry::find(std::string_view id) const {
  const auto it = facts_.find(id);
  return it == facts_.end() ? nullptr : &it->second;
}

const FactTemplate& FactRegistry::at(std::string_view id) const {
  if (const auto* t = find(id)) return *t;
  throw Error(ErrorCode::UnknownFactId, "unknown fact '" + std::string(id) + "'");
}

std::vector<const FactTemplate*> FactRegistry::all() const {
  std::vector<const FactTemplate*> out;
  out.reserve(facts_.size());
  for (const auto& [id, t] : facts_) out.push_back(&t);
  return out;
}

const FactRegistry& FactRegistry::builtin() {
  static const FactRegistry registry = [] {
    FactRegistry r;
    r.register_manifest(builtin_fact_manifest());
    return r;
  }();
  return registry;
}

bool applicable(const FactTemplate& t, const Graph& g) {
  const auto& caps = g.capabilities();
  if (t.link_type == LinkType::Directed && !g.directed()) return false;
  if (t.link_type == LinkType::Undirected && g.directed()) return false;
  if (t.weight_type == WeightType::Weighted && !caps.weighted) return false;
  if (t.weight_type == WeightType::Unweighted && caps.weighted) return false;
  if (t.needs.temporal && !caps.temporal) return false;
  if (t.needs.geographic && !caps.geographic) return false;
  return true;
}

namespace {

void tidy(std::vector<std::string>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

Slide evaluate(const FactTemplate& t, const Analysis& analysis, const Subject& subject, int rank,
               const json& params) {
  const Graph& g = analysis.graph();
  if (!applicable(t, g)) {
    throw Error(ErrorCode::NotApplicable, "fact '" + t.id + "' does not apply to this network");
  }
  if (kind_of(subject) != t.subject) {
    throw Error(ErrorCode::SubjectMismatch, "fact '" + t.id + "' expects a " + std::string(to_string(t.subject)) +
                                                " subject, got " + std::string(to_string(kind_of(subject))));
  }
  if (rank < 1 || (!t.rankable && rank != 1)) {
    throw Error(ErrorCode::RankOutOfRange, "fact '" + t.id + "' has no rank " + std::to_string(rank));
  }

  json merged = t.params;
  if (params.is_object()) {
    for (const auto& [k, v] : params.items()) merged[k] = v;
  }
  const FactContext ctx{analysis, subject, rank, merged};
  FactOutcome outcome = compute_bindings().find(t.compute)->second(ctx);

  outcome.values["rank"] = static_cast<std::int64_t>(rank);
  outcome.values["rankOrdinal"] = ordinal(rank);
  outcome.values["rankPrefix"] = rank == 1 ? std::string() : ordinal(rank) + " ";

  const std::string* caption = &t.caption;
  if (!outcome.variant.empty()) {
    const auto it = t.caption_variants.find(outcome.variant);
    if (it == t.caption_variants.end()) {
      throw Error(ErrorCode::SchemaViolation, "fact '" + t.id + "' has no caption variant '" + outcome.variant + "'");
    }
    caption = &it->second;
  }

  Slide s;
  s.fact_id = t.id;
  s.rank = rank;
  s.params = params.is_object() ? params : json::object();
  s.title = render_text(t.title, outcome.values, g.terminology());
  s.caption = render_text(*caption, outcome.values, g.terminology());
  s.highlight = std::move(outcome.highlight);
  tidy(s.highlight.node_ids);
  tidy(s.highlight.link_ids);
  s.subject = outcome.subject ? std::move(*outcome.subject) : subject;
  s.evaluated_on = subject;
  s.values = std::move(outcome.values);
  s.concepts = t.concepts;
  return s;
}

Slide evaluate(const FactTemplate& t, const Graph& g, const Subject& subject, int rank) {
  const Analysis analysis(g);
  return evaluate(t, analysis, subject, rank);
}

std::vector<const FactTemplate*> facts_by_tags(const FactRegistry& registry, const TagSet& tags, const Graph& g) {
  std::vector<const FactTemplate*> out;
  for (const auto* t : registry.all()) {
    if (applicable(*t, g) && t->tag_set().intersects(tags)) out.push_back(t);
  }
  return out;
}

}  // namespace netour
