#include <algorithm>
#include <set>

#include "data/embedded.hpp"
#include "netour/error.hpp"
#include "netour/tours.hpp"

namespace netour {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + msg);
}

void only_keys(const json& doc, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema(path, "unexpected field '" + key + "'");
    }
  }
}

std::string string_field(const json& doc, const char* key, const std::string& path, bool required = true) {
  if (!doc.contains(key)) {
    if (required) schema(path, std::string("missing '") + key + "'");
    return {};
  }
  if (!doc[key].is_string()) schema(path + "." + key, "must be a string");
  return doc[key].get<std::string>();
}

}  // namespace

TourSlideSpec parse_slide_spec(const json& doc, SubjectKind scope, const FactRegistry& registry,
                              const std::string& path) {
  if (!doc.is_object()) schema(path, "must be an object");
  only_keys(doc, {"fact", "rank", "params", "role"}, path);
  TourSlideSpec spec;
  spec.fact = string_field(doc, "fact", path);
  const FactTemplate* fact = registry.find(spec.fact);
  if (!fact) throw Error(ErrorCode::UnknownFactId, path + ".fact: unknown fact '" + spec.fact + "'");
  if (doc.contains("rank")) {
    if (!doc["rank"].is_number_integer() || doc["rank"].get<int>() < 1) {
      schema(path + ".rank", "must be a positive integer");
    }
    spec.rank = doc["rank"].get<int>();
    if (!fact->rankable && *spec.rank != 1) schema(path + ".rank", "fact '" + spec.fact + "' is not rankable");
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) schema(path + ".params", "must be an object");
    spec.params = doc["params"];
  }
  spec.role = string_field(doc, "role", path, false);
  SubjectKind kind;
  try {
    kind = projected_kind(scope, spec.role);
  } catch (const Error& e) {
    throw Error(e.code(), path + ".role: " + e.what());
  }
  if (fact->subject != SubjectKind::None && fact->subject != kind) {
    throw Error(ErrorCode::ScopeMismatch, path + ": fact '" + spec.fact + "' is about a " +
                                              std::string(to_string(fact->subject)) + ", not a " +
                                              std::string(to_string(kind)));
  }
  return spec;
}

std::string_view scope_name(SubjectKind k) { return k == SubjectKind::None ? "overall" : to_string(k); }

std::size_t TourTemplate::fact_count() const {
  std::size_t n = 0;
  for (const auto& s : sections) n += s.slides.size();
  return n;
}

const TourSection* TourTemplate::find_section(std::string_view title) const {
  for (const auto& s : sections) {
    if (s.title == title) return &s;
  }
  return nullptr;
}

SubjectKind projected_kind(SubjectKind scope, std::string_view role) {
  if (role.empty()) return scope;
  const auto bad = [&]() -> SubjectKind {
    throw Error(ErrorCode::ScopeMismatch,
                "role '" + std::string(role) + "' is not available in " + std::string(scope_name(scope)) + " tours");
  };
  switch (scope) {
    case SubjectKind::NodePair:
      return role == "first" || role == "second" ? SubjectKind::Node : bad();
    case SubjectKind::SubgraphPair:
      return role == "first" || role == "second" ? SubjectKind::Subgraph : bad();
    case SubjectKind::Path:
      return role == "first" || role == "last" ? SubjectKind::Node : bad();
    default:
      return bad();
  }
}

Subject project_subject(const Subject& s, std::string_view role) {
  if (role.empty()) return s;
  if (const auto* p = std::get_if<NodePairSubject>(&s)) return NodeSubject{role == "first" ? p->first : p->second};
  if (const auto* p = std::get_if<SubgraphPairSubject>(&s)) return role == "first" ? p->first : p->second;
  if (const auto* p = std::get_if<PathSubject>(&s)) {
    if (p->nodes.empty()) throw Error(ErrorCode::SubjectMissing, "the path is empty");
    return NodeSubject{role == "first" ? p->nodes.front() : p->nodes.back()};
  }
  throw Error(ErrorCode::ScopeMismatch, "role '" + std::string(role) + "' needs a composite subject");
}

Subject fact_subject(const FactTemplate& fact, const Subject& tour_subject, std::string_view role) {
  if (fact.subject == SubjectKind::None) return std::monostate{};
  return project_subject(tour_subject, role);
}

TourTemplate parse_tour_template(const json& doc, const FactRegistry& registry) {
  if (!doc.is_object()) schema("$", "tour must be an object");
  only_keys(doc, {"id", "name", "description", "scope", "sections"}, "$");
  TourTemplate t;
  t.id = string_field(doc, "id", "$");
  if (t.id.empty()) schema("$.id", "must be non-empty");
  t.name = string_field(doc, "name", "$");
  if (t.name.empty()) schema("$.name", "must be non-empty");
  t.description = string_field(doc, "description", "$", false);
  const std::string scope = string_field(doc, "scope", "$");
  if (scope == "none") schema("$.scope", "unknown scope 'none'");
  try {
    t.scope = parse_subject_kind(scope);
  } catch (const Error&) {
    schema("$.scope", "unknown scope '" + scope + "'");
  }

  if (!doc.contains("sections") || !doc["sections"].is_array() || doc["sections"].empty()) {
    schema("$.sections", "must be a non-empty array");
  }
  std::set<std::string> titles;
  for (std::size_t i = 0; i < doc["sections"].size(); ++i) {
    const std::string path = "$.sections[" + std::to_string(i) + "]";
    const json& sec = doc["sections"][i];
    if (!sec.is_object()) schema(path, "must be an object");
    only_keys(sec, {"title", "slides"}, path);
    TourSection section;
    section.title = string_field(sec, "title", path);
    if (section.title.empty()) schema(path + ".title", "must be non-empty");
    if (!titles.insert(section.title).second) schema(path + ".title", "duplicate section '" + section.title + "'");
    if (!sec.contains("slides") || !sec["slides"].is_array() || sec["slides"].empty()) {
      schema(path + ".slides", "must be a non-empty array");
    }
    for (std::size_t j = 0; j < sec["slides"].size(); ++j) {
      section.slides.push_back(
          parse_slide_spec(sec["slides"][j], t.scope, registry, path + ".slides[" + std::to_string(j) + "]"));
    }
    t.sections.push_back(std::move(section));
  }
  return t;
}

TourTemplate parse_tour_template(std::string_view text, const FactRegistry& registry) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("$", std::string("not valid JSON (") + e.what() + ")");
  }
  return parse_tour_template(doc, registry);
}

json to_json(const TourTemplate& t) {
  json sections = json::array();
  for (const auto& s : t.sections) {
    json slides = json::array();
    for (const auto& spec : s.slides) {
      json slide = {{"fact", spec.fact}};
      if (spec.rank) slide["rank"] = *spec.rank;
      if (!spec.params.empty()) slide["params"] = spec.params;
      if (!spec.role.empty()) slide["role"] = spec.role;
      slides.push_back(std::move(slide));
    }
    sections.push_back({{"title", s.title}, {"slides", std::move(slides)}});
  }
  return {{"id", t.id},
          {"name", t.name},
          {"description", t.description},
          {"scope", scope_name(t.scope)},
          {"sections", std::move(sections)}};
}

std::string export_tour(const TourTemplate& t) { return to_json(t).dump(2) + "\n"; }

TourTemplate import_tour(std::string_view text, const FactRegistry& registry) {
  return parse_tour_template(text, registry);
}

const std::vector<TourTemplate>& builtin_tours() {
  static const std::vector<TourTemplate> tours = [] {
    std::vector<TourTemplate> out;
    for (std::string_view text : embedded::tour_jsons()) {
      out.push_back(parse_tour_template(text, FactRegistry::builtin()));
    }
    return out;
  }();
  return tours;
}

TourCatalog::TourCatalog(const FactRegistry& registry) : registry_(&registry) {}

TourCatalog TourCatalog::with_builtins(const FactRegistry& registry) {
  TourCatalog c(registry);
  if (&registry == &FactRegistry::builtin()) {
    for (const auto& t : builtin_tours()) c.add(t);
  } else {
    for (std::string_view text : embedded::tour_jsons()) c.add(parse_tour_template(text, registry));
  }
  return c;
}

void TourCatalog::add(TourTemplate t) {
  if (find(t.id)) throw Error(ErrorCode::SchemaViolation, "a tour with id '" + t.id + "' already exists");
  tours_.push_back(std::move(t));
}

const TourTemplate* TourCatalog::find(std::string_view id) const {
  for (const auto& t : tours_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const TourTemplate& TourCatalog::at(std::string_view id) const {
  if (const auto* t = find(id)) return *t;
  throw Error(ErrorCode::UnknownTour, "unknown tour '" + std::string(id) + "'");
}

}  // namespace netour
