#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "netour/facts.hpp"
#include "netour/graph.hpp"

namespace netour {

// One slide slot of a template section.
struct TourSlideSpec {
  std::string fact;
  std::optional<int> rank;
  nlohmann::json params = nlohmann::json::object();
  // Which part of a composite tour subject the fact looks at: "first" or
  // "second" for pair tours, "first" or "last" for path tours.
  std::string role;

  int effective_rank() const { return rank.value_or(1); }
  friend bool operator==(const TourSlideSpec&, const TourSlideSpec&) = default;
};

struct TourSection {
  std::string title;
  std::vector<TourSlideSpec> slides;
  friend bool operator==(const TourSection&, const TourSection&) = default;
};

struct TourTemplate {
  std::string id;
  std::string name;
  std::string description;
  SubjectKind scope = SubjectKind::None;
  std::vector<TourSection> sections;

  std::size_t fact_count() const;
  const TourSection* find_section(std::string_view title) const;
  friend bool operator==(const TourTemplate&, const TourTemplate&) = default;
};

// "overall" for SubjectKind::None, otherwise the subject kind name.
std::string_view scope_name(SubjectKind k);

// Throws SchemaViolation (message carries the JSON path), UnknownFactId,
// ScopeMismatch.
TourTemplate parse_tour_template(const nlohmann::json& doc, const FactRegistry& registry);
TourTemplate parse_tour_template(std::string_view text, const FactRegistry& registry);
// One slide object of a template; `path` prefixes error messages.
TourSlideSpec parse_slide_spec(const nlohmann::json& doc, SubjectKind scope, const FactRegistry& registry,
                               const std::string& path = "$");
nlohmann::json to_json(const TourTemplate& t);
std::string export_tour(const TourTemplate& t);
TourTemplate import_tour(std::string_view text, const FactRegistry& registry);

// Subject kind a slide spec evaluates on inside a tour of the given scope.
// Throws ScopeMismatch for roles the scope does not offer.
SubjectKind projected_kind(SubjectKind tour_scope, std::string_view role);
// The part of a tour subject named by `role`.
Subject project_subject(const Subject& tour_subject, std::string_view role);
// What `fact` is evaluated on inside a tour: the whole network for overall
// facts, otherwise the projected tour subject.
Subject fact_subject(const FactTemplate& fact, const Subject& tour_subject, std::string_view role);

struct SkippedFact {
  std::string fact_id;
  int rank = 1;
  std::string section;
  std::string reason;  // error code name
  std::string message;
};

struct InstanceSection {
  std::string title;
  std::vector<Slide> slides;
};

struct TourInstance {
  std::string tour_id;
  std::string tour_name;
  SubjectKind scope = SubjectKind::None;
  Subject subject;
  std::vector<InstanceSection> sections;  // empty sections dropped
  std::vector<SkippedFact> skipped;
  std::vector<std::string> dropped_sections;

  std::size_t slide_count() const;
};

// Checks that `subject` fits the scope and refers to the graph. Throws
// SubjectMissing, SubjectMismatch, UnknownNode, SameNode, EmptySelection,
// OverlappingSubgraphs, DisconnectedPath.
void validate_tour_subject(SubjectKind scope, const Subject& subject, const Graph& g);

TourInstance instantiate(const TourTemplate& t, const Analysis& analysis, const Subject& subject,
                         const FactRegistry& registry = FactRegistry::builtin());

nlohmann::json to_json(const TourInstance& instance);

// The ten bundled tours in presentation order.
const std::vector<TourTemplate>& builtin_tours();

// Tours known to a service or CLI run: the bundled ones plus user templates.
class TourCatalog {
 public:
  explicit TourCatalog(const FactRegistry& registry = FactRegistry::builtin());
  static TourCatalog with_builtins(const FactRegistry& registry = FactRegistry::builtin());

  // Throws SchemaViolation on an id clash.
  void add(TourTemplate t);
  const TourTemplate* find(std::string_view id) const;
  const TourTemplate& at(std::string_view id) const;  // throws UnknownTour
  const std::vector<TourTemplate>& all() const { return tours_; }
  const FactRegistry& registry() const { return *registry_; }

 private:
  const FactRegistry* registry_;
  std::vector<TourTemplate> tours_;
};

// ---- static rendering ----------------------------------------------------------

std::string render_markdown(const TourInstance& instance, const Graph& g);
std::string render_html(const TourInstance& instance, const Graph& g);

}  // namespace netour
