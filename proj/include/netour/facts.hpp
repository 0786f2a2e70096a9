#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "netour/graph.hpp"
#include "netour/metrics.hpp"

namespace netour {

// ---- tags ----------------------------------------------------------------

enum class Tag : std::uint8_t {
  Geography,
  Nodes,
  Links,
  Weight,
  Outliers,
  Connectivity,
  Statistics,
  Density,
  Extrema,
  Time,
  Paths,
  Clusters,
  Centrality,
  Comparison,
  Ranking,
};

inline constexpr std::size_t kTagCount = 15;

std::span<const Tag> all_tags();
std::string_view to_string(Tag tag);
// Throws UnknownTag.
Tag parse_tag(std::string_view name);

class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<Tag> tags);
  static TagSet all();
  static TagSet parse(std::span<const std::string> names);  // throws UnknownTag

  void insert(Tag t) { bits_ |= bit(t); }
  void erase(Tag t) { bits_ &= static_cast<std::uint16_t>(~bit(t)); }
  bool contains(Tag t) const { return (bits_ & bit(t)) != 0; }
  bool intersects(const TagSet& o) const { return (bits_ & o.bits_) != 0; }
  bool empty() const { return bits_ == 0; }
  bool full() const { return *this == all(); }
  std::vector<Tag> tags() const;
  std::vector<std::string> names() const;

  friend bool operator==(const TagSet&, const TagSet&) = default;

 private:
  static std::uint16_t bit(Tag t) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(t)); }
  std::uint16_t bits_ = 0;
};

// ---- subjects ------------------------------------------------------------

enum class FactScope { Overall, NodeSet, SingleNode };
enum class LinkType { Directed, Undirected, Both };
enum class WeightType { Weighted, Unweighted, Both };

// What a fact (or a tour) is about.
enum class SubjectKind { None, Node, Subgraph, NodePair, SubgraphPair, Path };

struct NodeSubject {
  std::string id;
  friend bool operator==(const NodeSubject&, const NodeSubject&) = default;
};

struct NodePairSubject {
  std::string first;
  std::string second;
  friend bool operator==(const NodePairSubject&, const NodePairSubject&) = default;
};

struct SubgraphPairSubject {
  SubgraphRef first;
  SubgraphRef second;
  friend bool operator==(const SubgraphPairSubject&, const SubgraphPairSubject&) = default;
};

// Ordered node sequence; consecutive nodes must be linked.
struct PathSubject {
  std::vector<std::string> nodes;
  friend bool operator==(const PathSubject&, const PathSubject&) = default;
};

using Subject =
    std::variant<std::monostate, NodeSubject, SubgraphRef, NodePairSubject, SubgraphPairSubject, PathSubject>;

SubjectKind kind_of(const Subject& s);
std::string_view to_string(SubjectKind k);
SubjectKind parse_subject_kind(std::string_view name);  // throws SchemaViolation
FactScope scope_of(SubjectKind k);
std::string_view to_string(FactScope s);

nlohmann::json to_json(const Subject& s);
// {"kind": "node", "node": "A"} and friends. Subgraph links are re-induced
// from the graph. Throws SubjectMismatch on malformed documents, UnknownNode.
Subject subject_from_json(const nlohmann::json& doc, const Graph& g);

// ---- templates and slides --------------------------------------------------

struct Requirements {
  bool temporal = false;
  bool geographic = false;
  friend bool operator==(const Requirements&, const Requirements&) = default;
};

struct FactTemplate {
  std::string id;
  std::string title;
  SubjectKind subject = SubjectKind::None;
  LinkType link_type = LinkType::Both;
  WeightType weight_type = WeightType::Both;
  Requirements needs;
  std::vector<Tag> tags;
  std::string caption;
  // Alternative captions selected by the compute binding (e.g. "none").
  std::map<std::string, std::string> caption_variants;
  std::string compute;
  nlohmann::json params = nlohmann::json::object();
  bool rankable = false;
  std::vector<std::string> concepts;

  FactScope scope() const { return scope_of(subject); }
  TagSet tag_set() const;
};

FactTemplate fact_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FactTemplate& t);

using FactValue = std::variant<std::int64_t, double, std::string>;

struct Highlight {
  std::vector<std::string> node_ids;
  std::vector<std::string> link_ids;
  friend bool operator==(const Highlight&, const Highlight&) = default;
};

struct Slide {
  // Unique within a tour instance ("overall.strongest-link#2"); empty for
  // slides evaluated outside a tour.
  std::string id;
  std::string fact_id;
  int rank = 1;
  nlohmann::json params = nlohmann::json::object();
  std::string title;
  std::string caption;
  Highlight highlight;
  Subject subject;
  // Subject the fact was evaluated on (may differ from `subject`).
  Subject evaluated_on;
  std::map<std::string, FactValue> values;
  bool starred = false;
  std::vector<std::string> concepts;
};

nlohmann::json to_json(const Slide& s);

// ---- analysis cache ----------------------------------------------------------

// Expensive per-graph results, computed once on first use. Safe to share
// between threads.
class Analysis {
 public:
  explicit Analysis(Graph g);
  Analysis(const Analysis&) = delete;
  Analysis& operator=(const Analysis&) = delete;

  const Graph& graph() const { return graph_; }
  const std::vector<metrics::Degree>& degrees() const;
  const std::vector<double>& betweenness() const;
  const std::vector<double>& closeness() const;
  const metrics::CommunityPartition& communities() const;
  const std::vector<int>& components() const;

  struct DistanceStats {
    int diameter = 0;
    double average = 0.0;
    std::size_t reachable_pairs = 0;
  };
  const DistanceStats& distances() const;

 private:
  Graph graph_;
  mutable std::once_flag degrees_once_, betweenness_once_, closeness_once_, communities_once_,
      components_once_, distances_once_;
  mutable std::vector<metrics::Degree> degrees_;
  mutable std::vector<double> betweenness_;
  mutable std::vector<double> closeness_;
  mutable metrics::CommunityPartition communities_;
  mutable std::vector<int> components_;
  mutable DistanceStats distances_;
};

// ---- compute bindings --------------------------------------------------------

struct FactContext {
  const Analysis& analysis;
  const Subject& subject;
  int rank = 1;
  const nlohmann::json& params;

  const Graph& graph() const { return analysis.graph(); }
};

struct FactOutcome {
  std::map<std::string, FactValue> values;
  Highlight highlight;
  // Subject the slide discusses (drives pivot suggestions); defaults to the
  // evaluated subject when left empty.
  std::optional<Subject> subject;
  std::string variant;  // empty selects the default caption
};

using ComputeFn = FactOutcome (*)(const FactContext&);

// Named compute operations available to fact manifests.
const std::map<std::string, ComputeFn, std::less<>>& compute_bindings();

// ---- registry ------------------------------------------------------------------

class FactRegistry {
 public:
  // Throws DuplicateFactId, SchemaViolation (unknown compute binding, bad
  // tag count, inconsistent metadata).
  void register_fact(FactTemplate t);
  // Registers every record of a manifest (JSON array). Throws as
  // register_fact, plus UnknownTag.
  void register_manifest(const nlohmann::json& manifest);

  const FactTemplate* find(std::string_view id) const;
  const FactTemplate& at(std::string_view id) const;  // throws UnknownFactId
  // Ordered by id.
  std::vector<const FactTemplate*> all() const;
  std::size_t size() const { return facts_.size(); }

  // Registry with the bundled manifest loaded.
  static const FactRegistry& builtin();

 private:
  std::map<std::string, FactTemplate, std::less<>> facts_;
};

// Bundled data files.
const nlohmann::json& builtin_fact_manifest();
const nlohmann::json& builtin_concepts();

bool applicable(const FactTemplate& t, const Graph& g);

// Throws NotApplicable, SubjectMismatch, RankOutOfRange and metric errors
// (DegenerateGraph, NoPath, ...). Never returns a partial slide.
Slide evaluate(const FactTemplate& t, const Analysis& analysis, const Subject& subject, int rank = 1,
               const nlohmann::json& params = nlohmann::json::object());
Slide evaluate(const FactTemplate& t, const Graph& g, const Subject& subject, int rank = 1);

// Applicable facts sharing at least one tag, ordered by id.
std::vector<const FactTemplate*> facts_by_tags(const FactRegistry& registry, const TagSet& tags, const Graph& g);

// ---- text ------------------------------------------------------------------------

// "11,216"
std::string format_count(std::int64_t n);
// Three significant digits, trailing zeros dropped; integral values print
// as counts.
std::string format_real(double x);
std::string format_value(const FactValue& v);
// "1st", "2nd", "3rd", "11th"
std::string ordinal(std::int64_t n);
// "A", "A and B", "A, B and C"
std::string join_names(std::span<const std::string> names);

// Substitutes {key}, terminology nouns ({nodeNoun}, {nodeNouns},
// {nodeNoun:key} for count agreement, capitalized {NodeNoun}) and plural
// choices ({#key|one|many}). Throws SchemaViolation on unknown placeholders.
std::string render_text(std::string_view text, const std::map<std::string, FactValue>& values,
                        const Terminology& terms);

}  // namespace netour
