#include <algorithm>
#include <set>

#include "netour/error.hpp"
#include "netour/tours.hpp"

namespace netour {

using nlohmann::json;

namespace {

void check_subgraph(const SubgraphRef& sg, const Graph& g) {
  if (sg.node_ids.empty()) throw Error(ErrorCode::EmptySelection, "the selected subgraph is empty");
  for (const auto& id : sg.node_ids) g.node_index(id);
}

bool linked_either_way(const Graph& g, NodeIndex a, NodeIndex b) {
  return metrics::cheapest_link(g, a, b).has_value() || metrics::cheapest_link(g, b, a).has_value();
}

std::string capability_gap(const FactTemplate& t, const Graph& g) {
  const auto& caps = g.capabilities();
  const auto& terms = g.terminology();
  if (t.link_type == LinkType::Directed && !g.directed()) return "needs directed " + terms.link.plural;
  if (t.link_type == LinkType::Undirected && g.directed()) return "needs undirected " + terms.link.plural;
  if (t.weight_type == WeightType::Weighted && !caps.weighted) return "needs weighted " + terms.link.plural;
  if (t.weight_type == WeightType::Unweighted && caps.weighted) return "needs unweighted " + terms.link.plural;
  if (t.needs.temporal && !caps.temporal) return "needs timestamps on every " + terms.link.singular;
  if (t.needs.geographic && !caps.geographic) return "needs coordinates on every " + terms.node.singular;
  return "not applicable";
}

}  // namespace

void validate_tour_subject(SubjectKind scope, const Subject& subject, const Graph& g) {
  const SubjectKind given = kind_of(subject);
  if (scope != SubjectKind::None && given == SubjectKind::None) {
    throw Error(ErrorCode::SubjectMissing, std::string(scope_name(scope)) + " tours need a " +
                                               std::string(to_string(scope)) + " subject");
  }
  if (given != scope) {
    throw Error(ErrorCode::SubjectMismatch, std::string(scope_name(scope)) + " tours cannot take a " +
                                                std::string(to_string(given)) + " subject");
  }
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NodeSubject>) {
          g.node_index(s.id);
        } else if constexpr (std::is_same_v<T, SubgraphRef>) {
          check_subgraph(s, g);
        } else if constexpr (std::is_same_v<T, NodePairSubject>) {
          g.node_index(s.first);
          g.node_index(s.second);
          if (s.first == s.second) throw Error(ErrorCode::SameNode, "both selected nodes are '" + s.first + "'");
        } else if constexpr (std::is_same_v<T, SubgraphPairSubject>) {
          check_subgraph(s.first, g);
          check_subgraph(s.second, g);
          std::vector<std::string> shared;
          std::set_intersection(s.first.node_ids.begin(), s.first.node_ids.end(), s.second.node_ids.begin(),
                                s.second.node_ids.end(), std::back_inserter(shared));
          if (!shared.empty()) {
            throw Error(ErrorCode::OverlappingSubgraphs, "the two selections share '" + shared.front() + "'");
          }
        } else if constexpr (std::is_same_v<T, PathSubject>) {
          if (s.nodes.size() < 2) throw Error(ErrorCode::SubjectMismatch, "a path needs at least two nodes");
          std::set<std::string> seen;
          for (const auto& id : s.nodes) {
            g.node_index(id);
            if (!seen.insert(id).second) {
              throw Error(ErrorCode::SubjectMismatch, "the path visits '" + id + "' twice");
            }
          }
          for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
            if (!linked_either_way(g, g.node_index(s.nodes[i]), g.node_index(s.nodes[i + 1]))) {
              throw Error(ErrorCode::DisconnectedPath,
                          "no " + g.terminology().link.singular + " joins '" + s.nodes[i] + "' and '" +
                              s.nodes[i + 1] + "'");
            }
          }
        }
      },
      subject);
}

std::size_t TourInstance::slide_count() const {
  std::size_t n = 0;
  for (const auto& s : sections) n += s.slides.size();
  return n;
}

TourInstance instantiate(const TourTemplate& t, const Analysis& analysis, const Subject& subject,
                         const FactRegistry& registry) {
  const Graph& g = analysis.graph();
  validate_tour_subject(t.scope, subject, g);

  TourInstance inst;
  inst.tour_id = t.id;
  inst.tour_name = t.name;
  inst.scope = t.scope;
  inst.subject = subject;
  std::set<std::string> ids;

  for (const auto& section : t.sections) {
    InstanceSection out{section.title, {}};
    for (const auto& spec : section.slides) {
      const FactTemplate& fact = registry.at(spec.fact);
      const int rank = spec.effective_rank();
      if (!applicable(fact, g)) {
        inst.skipped.push_back({spec.fact, rank, section.title, std::string(to_string(ErrorCode::NotApplicable)),
                                capability_gap(fact, g)});
        continue;
      }
      try {
        Slide slide = evaluate(fact, analysis, fact_subject(fact, subject, spec.role), rank, spec.params);
        std::string id = spec.fact + "#" + std::to_string(rank);
        if (!spec.role.empty()) id += "@" + spec.role;
        if (ids.count(id)) {
          int n = 2;
          while (ids.count(id + "~" + std::to_string(n))) ++n;
          id += "~" + std::to_string(n);
        }
        ids.insert(id);
        slide.id = std::move(id);
        out.slides.push_back(std::move(slide));
      } catch (const Error& e) {
        inst.skipped.push_back({spec.fact, rank, section.title, std::string(to_string(e.code())), e.what()});
      }
    }
    if (out.slides.empty()) {
      inst.dropped_sections.push_back(section.title);
    } else {
      inst.sections.push_back(std::move(out));
    }
  }
  return inst;
}

json to_json(const TourInstance& inst) {
  json slides = json::array();
  json sections = json::array();
  for (const auto& section : inst.sections) {
    json ids = json::array();
    for (const auto& slide : section.slides) {
      json doc = to_json(slide);
      doc["section"] = section.title;
      slides.push_back(std::move(doc));
      ids.push_back(slide.id);
    }
    sections.push_back({{"title", section.title}, {"slides", std::move(ids)}});
  }
  json skipped = json::array();
  for (const auto& s : inst.skipped) {
    skipped.push_back(
        {{"fact", s.fact_id}, {"rank", s.rank}, {"section", s.section}, {"reason", s.reason}, {"message", s.message}});
  }
  return {{"tour", {{"id", inst.tour_id}, {"name", inst.tour_name}, {"scope", scope_name(inst.scope)}}},
          {"subject", to_json(inst.subject)},
          {"sections", std::move(sections)},
          {"slides", std::move(slides)},
          {"skipped", std::move(skipped)},
          {"droppedSections", inst.dropped_sections}};
}

}  // namespace netour
