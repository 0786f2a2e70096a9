#pragma once

// Random action sequences against a session. Roughly a third of the
// generated actions are invalid on purpose so failure handling is covered.

#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "netour/error.hpp"
#include "netour/metrics.hpp"
#include "netour/session.hpp"
#include "support.hpp"

namespace testing {

using nlohmann::json;

inline std::string random_node(std::mt19937_64& rng, const netour::Graph& g) {
  return g.node(static_cast<netour::NodeIndex>(pick(rng, g.node_count()))).id;
}

inline json random_subgraph(std::mt19937_64& rng, const netour::Graph& g, std::vector<std::string>& pool) {
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t n = 1 + pick(rng, 5);
  json nodes = json::array();
  for (std::size_t i = 0; i < n && !pool.empty(); ++i) {
    nodes.push_back(pool.back());
    pool.pop_back();
  }
  (void)g;
  return {{"kind", "subgraph"}, {"nodes", nodes}};
}

inline json random_subject(std::mt19937_64& rng, const netour::Graph& g, netour::SubjectKind kind) {
  using K = netour::SubjectKind;
  std::vector<std::string> pool;
  for (const auto& node : g.nodes()) pool.push_back(node.id);
  switch (kind) {
    case K::None:
      return nullptr;
    case K::Node:
      return {{"kind", "node"}, {"node", random_node(rng, g)}};
    case K::NodePair:
      return {{"kind", "nodePair"}, {"first", random_node(rng, g)}, {"second", random_node(rng, g)}};
    case K::Subgraph:
      return random_subgraph(rng, g, pool);
    case K::SubgraphPair: {
      const json a = random_subgraph(rng, g, pool);
      const json b = random_subgraph(rng, g, pool);
      return {{"kind", "subgraphPair"}, {"first", a}, {"second", b}};
    }
    case K::Path: {
      const std::string from = random_node(rng, g);
      std::string to = random_node(rng, g);
      while (to == from && g.node_count() > 1) to = random_node(rng, g);
      const auto paths = from == to ? std::vector<netour::metrics::PathResult>{}
                                    : netour::metrics::k_shortest_paths(g, from, to, 2);
      json nodes = json::array();
      if (!paths.empty()) {
        for (const auto& id : paths[pick(rng, paths.size())].node_sequence) nodes.push_back(id);
      }
      return {{"kind", "path"}, {"nodes", nodes}};
    }
  }
  return nullptr;
}

inline std::string random_slide_id(std::mt19937_64& rng, const netour::Session& s) {
  if (!s.started() || pick(rng, 8) == 0) return "no.such-slide#1";
  std::vector<std::string> ids;
  for (const auto& sec : s.frame().sections) {
    for (const auto& fs : sec.slides) ids.push_back(fs.slide.id);
  }
  return ids.empty() ? "no.such-slide#1" : ids[pick(rng, ids.size())];
}

inline std::string random_section(std::mt19937_64& rng, const netour::Session& s) {
  if (!s.started() || s.frame().sections.empty() || pick(rng, 8) == 0) return "No such section";
  const auto& secs = s.frame().sections;
  return secs[pick(rng, secs.size())].title;
}

inline json random_edit_ops(std::mt19937_64& rng, const netour::Session& s) {
  const auto& registry = s.corpus().registry();
  const auto facts = registry.all();
  json ops = json::array();
  const std::size_t n = 1 + pick(rng, 3);
  std::vector<std::string> titles;
  if (s.edit_buffer()) {
    for (const auto& sec : s.edit_buffer()->sections) titles.push_back(sec.title);
  } else if (s.started()) {
    for (const auto& sec : s.corpus().catalog().at(s.frame().tour_id).sections) titles.push_back(sec.title);
  }
  const auto title = [&] { return titles.empty() ? std::string("Missing") : titles[pick(rng, titles.size())]; };
  for (std::size_t i = 0; i < n; ++i) {
    switch (pick(rng, 9)) {
      case 0:
        ops.push_back({{"op", "new"}, {"id", "mine-" + std::to_string(pick(rng, 5))}, {"name", "Mine"},
                       {"scope", pick(rng, 2) == 0 ? "overall" : "node"}});
        break;
      case 1:
        ops.push_back({{"op", "rename"}, {"name", "Renamed " + std::to_string(pick(rng, 100))}});
        break;
      case 2: {
        const std::string t = "Section " + std::to_string(pick(rng, 6));
        ops.push_back({{"op", "addSection"}, {"title", t}});
        titles.push_back(t);
        break;
      }
      case 3:
        ops.push_back({{"op", "removeSection"}, {"section", title()}});
        break;
      case 4:
        ops.push_back({{"op", "add"}, {"section", title()}, {"fact", facts[pick(rng, facts.size())]->id}});
        break;
      case 5:
        ops.push_back({{"op", "remove"}, {"section", title()}, {"index", pick(rng, 4)}});
        break;
      case 6:
        ops.push_back({{"op", "move"}, {"section", title()}, {"from", pick(rng, 3)}, {"to", pick(rng, 3)},
                       {"toSection", title()}});
        break;
      case 7:
        ops.push_back({{"op", "moveSection"}, {"section", title()}, {"to", pick(rng, 3)}});
        break;
      default:
        ops.push_back({{"op", "discard"}});
        break;
    }
  }
  return ops;
}

struct Action {
  std::string name;
  json params = json::object();
};

inline Action random_action(std::mt19937_64& rng, const netour::Session& s) {
  const auto& tours = s.corpus().catalog().all();
  const auto& g = s.graph();
  const auto& tour = tours[pick(rng, tours.size())];
  const std::size_t roll = pick(rng, 100);
  if (!s.started() || roll < 6) {
    json params = {{"tourId", tour.id}};
    if (tour.scope != netour::SubjectKind::None || pick(rng, 6) == 0) {
      params["subject"] = random_subject(rng, g, tour.scope);
    }
    if (pick(rng, 2) == 0) params["seed"] = rng() % 1000;
    return {"start", params};
  }
  if (roll < 30) return {"next", json::object()};
  if (roll < 40) return {"prev", json::object()};
  if (roll < 44) return {"skipSection", json::object()};
  if (roll < 50) return {"jumpTo", {{"slideId", random_slide_id(rng, s)}}};
  if (roll < 58) {
    json params = json::object();
    if (pick(rng, 2) == 0) params["slideId"] = random_slide_id(rng, s);
    if (pick(rng, 4) == 0) params["seed"] = rng() % 1000;
    return {"extendSlide", params};
  }
  if (roll < 64) {
    json params = json::object();
    if (pick(rng, 2) == 0) params["section"] = random_section(rng, s);
    return {"extendSection", params};
  }
  if (roll < 72) {
    json params = {{"tourId", tour.id}};
    if (pick(rng, 2) == 0) params["extraSubject"] = random_node(rng, g);
    if (pick(rng, 3) == 0) params["extraSubject"] = random_subject(rng, g, netour::SubjectKind::Subgraph);
    return {"pivot", params};
  }
  if (roll < 78) return {"back", json::object()};
  if (roll < 84) {
    json params = json::object();
    if (pick(rng, 3) == 0) params["slideId"] = random_slide_id(rng, s);
    return {"star", params};
  }
  if (roll < 88) {
    json params = json::object();
    if (!s.starred().empty() && pick(rng, 2) == 0) {
      const auto& st = s.starred()[pick(rng, s.starred().size())];
      params = {{"tourId", st.tour_id}, {"slideId", st.slide.id}};
    }
    return {"unstar", params};
  }
  if (roll < 94) {
    json tags = json::array();
    for (auto t : netour::all_tags()) {
      if (pick(rng, 3) != 0) tags.push_back(std::string(netour::to_string(t)));
    }
    if (pick(rng, 10) == 0) tags.push_back("bogus");
    return {"setTagFilter", {{"tags", tags}}};
  }
  return {"editTour", {{"ops", random_edit_ops(rng, s)}}};
}

struct WalkOutcome {
  std::size_t applied = 0;
  std::size_t rejected = 0;
  std::vector<std::string> untyped;  // failures that were not netour::Error
};

// Applies up to `length` random actions; timestamps count up from 1.
inline WalkOutcome random_walk(std::mt19937_64& rng, netour::Session& s, std::size_t length) {
  WalkOutcome out;
  for (std::size_t i = 0; i < length; ++i) {
    const Action a = random_action(rng, s);
    try {
      s.apply(a.name, a.params, static_cast<std::int64_t>(i + 1));
      ++out.applied;
    } catch (const netour::Error&) {
      ++out.rejected;
    } catch (const std::exception& e) {
      out.untyped.push_back(a.name + " " + a.params.dump() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace testing
