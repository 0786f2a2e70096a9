#include <random>

#include "doctest.h"
#include "expectations.hpp"
#include "netour/error.hpp"
#include "netour/session.hpp"
#include "session_walk.hpp"
#include "support.hpp"

using netour::ErrorCode;
using netour::Session;
using nlohmann::json;

namespace {

struct Fixture {
  std::shared_ptr<const netour::Analysis> analysis = std::make_shared<netour::Analysis>(testing::srilanka());
  std::shared_ptr<const netour::TourCorpus> corpus = netour::TourCorpus::builtin();

  Session make() const { return Session("s1", analysis, corpus); }
  Session started(const std::string& tour = "network-overview") const {
    Session s = make();
    s.apply("start", {{"tourId", tour}, {"seed", 42}});
    return s;
  }
};

ErrorCode failure(Session& s, const std::string& action, const json& params = json::object()) {
  try {
    s.apply(action, params);
  } catch (const netour::Error& e) {
    return e.code();
  }
  FAIL("action succeeded: ", action);
  return ErrorCode::BadRequest;
}

std::vector<std::string> visible_ids(const Session& s) {
  std::vector<std::string> out;
  for (const auto* slide : s.visible_slides()) out.push_back(slide->id);
  return out;
}

}  // namespace

TEST_SUITE("session") {
  TEST_CASE("navigation walks the visible slides and clamps at the ends") {
    Fixture f;
    auto s = f.started();
    const auto ids = visible_ids(s);
    REQUIRE(ids.size() == 14);
    CHECK(s.cursor() == 0u);
    s.apply("prev");
    CHECK(s.cursor() == 0u);
    for (std::size_t i = 1; i < ids.size(); ++i) {
      s.apply("next");
      CHECK(s.current_slide()->id == ids[i]);
    }
    s.apply("next");
    CHECK(s.cursor() == ids.size() - 1);
  }

  TEST_CASE("crossing into a new section is flagged") {
    Fixture f;
    auto s = f.started();
    for (int i = 0; i < 5; ++i) CHECK_FALSE(s.apply("next").section_boundary);
    CHECK(s.apply("next").section_boundary);
    CHECK(s.current_section() == "Link information");
  }

  TEST_CASE("skipSection lands on the next section's first slide") {
    Fixture f;
    auto s = f.started();
    CHECK(s.apply("skipSection").section_boundary);
    CHECK(s.current_slide()->id == "overall.total-link-weight#1");
    s.apply("skipSection");
    s.apply("skipSection");
    CHECK(s.current_slide()->id == visible_ids(s).back());
  }

  TEST_CASE("actions before start fail with NoActiveTour") {
    Fixture f;
    auto s = f.make();
    CHECK(failure(s, "next") == ErrorCode::NoActiveTour);
    CHECK(failure(s, "back") == ErrorCode::NoActiveTour);
    CHECK(failure(s, "dance") == ErrorCode::BadRequest);
    CHECK(s.log().empty());
  }

  TEST_CASE("jumpTo rejects unknown and hidden slides") {
    Fixture f;
    auto s = f.started();
    s.apply("jumpTo", {{"slideId", "overall.density#1"}});
    CHECK(s.current_slide()->id == "overall.density#1");
    CHECK(failure(s, "jumpTo", {{"slideId", "overall.nope#1"}}) == ErrorCode::UnknownSlide);
    s.apply("setTagFilter", {{"tags", {"weight"}}});
    CHECK(failure(s, "jumpTo", {{"slideId", "overall.node-count#1"}}) == ErrorCode::HiddenSlide);
  }

  TEST_CASE("tag filter hides slides without deleting them") {
    Fixture f;
    auto s = f.started();
    s.apply("setTagFilter", {{"tags", {"weight"}}});
    const auto vis = visible_ids(s);
    CHECK(vis.size() < 14);
    for (const auto* slide : s.visible_slides()) {
      CHECK(netour::FactRegistry::builtin().at(slide->fact_id).tag_set().contains(netour::Tag::Weight));
    }
    CHECK(s.current_slide() == s.visible_slides().front());
    s.apply("setTagFilter", {{"tags", json::array({"geography", "nodes", "links", "weight", "outliers",
                                                   "connectivity", "statistics", "density", "extrema", "time",
                                                   "paths", "clusters", "centrality", "comparison", "ranking"})}});
    CHECK(visible_ids(s).size() == 14);
    CHECK(failure(s, "setTagFilter", {{"tags", {"colour"}}}) == ErrorCode::UnknownTag);
  }

  TEST_CASE("pivot pushes a tour on the slide subject and back returns") {
    Fixture f;
    auto s = f.started();
    s.apply("jumpTo", {{"slideId", "overall.most-connected-node#1"}});
    const auto suggestions = s.pivot_suggestions();
    const bool offers_ego = std::any_of(suggestions.begin(), suggestions.end(),
                                        [](const netour::PivotSuggestion& p) { return p.tour_id == "ego-network"; });
    CHECK(offers_ego);
    s.apply("pivot", {{"tourId", "ego-network"}});
    CHECK(s.depth() == 2);
    CHECK(s.frame().tour_id == "ego-network");
    CHECK(std::holds_alternative<netour::NodeSubject>(s.frame().subject));
    s.apply("back");
    CHECK(s.depth() == 1);
    CHECK(s.current_slide()->id == "overall.most-connected-node#1");
    s.apply("back");
    CHECK(s.depth() == 1);
  }

  TEST_CASE("pair tours need a second node") {
    Fixture f;
    auto s = f.started();
    s.apply("jumpTo", {{"slideId", "overall.most-connected-node#1"}});
    CHECK(failure(s, "pivot", {{"tourId", "compare-two-nodes"}}) == ErrorCode::SubjectMissing);
    const auto first = std::get<netour::NodeSubject>(s.current_slide()->subject).id;
    const std::string second = first == "CMB" ? "KND" : "CMB";
    s.apply("pivot", {{"tourId", "compare-two-nodes"}, {"extraSubject", second}});
    const auto& pair = std::get<netour::NodePairSubject>(s.frame().subject);
    CHECK(pair.first == first);
    CHECK(pair.second == second);
  }

  TEST_CASE("starred slides survive navigation and pivots") {
    Fixture f;
    auto s = f.started();
    s.apply("star");
    s.apply("star");
    s.apply("next");
    s.apply("star", {{"slideId", "overall.density#1"}});
    REQUIRE(s.starred().size() == 2);
    CHECK(s.starred()[0].slide.starred);
    CHECK(s.starred()[1].slide.id == "overall.density#1");
    s.apply("unstar", {{"slideId", "overall.density#1"}});
    CHECK(s.starred().size() == 1);
    CHECK(failure(s, "unstar", {{"slideId", "overall.density#1"}}) == ErrorCode::UnknownSlide);
  }

  TEST_CASE("failed actions leave the state and the log untouched") {
    Fixture f;
    auto s = f.started();
    s.apply("next");
    const auto before = s.state_json();
    CHECK(failure(s, "extendSection", {{"section", "Nope"}}) == ErrorCode::UnknownSection);
    CHECK(failure(s, "editTour", {{"ops", {{{"op", "add"}, {"section", "Overview"}, {"fact", "x.y"}}}}}) ==
          ErrorCode::UnknownFactId);
    CHECK(s.state_json() == before);
  }

  TEST_CASE("edits build a template that can be exported") {
    Fixture f;
    auto s = f.started();
    s.apply("editTour", {{"ops",
                          {{{"op", "rename"}, {"id", "my-overview"}, {"name", "My overview"}},
                           {{"op", "addSection"}, {"title", "Extra"}},
                           {{"op", "add"}, {"section", "Extra"}, {"fact", "overall.diameter"}},
                           {{"op", "add"}, {"section", "Extra"}, {"fact", "overall.strongest-link"}, {"rank", 2}},
                           {{"op", "remove"}, {"section", "Overview"}, {"index", 0}},
                           {{"op", "moveSection"}, {"section", "Extra"}, {"to", 0}}}}});
    REQUIRE(s.edit_buffer());
    const auto& t = *s.edit_buffer();
    CHECK(t.id == "my-overview");
    CHECK(t.sections.front().title == "Extra");
    CHECK(t.sections.front().slides.size() == 2);
    CHECK(t.fact_count() == 15);
    CHECK(netour::import_tour(netour::export_tour(t), netour::FactRegistry::builtin()) == t);
    s.apply("editTour", {{"ops", {{{"op", "discard"}}}}});
    CHECK_FALSE(s.edit_buffer());
  }

  TEST_CASE("outline lists every slide with its flags") {
    Fixture f;
    auto s = f.started();
    s.apply("extendSlide", {{"slideId", "overall.weakest-link#1"}});
    const auto outline = s.outline();
    CHECK(outline["tour"]["id"] == "network-overview");
    std::size_t detours = 0, total = 0;
    for (const auto& sec : outline["sections"]) {
      for (const auto& slide : sec["slides"]) {
        ++total;
        if (slide["detour"].get<bool>()) ++detours;
      }
    }
    CHECK(total == 16);
    CHECK(detours == 2);
  }

  TEST_CASE("replaying the log reproduces the state") {
    Fixture f;
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 60; ++i) {
      auto s = f.make();
      const auto walk = testing::random_walk(rng, s, 1 + testing::pick(rng, 50));
      for (const auto& u : walk.untyped) MESSAGE(u);
      CHECK(walk.untyped.empty());
      const auto again = Session::replay("s1", f.analysis, f.corpus, s.log());
      CHECK(again.state_json() == s.state_json());
    }
  }

  TEST_CASE("events round-trip through json") {
    const netour::SessionEvent e{"jumpTo", {{"slideId", "a#1"}}, 1234};
    const auto back = netour::event_from_json(netour::to_json(e));
    CHECK(back.event == e.event);
    CHECK(back.params == e.params);
    CHECK(back.timestamp == e.timestamp);
  }
}
