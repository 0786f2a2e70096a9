#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "netour/detour.hpp"
#include "netour/facts.hpp"
#include "netour/tours.hpp"

namespace netour {

struct FrameSlide {
  Slide slide;
  bool detour = false;
  // Slide whose extension produced this one; empty for template slides and
  // section detours.
  std::string detour_of;
};

struct FrameSection {
  std::string title;
  std::vector<FrameSlide> slides;
};

// One tour on the pivot stack.
struct TourFrame {
  std::string tour_id;
  std::string tour_name;
  SubjectKind scope = SubjectKind::None;
  Subject subject;
  std::vector<FrameSection> sections;
  std::vector<SkippedFact> skipped;
  std::vector<std::string> dropped_sections;
  std::string current;  // slide id, empty when the tour has no slides
};

struct StarredSlide {
  std::string tour_id;
  Slide slide;
};

struct PivotSuggestion {
  std::string tour_id;
  std::string tour_name;
  Subject subject;
  std::string label;
  // "" when the subject is complete, "secondNode" / "secondSubgraph" when
  // the target compares two selections, "subject" when none is known yet.
  std::string needs;
  std::string reason;  // "slide" or "related"
};

struct SessionEvent {
  std::string event;
  nlohmann::json params = nlohmann::json::object();
  std::int64_t timestamp = 0;
};

struct ActionResult {
  bool section_boundary = false;
  std::optional<DetourResult> detour;
};

nlohmann::json to_json(const PivotSuggestion& p);
nlohmann::json to_json(const SessionEvent& e);
SessionEvent event_from_json(const nlohmann::json& doc);

// Navigation state over a running tour. Every change goes through apply(),
// which records the action in the event log; replaying the log on a fresh
// session reproduces the state exactly.
class Session {
 public:
  Session(std::string id, std::shared_ptr<const Analysis> analysis, std::shared_ptr<const TourCorpus> corpus);

  // Actions: start, next, prev, skipSection, jumpTo, extendSlide,
  // extendSection, pivot, back, star, unstar, setTagFilter, editTour. A
  // failing action throws and leaves the session untouched.
  ActionResult apply(const std::string& action, const nlohmann::json& params = nlohmann::json::object(),
                     std::int64_t timestamp = 0);

  static Session replay(std::string id, std::shared_ptr<const Analysis> analysis,
                        std::shared_ptr<const TourCorpus> corpus, const std::vector<SessionEvent>& events);

  const std::string& id() const { return id_; }
  bool started() const { return !stack_.empty(); }
  const TourFrame& frame() const;  // throws NoActiveTour
  std::size_t depth() const { return stack_.size(); }
  const std::vector<TourFrame>& stack() const { return stack_; }
  std::uint64_t seed() const { return seed_; }

  // Slides left visible by the tag filter, in order.
  std::vector<const Slide*> visible_slides() const;
  bool hidden(const Slide& slide) const;
  const Slide* current_slide() const;
  // Position of the current slide among the visible ones.
  std::optional<std::size_t> cursor() const;
  std::string current_section() const;

  const std::vector<StarredSlide>& starred() const { return starred_; }
  const TagSet& tag_filter() const { return filter_; }
  const std::optional<TourTemplate>& edit_buffer() const { return edit_buffer_; }
  const std::vector<SessionEvent>& log() const { return log_; }

  std::vector<PivotSuggestion> pivot_suggestions() const;
  nlohmann::json outline() const;
  // Full state, including the event log.
  nlohmann::json state_json() const;

  const Graph& graph() const { return analysis_->graph(); }
  const TourCorpus& corpus() const { return *corpus_; }

 private:
  ActionResult dispatch(const std::string& action, const nlohmann::json& params);
  TourFrame& top();
  TourFrame make_frame(const TourTemplate& t, const Subject& subject) const;
  FrameSlide* find_slide(const std::string& id, std::string* section = nullptr);
  std::string section_of(const std::string& slide_id) const;
  bool move_to(const Slide* target);
  void settle_cursor();
  Subject resolve_pivot_subject(const TourTemplate& target, const nlohmann::json& params) const;
  void edit(const nlohmann::json& ops);

  std::string id_;
  std::shared_ptr<const Analysis> analysis_;
  std::shared_ptr<const TourCorpus> corpus_;
  std::uint64_t seed_ = 0;
  std::uint64_t detours_ = 0;
  std::vector<TourFrame> stack_;
  std::vector<StarredSlide> starred_;
  TagSet filter_ = TagSet::all();
  std::optional<TourTemplate> edit_buffer_;
  std::vector<SessionEvent> log_;
};

// Short readable description of a subject: labels of its nodes.
std::string describe_subject(const Subject& s, const Graph& g);

}  // namespace netour
