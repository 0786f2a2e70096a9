#include "netour/session.hpp"

#include <algorithm>
#include <set>

#include "netour/error.hpp"

namespace netour {

using nlohmann::json;

namespace {

[[noreturn]] void bad_request(const std::string& msg) { throw Error(ErrorCode::BadRequest, msg); }

std::string string_param(const json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_string()) {
    bad_request(std::string("missing string parameter '") + key + "'");
  }
  return params[key].get<std::string>();
}

std::optional<std::string> optional_string(const json& params, const char* key) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  if (!params[key].is_string()) bad_request(std::string("parameter '") + key + "' must be a string");
  return params[key].get<std::string>();
}

std::size_t index_param(const json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number_integer() || params[key].get<std::int64_t>() < 0) {
    bad_request(std::string("parameter '") + key + "' must be a non-negative integer");
  }
  return params[key].get<std::size_t>();
}

std::optional<std::uint64_t> seed_param(const json& params) {
  if (!params.contains("seed") || params["seed"].is_null()) return std::nullopt;
  if (!params["seed"].is_number_unsigned() && !params["seed"].is_number_integer()) {
    bad_request("parameter 'seed' must be an integer");
  }
  return params["seed"].get<std::uint64_t>();
}

Subject subject_param(const json& params, const char* key, const Graph& g) {
  if (!params.contains(key) || params[key].is_null()) return std::monostate{};
  if (params[key].is_string()) {
    const std::string id = params[key].get<std::string>();
    g.node_index(id);
    return NodeSubject{id};
  }
  return subject_from_json(params[key], g);
}

json skipped_json(const std::vector<SkippedFact>& skipped) {
  json out = json::array();
  for (const auto& s : skipped) {
    out.push_back(
        {{"fact", s.fact_id}, {"rank", s.rank}, {"section", s.section}, {"reason", s.reason}, {"message", s.message}});
  }
  return out;
}

json frame_json(const TourFrame& f) {
  json sections = json::array();
  for (const auto& section : f.sections) {
    json slides = json::array();
    for (const auto& fs : section.slides) {
      json doc = to_json(fs.slide);
      doc["detour"] = fs.detour;
      doc["detourOf"] = fs.detour_of;
      slides.push_back(std::move(doc));
    }
    sections.push_back({{"title", section.title}, {"slides", std::move(slides)}});
  }
  return {{"tourId", f.tour_id},
          {"tourName", f.tour_name},
          {"scope", scope_name(f.scope)},
          {"subject", to_json(f.subject)},
          {"current", f.current},
          {"sections", std::move(sections)},
          {"skipped", skipped_json(f.skipped)},
          {"droppedSections", f.dropped_sections}};
}

TourSection& section_named(TourTemplate& t, const std::string& title) {
  for (auto& s : t.sections) {
    if (s.title == title) return s;
  }
  throw Error(ErrorCode::UnknownSection, "no section '" + title + "' in tour '" + t.id + "'");
}

std::size_t section_index(const TourTemplate& t, const std::string& title) {
  for (std::size_t i = 0; i < t.sections.size(); ++i) {
    if (t.sections[i].title == title) return i;
  }
  throw Error(ErrorCode::UnknownSection, "no section '" + title + "' in tour '" + t.id + "'");
}

void check_index(std::size_t i, std::size_t size, const std::string& what) {
  if (i >= size) {
    throw Error(ErrorCode::SchemaViolation, what + " index " + std::to_string(i) + " is out of range");
  }
}

template <typename T>
void move_item(std::vector<T>& v, std::size_t from, std::size_t to) {
  T item = std::move(v[from]);
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(from));
  v.insert(v.begin() + static_cast<std::ptrdiff_t>(to), std::move(item));
}

}  // namespace

std::string describe_subject(const Subject& s, const Graph& g) {
  const auto label = [&](const std::string& id) { return g.node(g.node_index(id)).label; };
  const auto labels = [&](const std::vector<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& id : ids) out.push_back(label(id));
    return out;
  };
  const auto set_text = [&](const SubgraphRef& sg) {
    if (sg.node_ids.size() <= 4) return join_names(labels(sg.node_ids));
    return format_count(static_cast<std::int64_t>(sg.node_ids.size())) + " " + g.terminology().node.plural;
  };
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "the whole network";
        if constexpr (std::is_same_v<T, NodeSubject>) return label(x.id);
        if constexpr (std::is_same_v<T, NodePairSubject>) return label(x.first) + " and " + label(x.second);
        if constexpr (std::is_same_v<T, SubgraphRef>) return set_text(x);
        if constexpr (std::is_same_v<T, SubgraphPairSubject>) return set_text(x.first) + " versus " + set_text(x.second);
        if constexpr (std::is_same_v<T, PathSubject>) {
          std::string out;
          for (const auto& id : x.nodes) out += (out.empty() ? "" : " → ") + label(id);
          return out;
        }
      },
      s);
}

json to_json(const PivotSuggestion& p) {
  return {{"tourId", p.tour_id}, {"tourName", p.tour_name}, {"subject", to_json(p.subject)},
          {"label", p.label},    {"needs", p.needs},         {"reason", p.reason}};
}

json to_json(const SessionEvent& e) {
  return {{"event", e.event}, {"params", e.params}, {"timestamp", e.timestamp}};
}

SessionEvent event_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("event") || !doc["event"].is_string()) {
    bad_request("an event needs an 'event' name");
  }
  SessionEvent e;
  e.event = doc["event"].get<std::string>();
  if (doc.contains("params") && !doc["params"].is_null()) e.params = doc["params"];
  if (doc.contains("timestamp") && doc["timestamp"].is_number_integer()) e.timestamp = doc["timestamp"].get<std::int64_t>();
  return e;
}

Session::Session(std::string id, std::shared_ptr<const Analysis> analysis, std::shared_ptr<const TourCorpus> corpus)
    : id_(std::move(id)), analysis_(std::move(analysis)), corpus_(std::move(corpus)) {}

Session Session::replay(std::string id, std::shared_ptr<const Analysis> analysis,
                        std::shared_ptr<const TourCorpus> corpus, const std::vector<SessionEvent>& events) {
  Session s(std::move(id), std::move(analysis), std::move(corpus));
  for (const auto& e : events) s.apply(e.event, e.params, e.timestamp);
  return s;
}

ActionResult Session::apply(const std::string& action, const json& params, std::int64_t timestamp) {
  if (!params.is_object()) bad_request("action parameters must be an object");
  auto stack = stack_;
  auto starred = starred_;
  auto filter = filter_;
  auto buffer = edit_buffer_;
  const auto seed = seed_;
  const auto detours = detours_;
  try {
    ActionResult result = dispatch(action, params);
    log_.push_back({action, params, timestamp});
    return result;
  } catch (...) {
    stack_ = std::move(stack);
    starred_ = std::move(starred);
    filter_ = filter;
    edit_buffer_ = std::move(buffer);
    seed_ = seed;
    detours_ = detours;
    throw;
  }
}

const TourFrame& Session::frame() const {
  if (stack_.empty()) throw Error(ErrorCode::NoActiveTour, "no tour has been started");
  return stack_.back();
}

TourFrame& Session::top() {
  if (stack_.empty()) throw Error(ErrorCode::NoActiveTour, "no tour has been started");
  return stack_.back();
}

bool Session::hidden(const Slide& slide) const {
  return !corpus_->registry().at(slide.fact_id).tag_set().intersects(filter_);
}

std::vector<const Slide*> Session::visible_slides() const {
  std::vector<const Slide*> out;
  if (stack_.empty()) return out;
  for (const auto& section : stack_.back().sections) {
    for (const auto& fs : section.slides) {
      if (!hidden(fs.slide)) out.push_back(&fs.slide);
    }
  }
  return out;
}

const Slide* Session::current_slide() const {
  if (stack_.empty()) return nullptr;
  const auto& f = stack_.back();
  for (const auto& section : f.sections) {
    for (const auto& fs : section.slides) {
      if (fs.slide.id == f.current) return hidden(fs.slide) ? nullptr : &fs.slide;
    }
  }
  return nullptr;
}

std::optional<std::size_t> Session::cursor() const {
  const Slide* cur = current_slide();
  if (!cur) return std::nullopt;
  const auto vis = visible_slides();
  return static_cast<std::size_t>(std::find(vis.begin(), vis.end(), cur) - vis.begin());
}

std::string Session::section_of(const std::string& slide_id) const {
  for (const auto& section : frame().sections) {
    for (const auto& fs : section.slides) {
      if (fs.slide.id == slide_id) return section.title;
    }
  }
  return {};
}

std::string Session::current_section() const {
  return stack_.empty() ? std::string() : section_of(stack_.back().current);
}

FrameSlide* Session::find_slide(const std::string& id, std::string* section) {
  for (auto& s : top().sections) {
    for (auto& fs : s.slides) {
      if (fs.slide.id == id) {
        if (section) *section = s.title;
        return &fs;
      }
    }
  }
  return nullptr;
}

bool Session::move_to(const Slide* target) {
  const std::string before = current_section();
  top().current = target->id;
  return current_section() != before;
}

// Keeps the cursor on a visible slide: the current one, else the nearest
// visible slide after it, else the nearest before it.
void Session::settle_cursor() {
  if (stack_.empty()) return;
  auto& f = stack_.back();
  std::vector<const Slide*> all;
  for (const auto& section : f.sections) {
    for (const auto& fs : section.slides) all.push_back(&fs.slide);
  }
  std::size_t pos = 0;
  while (pos < all.size() && all[pos]->id != f.current) ++pos;
  if (pos < all.size() && !hidden(*all[pos])) return;
  if (pos == all.size()) pos = 0;
  for (std::size_t i = pos; i < all.size(); ++i) {
    if (!hidden(*all[i])) {
      f.current = all[i]->id;
      return;
    }
  }
  for (std::size_t i = pos; i-- > 0;) {
    if (!hidden(*all[i])) {
      f.current = all[i]->id;
      return;
    }
  }
}

TourFrame Session::make_frame(const TourTemplate& t, const Subject& subject) const {
  TourInstance inst = instantiate(t, *analysis_, subject, corpus_->registry());
  TourFrame f;
  f.tour_id = inst.tour_id;
  f.tour_name = inst.tour_name;
  f.scope = inst.scope;
  f.subject = std::move(inst.subject);
  for (auto& section : inst.sections) {
    FrameSection out{section.title, {}};
    for (auto& slide : section.slides) out.slides.push_back({std::move(slide), false, {}});
    f.sections.push_back(std::move(out));
  }
  f.skipped = std::move(inst.skipped);
  f.dropped_sections = std::move(inst.dropped_sections);
  if (!f.sections.empty()) f.current = f.sections.front().slides.front().slide.id;
  return f;
}

Subject Session::resolve_pivot_subject(const TourTemplate& target, const json& params) const {
  const Graph& g = graph();
  if (params.contains("subject") && !params["subject"].is_null()) return subject_param(params, "subject", g);
  if (target.scope == SubjectKind::None) return std::monostate{};
  const Slide* slide = current_slide();
  const Subject base = slide ? slide->subject : Subject{};
  const SubjectKind kind = kind_of(base);
  if (kind == target.scope) return base;
  const Subject extra = subject_param(params, "extraSubject", g);
  if (target.scope == SubjectKind::NodePair && kind == SubjectKind::Node) {
    const auto* second = std::get_if<NodeSubject>(&extra);
    if (!second) throw Error(ErrorCode::SubjectMissing, "'" + target.name + "' needs a second node");
    return NodePairSubject{std::get<NodeSubject>(base).id, second->id};
  }
  if (target.scope == SubjectKind::SubgraphPair && kind == SubjectKind::Subgraph) {
    const auto* second = std::get_if<SubgraphRef>(&extra);
    if (!second) throw Error(ErrorCode::SubjectMissing, "'" + target.name + "' needs a second subgraph");
    return SubgraphPairSubject{std::get<SubgraphRef>(base), *second};
  }
  throw Error(ErrorCode::SubjectMissing,
              "'" + target.name + "' needs a " + std::string(to_string(target.scope)) + " subject");
}

ActionResult Session::dispatch(const std::string& action, const json& params) {
  ActionResult result;
  const auto detour_seed_for = [&] {
    const auto explicit_seed = seed_param(params);
    const std::uint64_t s = explicit_seed ? *explicit_seed : detour_seed(seed_, detours_);
    ++detours_;
    return s;
  };
  const auto frame_slides = [&] {
    std::vector<Slide> out;
    for (const auto& section : top().sections) {
      for (const auto& fs : section.slides) out.push_back(fs.slide);
    }
    return out;
  };

  if (action == "start") {
    const TourTemplate& t = corpus_->catalog().at(string_param(params, "tourId"));
    TourFrame f = make_frame(t, subject_param(params, "subject", graph()));
    if (const auto s = seed_param(params)) seed_ = *s;
    detours_ = 0;
    stack_.clear();
    stack_.push_back(std::move(f));
    settle_cursor();
    return result;
  }
  if (action == "next" || action == "prev") {
    const auto vis = visible_slides();
    const auto pos = cursor();
    if (!pos) {
      frame();
      return result;
    }
    if (action == "next" && *pos + 1 < vis.size()) result.section_boundary = move_to(vis[*pos + 1]);
    if (action == "prev" && *pos > 0) result.section_boundary = move_to(vis[*pos - 1]);
    return result;
  }
  if (action == "skipSection") {
    const auto vis = visible_slides();
    const auto pos = cursor();
    if (!pos) {
      frame();
      return result;
    }
    const std::string here = current_section();
    for (std::size_t i = *pos + 1; i < vis.size(); ++i) {
      if (section_of(vis[i]->id) != here) {
        result.section_boundary = move_to(vis[i]);
        return result;
      }
    }
    move_to(vis.back());
    return result;
  }
  if (action == "jumpTo") {
    const std::string id = string_param(params, "slideId");
    const FrameSlide* fs = find_slide(id);
    if (!fs) throw Error(ErrorCode::UnknownSlide, "no slide '" + id + "' in this tour");
    if (hidden(fs->slide)) throw Error(ErrorCode::HiddenSlide, "slide '" + id + "' is hidden by the tag filter");
    result.section_boundary = move_to(&fs->slide);
    return result;
  }
  if (action == "extendSlide") {
    const std::string id = optional_string(params, "slideId").value_or(frame().current);
    std::string section_title;
    const FrameSlide* fs = find_slide(id, &section_title);
    if (!fs) throw Error(ErrorCode::UnknownSlide, "no slide '" + id + "' in this tour");
    const Slide target = fs->slide;
    const auto existing = frame_slides();
    const TourFrame& f = frame();
    const DetourContext ctx{*analysis_, *corpus_, f.scope, f.subject, existing, filter_};
    DetourResult detour = extend_slide(ctx, target, detour_seed_for());
    auto& slides = std::find_if(top().sections.begin(), top().sections.end(), [&](const FrameSection& s) {
                     return s.title == section_title;
                   })->slides;
    std::size_t pos = 0;
    while (slides[pos].slide.id != id) ++pos;
    ++pos;
    std::set<std::string> block{id};
    while (pos < slides.size() && slides[pos].detour && block.count(slides[pos].detour_of)) {
      block.insert(slides[pos].slide.id);
      ++pos;
    }
    for (const auto& slide : detour.slides) {
      slides.insert(slides.begin() + static_cast<std::ptrdiff_t>(pos++), FrameSlide{slide, true, id});
    }
    result.detour = std::move(detour);
    return result;
  }
  if (action == "extendSection") {
    const std::string title = optional_string(params, "section").value_or(current_section());
    auto it = std::find_if(top().sections.begin(), top().sections.end(),
                           [&](const FrameSection& s) { return s.title == title; });
    if (it == top().sections.end()) {
      throw Error(ErrorCode::UnknownSection, "no section '" + title + "' in this tour");
    }
    const auto existing = frame_slides();
    const TourFrame& f = frame();
    const DetourContext ctx{*analysis_, *corpus_, f.scope, f.subject, existing, filter_};
    DetourResult detour = extend_section(ctx, SectionRef{f.tour_id, title}, detour_seed_for());
    for (const auto& slide : detour.slides) it->slides.push_back({slide, true, {}});
    result.detour = std::move(detour);
    return result;
  }
  if (action == "pivot") {
    frame();
    const TourTemplate& t = corpus_->catalog().at(string_param(params, "tourId"));
    TourFrame f = make_frame(t, resolve_pivot_subject(t, params));
    stack_.push_back(std::move(f));
    settle_cursor();
    return result;
  }
  if (action == "back") {
    frame();
    if (stack_.size() > 1) {
      stack_.pop_back();
      settle_cursor();
    }
    return result;
  }
  if (action == "star") {
    const std::string id = optional_string(params, "slideId").value_or(frame().current);
    const FrameSlide* fs = find_slide(id);
    if (!fs) throw Error(ErrorCode::UnknownSlide, "no slide '" + id + "' in this tour");
    const std::string& tour = frame().tour_id;
    const bool already = std::any_of(starred_.begin(), starred_.end(), [&](const StarredSlide& s) {
      return s.tour_id == tour && s.slide.id == id;
    });
    if (!already) {
      Slide snapshot = fs->slide;
      snapshot.starred = true;
      starred_.push_back({tour, std::move(snapshot)});
    }
    return result;
  }
  if (action == "unstar") {
    const std::string tour = optional_string(params, "tourId").value_or(started() ? frame().tour_id : "");
    const std::string id = optional_string(params, "slideId").value_or(started() ? frame().current : "");
    const auto it = std::find_if(starred_.begin(), starred_.end(), [&](const StarredSlide& s) {
      return s.tour_id == tour && s.slide.id == id;
    });
    if (it == starred_.end()) throw Error(ErrorCode::UnknownSlide, "slide '" + id + "' is not starred");
    starred_.erase(it);
    return result;
  }
  if (action == "setTagFilter") {
    if (!params.contains("tags") || !params["tags"].is_array()) bad_request("'tags' must be an array of tag names");
    std::vector<std::string> names;
    for (const auto& t : params["tags"]) {
      if (!t.is_string()) bad_request("'tags' must be an array of tag names");
      names.push_back(t.get<std::string>());
    }
    filter_ = TagSet::parse(names);
    settle_cursor();
    return result;
  }
  if (action == "editTour") {
    if (!params.contains("ops") || !params["ops"].is_array()) bad_request("'ops' must be an array of edits");
    edit(params["ops"]);
    return result;
  }
  bad_request("unknown action '" + action + "'");
}

void Session::edit(const json& ops) {
  const FactRegistry& registry = corpus_->registry();
  for (const auto& op : ops) {
    if (!op.is_object()) bad_request("each edit must be an object");
    const std::string kind = string_param(op, "op");
    if (kind == "new") {
      TourTemplate t;
      t.id = string_param(op, "id");
      t.name = string_param(op, "name");
      t.description = optional_string(op, "description").value_or("");
      try {
        t.scope = parse_subject_kind(string_param(op, "scope") == "overall" ? "none" : string_param(op, "scope"));
      } catch (const Error&) {
        throw Error(ErrorCode::SchemaViolation, "unknown scope '" + string_param(op, "scope") + "'");
      }
      edit_buffer_ = std::move(t);
      continue;
    }
    if (kind == "discard") {
      edit_buffer_.reset();
      continue;
    }
    if (!edit_buffer_) edit_buffer_ = corpus_->catalog().at(frame().tour_id);
    TourTemplate& t = *edit_buffer_;
    if (kind == "rename") {
      if (auto v = optional_string(op, "id")) t.id = *v;
      if (auto v = optional_string(op, "name")) t.name = *v;
      if (auto v = optional_string(op, "description")) t.description = *v;
    } else if (kind == "addSection") {
      const std::string title = string_param(op, "title");
      if (title.empty() || t.find_section(title)) {
        throw Error(ErrorCode::SchemaViolation, "section title '" + title + "' is empty or already used");
      }
      const std::size_t at = op.contains("index") ? index_param(op, "index") : t.sections.size();
      check_index(at, t.sections.size() + 1, "section");
      t.sections.insert(t.sections.begin() + static_cast<std::ptrdiff_t>(at), TourSection{title, {}});
    } else if (kind == "removeSection") {
      t.sections.erase(t.sections.begin() + static_cast<std::ptrdiff_t>(section_index(t, string_param(op, "section"))));
    } else if (kind == "renameSection") {
      const std::string title = string_param(op, "title");
      if (title.empty() || t.find_section(title)) {
        throw Error(ErrorCode::SchemaViolation, "section title '" + title + "' is empty or already used");
      }
      section_named(t, string_param(op, "section")).title = title;
    } else if (kind == "moveSection") {
      const std::size_t from = section_index(t, string_param(op, "section"));
      const std::size_t to = index_param(op, "to");
      check_index(to, t.sections.size(), "section");
      move_item(t.sections, from, to);
    } else if (kind == "add") {
      TourSection& section = section_named(t, string_param(op, "section"));
      json spec = json::object();
      for (const char* key : {"fact", "rank", "params", "role"}) {
        if (op.contains(key)) spec[key] = op[key];
      }
      TourSlideSpec parsed = parse_slide_spec(spec, t.scope, registry);
      const std::size_t at = op.contains("index") ? index_param(op, "index") : section.slides.size();
      check_index(at, section.slides.size() + 1, "slide");
      section.slides.insert(section.slides.begin() + static_cast<std::ptrdiff_t>(at), std::move(parsed));
    } else if (kind == "remove") {
      TourSection& section = section_named(t, string_param(op, "section"));
      const std::size_t at = index_param(op, "index");
      check_index(at, section.slides.size(), "slide");
      section.slides.erase(section.slides.begin() + static_cast<std::ptrdiff_t>(at));
    } else if (kind == "move") {
      TourSection& from_section = section_named(t, string_param(op, "section"));
      const std::size_t from = index_param(op, "from");
      check_index(from, from_section.slides.size(), "slide");
      TourSection& to_section =
          op.contains("toSection") ? section_named(t, string_param(op, "toSection")) : from_section;
      const std::size_t to = index_param(op, "to");
      if (&to_section == &from_section) {
        check_index(to, from_section.slides.size(), "slide");
        move_item(from_section.slides, from, to);
      } else {
        check_index(to, to_section.slides.size() + 1, "slide");
        TourSlideSpec spec = std::move(from_section.slides[from]);
        from_section.slides.erase(from_section.slides.begin() + static_cast<std::ptrdiff_t>(from));
        to_section.slides.insert(to_section.slides.begin() + static_cast<std::ptrdiff_t>(to), std::move(spec));
      }
    } else {
      bad_request("unknown edit '" + kind + "'");
    }
  }
}

std::vector<PivotSuggestion> Session::pivot_suggestions() const {
  std::vector<PivotSuggestion> out;
  if (stack_.empty()) return out;
  const TourFrame& f = stack_.back();
  const Graph& g = graph();
  const auto& tours = corpus_->catalog().all();

  if (const Slide* slide = current_slide()) {
    const SubjectKind kind = kind_of(slide->subject);
    if (kind != SubjectKind::None) {
      const std::string about = describe_subject(slide->subject, g);
      for (const auto& t : tours) {
        if (t.scope == kind && !(t.id == f.tour_id && slide->subject == f.subject)) {
          out.push_back({t.id, t.name, slide->subject, "Start " + t.name + " on " + about, "", "slide"});
        } else if (t.scope == SubjectKind::NodePair && kind == SubjectKind::Node) {
          out.push_back({t.id, t.name, slide->subject,
                         "Compare " + about + " with another " + g.terminology().node.singular, "secondNode", "slide"});
        } else if (t.scope == SubjectKind::SubgraphPair && kind == SubjectKind::Subgraph) {
          out.push_back(
              {t.id, t.name, slide->subject, "Compare " + about + " with another selection", "secondSubgraph", "slide"});
        }
      }
    }
  }

  const auto pos = cursor();
  const auto vis = visible_slides();
  if (pos && *pos + 1 == vis.size()) {
    std::vector<std::pair<double, std::size_t>> related;
    for (std::size_t i = 0; i < tours.size(); ++i) {
      if (tours[i].id != f.tour_id) related.push_back({corpus_->tour_similarity(f.tour_id, tours[i].id), i});
    }
    std::stable_sort(related.begin(), related.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < related.size() && i < 3; ++i) {
      const TourTemplate& t = tours[related[i].second];
      PivotSuggestion p{t.id, t.name, std::monostate{}, "Continue with " + t.name, "", "related"};
      if (t.scope == kind_of(f.subject)) {
        p.subject = f.subject;
        p.label += " on " + describe_subject(f.subject, g);
      } else if (t.scope != SubjectKind::None) {
        p.needs = "subject";
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

json Session::outline() const {
  const TourFrame& f = frame();
  json sections = json::array();
  for (const auto& section : f.sections) {
    json slides = json::array();
    for (const auto& fs : section.slides) {
      const bool starred = std::any_of(starred_.begin(), starred_.end(), [&](const StarredSlide& s) {
        return s.tour_id == f.tour_id && s.slide.id == fs.slide.id;
      });
      slides.push_back({{"id", fs.slide.id},
                        {"title", fs.slide.title},
                        {"fact", fs.slide.fact_id},
                        {"rank", fs.slide.rank},
                        {"current", fs.slide.id == f.current},
                        {"hidden", hidden(fs.slide)},
                        {"starred", starred},
                        {"detour", fs.detour}});
    }
    sections.push_back({{"title", section.title}, {"slides", std::move(slides)}});
  }
  json stack = json::array();
  for (const auto& frame : stack_) stack.push_back({{"tourId", frame.tour_id}, {"tourName", frame.tour_name}});
  const auto pos = cursor();
  return {{"tour", {{"id", f.tour_id}, {"name", f.tour_name}, {"scope", scope_name(f.scope)}}},
          {"subject", to_json(f.subject)},
          {"stack", std::move(stack)},
          {"current", f.current},
          {"cursor", pos ? json(*pos) : json(nullptr)},
          {"visibleCount", visible_slides().size()},
          {"sections", std::move(sections)},
          {"skipped", skipped_json(f.skipped)},
          {"droppedSections", f.dropped_sections}};
}

json Session::state_json() const {
  json stack = json::array();
  for (const auto& f : stack_) stack.push_back(frame_json(f));
  json starred = json::array();
  for (const auto& s : starred_) {
    json doc = to_json(s.slide);
    doc["tourId"] = s.tour_id;
    starred.push_back(std::move(doc));
  }
  json log = json::array();
  for (const auto& e : log_) log.push_back(to_json(e));
  return {{"id", id_},
          {"seed", seed_},
          {"detours", detours_},
          {"tagFilter", filter_.names()},
          {"stack", std::move(stack)},
          {"starred", std::move(starred)},
          {"editBuffer", edit_buffer_ ? to_json(*edit_buffer_) : json(nullptr)},
          {"log", std::move(log)}};
}

}  // namespace netour
