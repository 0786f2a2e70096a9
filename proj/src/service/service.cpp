#include "netour/service.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace netour {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_request(const std::string& msg) { throw Error(ErrorCode::BadRequest, msg); }

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    bad_request(std::string("request body is not valid JSON (") + e.what() + ")");
  }
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string required_string(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc[key].is_string()) {
    bad_request(std::string("missing string field '") + key + "'");
  }
  return doc[key].get<std::string>();
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomically(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, p);
}

// Numeric part of ids like "d12"; 0 when there is none.
std::uint64_t id_number(const std::string& id) {
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return 0;
    n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
  }
  return n;
}

bool truthy(const std::string& s) { return s == "true" || s == "1" || s == "yes"; }

bool is_builtin_tour(const std::string& id) {
  const auto& builtins = builtin_tours();
  return std::any_of(builtins.begin(), builtins.end(), [&](const TourTemplate& t) { return t.id == id; });
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownDataset:
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownTour:
    case ErrorCode::UnknownSlide:
    case ErrorCode::UnknownSection:
    case ErrorCode::UnknownNode:
      return 404;
    case ErrorCode::MalformedFile:
    case ErrorCode::DanglingEndpoint:
    case ErrorCode::NegativeWeight:
    case ErrorCode::DuplicateNodeId:
    case ErrorCode::EmptyNoun:
    case ErrorCode::SchemaViolation:
    case ErrorCode::UnknownTag:
    case ErrorCode::UnknownFactId:
    case ErrorCode::BadRequest:
      return 400;
    case ErrorCode::HiddenSlide:
    case ErrorCode::NoActiveTour:
    case ErrorCode::DuplicateFactId:
      return 409;
    default:
      return 422;
  }
}

json error_body(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", to_string(code)}, {"message", message}}}};
}

json rendered_slide(const Slide& slide, const Graph& g, const std::string& section, bool starred) {
  json doc = to_json(slide);
  doc["section"] = section;
  doc["starred"] = starred;
  json nodes = json::array();
  for (const auto& id : slide.highlight.node_ids) {
    const Node& n = g.node(g.node_index(id));
    json nd = {{"id", n.id}, {"label", n.label}};
    if (n.coord) {
      nd["lat"] = n.coord->lat;
      nd["lon"] = n.coord->lon;
    }
    nodes.push_back(std::move(nd));
  }
  doc["layout"] = {{"mode", g.capabilities().geographic ? "geographic" : "force"},
                   {"highlight", {{"nodes", std::move(nodes)}, {"links", slide.highlight.link_ids}}}};
  return doc;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  corpus_ = TourCorpus::builtin();
  if (!options_.data_dir.empty()) load_store();
}

std::int64_t Service::now() const {
  if (options_.clock) return options_.clock();
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Response Service::handle(const Request& request) {
  try {
    return route(request);
  } catch (const Error& e) {
    return {http_status(e.code()), error_body(e.code(), e.what())};
  } catch (const json::exception& e) {
    return {400, error_body(ErrorCode::BadRequest, e.what())};
  } catch (const std::exception& e) {
    return {500, {{"error", {{"code", "Internal"}, {"message", e.what()}}}}};
  }
}

Response Service::route(const Request& r) {
  const auto p = split_path(r.path);
  const auto& m = r.method;
  const auto no_method = [&]() -> Response {
    return {405, error_body(ErrorCode::BadRequest, m + " is not supported on " + r.path)};
  };
  if (p.empty()) bad_request("no resource given");

  if (p[0] == "datasets") {
    if (p.size() == 1) {
      if (m == "POST") return post_dataset(r);
      if (m != "GET") return no_method();
      std::shared_lock lock(mutex_);
      json list = json::array();
      for (const auto& [id, d] : datasets_) {
        list.push_back({{"id", id},
                        {"name", d->name},
                        {"uploadedAt", d->uploaded_at},
                        {"nodes", d->analysis->graph().node_count()},
                        {"links", d->analysis->graph().link_count()}});
      }
      return {200, {{"datasets", std::move(list)}}};
    }
    if (p.size() == 3 && p[2] == "graph") return m == "GET" ? get_graph(p[1]) : no_method();
    if (p.size() == 3 && p[2] == "terminology") return m == "PUT" ? put_terminology(p[1], r.body) : no_method();
  } else if (p[0] == "tours") {
    if (p.size() == 1) {
      if (m == "GET") return list_tours(r);
      if (m == "POST") return post_tour(r.body);
      return no_method();
    }
    if (p.size() == 3 && p[2] == "export") return m == "GET" ? export_tour(p[1]) : no_method();
  } else if (p[0] == "sessions") {
    if (p.size() == 1) return m == "POST" ? post_session(r.body) : no_method();
    if (p.size() == 2) return m == "GET" ? get_session(p[1]) : no_method();
    if (p.size() == 3 && p[2] == "actions") return m == "POST" ? post_action(p[1], r.body) : no_method();
    if (p.size() == 3 && p[2] == "starred") return m == "GET" ? get_starred(p[1]) : no_method();
    if (p.size() == 3 && p[2] == "log") {
      if (m != "GET") return no_method();
      const auto entry = session_entry(p[1]);
      std::lock_guard lock(entry->mutex);
      json events = json::array();
      for (const auto& e : entry->session->log()) events.push_back(to_json(e));
      return {200, {{"events", std::move(events)}}};
    }
  } else if (p[0] == "facts" && p.size() == 1) {
    if (m != "GET") return no_method();
    TagSet tags = TagSet::all();
    if (const auto it = r.query.find("tags"); it != r.query.end() && !it->second.empty()) {
      std::vector<std::string> names;
      std::stringstream ss(it->second);
      std::string name;
      while (std::getline(ss, name, ',')) names.push_back(name);
      tags = TagSet::parse(names);
    }
    const auto it = r.query.find("datasetId");
    const auto ds = it == r.query.end() ? nullptr : dataset(it->second);
    json list = json::array();
    for (const auto* t : FactRegistry::builtin().all()) {
      if (!t->tag_set().intersects(tags)) continue;
      if (ds && !applicable(*t, ds->analysis->graph())) continue;
      list.push_back(to_json(*t));
    }
    return {200, {{"facts", std::move(list)}}};
  } else if (p[0] == "concepts" && p.size() == 1) {
    return m == "GET" ? Response{200, {{"concepts", builtin_concepts()}}} : no_method();
  }
  return {404, error_body(ErrorCode::BadRequest, "no resource at " + r.path)};
}

std::shared_ptr<const Service::Dataset> Service::dataset(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = datasets_.find(id);
  if (it == datasets_.end()) throw Error(ErrorCode::UnknownDataset, "unknown dataset '" + id + "'");
  return it->second;
}

std::shared_ptr<Service::SessionEntry> Service::session_entry(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

Response Service::post_dataset(const Request& r) {
  Graph g;
  std::string name;
  std::vector<std::string> warnings;
  if (!r.files.empty()) {
    const auto field = [&](const char* key) {
      const auto it = r.files.find(key);
      return it == r.files.end() ? std::string() : it->second;
    };
    LoadOptions options;
    options.directed = truthy(field("directed"));
    name = field("name");
    if (r.files.count("dataset")) {
      g = load_dataset(field("dataset"), options);
    } else {
      if (!r.files.count("nodes") || !r.files.count("links")) {
        bad_request("upload 'dataset', or both 'nodes' and 'links'");
      }
      std::istringstream nodes(field("nodes"));
      std::istringstream links(field("links"));
      g = load_graph(nodes, links, options, &warnings);
    }
  } else {
    json doc;
    try {
      doc = json::parse(r.body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedFile, std::string("dataset is not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "dataset must be a JSON object");
    name = doc.value("name", "");
    LoadOptions options;
    options.directed = doc.value("directed", false);
    if (doc.contains("nodesCsv")) {
      std::istringstream nodes(required_string(doc, "nodesCsv"));
      std::istringstream links(required_string(doc, "linksCsv"));
      g = load_graph(nodes, links, options, &warnings);
      if (doc.contains("terminology")) g = set_terminology(g, terminology_from_json(doc["terminology"]));
    } else {
      g = graph_from_json(doc, options);
    }
  }

  if (name.empty()) {
    if (const auto it = r.query.find("name"); it != r.query.end()) name = it->second;
  }
  auto d = std::make_shared<Dataset>();
  d->uploaded_at = now();
  d->analysis = std::make_shared<const Analysis>(g);
  {
    std::unique_lock lock(mutex_);
    d->id = "d" + std::to_string(next_dataset_++);
    d->name = name.empty() ? d->id : name;
    datasets_[d->id] = d;
  }
  save_dataset(*d);
  const auto& caps = g.capabilities();
  return {201,
          {{"datasetId", d->id},
           {"name", d->name},
           {"nodes", g.node_count()},
           {"links", g.link_count()},
           {"capabilities", {{"weighted", caps.weighted}, {"temporal", caps.temporal}, {"geographic", caps.geographic}}},
           {"warnings", warnings}}};
}

Response Service::get_graph(const std::string& id) {
  const auto d = dataset(id);
  json doc = to_json(d->analysis->graph());
  doc["id"] = d->id;
  doc["name"] = d->name;
  return {200, std::move(doc)};
}

Response Service::put_terminology(const std::string& id, const std::string& body) {
  const auto old = dataset(id);
  const json doc = parse_body(body);
  const Graph& g = old->analysis->graph();
  Graph renamed = set_terminology(g, terminology_from_json(doc, g.terminology()));
  auto d = std::make_shared<Dataset>(*old);
  d->analysis = std::make_shared<const Analysis>(renamed);
  {
    std::unique_lock lock(mutex_);
    datasets_[id] = d;
  }
  save_dataset(*d);
  return {200, to_json(renamed.terminology())};
}

Response Service::list_tours(const Request& r) {
  std::shared_ptr<const Dataset> ds;
  if (const auto it = r.query.find("datasetId"); it != r.query.end()) ds = dataset(it->second);
  std::shared_ptr<const TourCorpus> corpus;
  {
    std::shared_lock lock(mutex_);
    corpus = corpus_;
  }
  json list = json::array();
  for (const auto& t : corpus->catalog().all()) {
    json doc = {{"id", t.id},
                {"name", t.name},
                {"description", t.description},
                {"scope", scope_name(t.scope)},
                {"sections", t.sections.size()},
                {"facts", t.fact_count()},
                {"builtin", is_builtin_tour(t.id)}};
    if (ds) {
      std::size_t usable = 0;
      for (const auto& s : t.sections) {
        for (const auto& spec : s.slides) {
          if (applicable(corpus->registry().at(spec.fact), ds->analysis->graph())) ++usable;
        }
      }
      // A tour whose facts mostly cannot run (temporal tours on static data)
      // is offered as not applicable.
      doc["applicability"] = {{"applicable", 2 * usable > t.fact_count()}, {"applicableFacts", usable}};
    }
    list.push_back(std::move(doc));
  }
  return {200, {{"tours", std::move(list)}}};
}

Response Service::post_tour(const std::string& body) {
  const json doc = parse_body(body);
  TourTemplate t;
  if (doc.is_object() && doc.contains("sessionId")) {
    const auto entry = session_entry(required_string(doc, "sessionId"));
    std::lock_guard lock(entry->mutex);
    const auto& buffer = entry->session->edit_buffer();
    if (!buffer) throw Error(ErrorCode::NoActiveTour, "the session has no tour under edit");
    t = parse_tour_template(to_json(*buffer), FactRegistry::builtin());
  } else {
    t = parse_tour_template(doc, FactRegistry::builtin());
  }
  {
    std::unique_lock lock(mutex_);
    const std::string base = t.id;
    for (int n = 2; corpus_->catalog().find(t.id); ++n) t.id = base + "-" + std::to_string(n);
    TourCatalog catalog = corpus_->catalog();
    catalog.add(t);
    corpus_ = std::make_shared<const TourCorpus>(std::move(catalog));
  }
  save_tour(t);
  return {201, {{"tourId", t.id}}};
}

Response Service::export_tour(const std::string& id) {
  std::shared_ptr<const TourCorpus> corpus;
  {
    std::shared_lock lock(mutex_);
    corpus = corpus_;
  }
  return {200, to_json(corpus->catalog().at(id))};
}

std::shared_ptr<const TourCorpus> Service::corpus_for(const std::vector<std::string>& tour_ids) const {
  std::shared_lock lock(mutex_);
  TourCatalog catalog(corpus_->registry());
  for (const auto& id : tour_ids) catalog.add(corpus_->catalog().at(id));
  return std::make_shared<const TourCorpus>(std::move(catalog));
}

json Service::session_view(const Session& s, const ActionResult* result) const {
  json view;
  const Slide* slide = s.current_slide();
  if (slide) {
    const bool starred = std::any_of(s.starred().begin(), s.starred().end(), [&](const StarredSlide& st) {
      return st.tour_id == s.frame().tour_id && st.slide.id == slide->id;
    });
    view["slide"] = rendered_slide(*slide, s.graph(), s.current_section(), starred);
  } else {
    view["slide"] = nullptr;
  }
  view["outline"] = s.outline();
  json pivots = json::array();
  for (const auto& p : s.pivot_suggestions()) pivots.push_back(to_json(p));
  view["pivotSuggestions"] = std::move(pivots);
  view["sectionBoundary"] = result && result->section_boundary;
  if (result && result->detour) {
    json ids = json::array();
    for (const auto& d : result->detour->slides) ids.push_back(d.id);
    view["detour"] = {{"source", to_string(result->detour->source)},
                      {"seedUsed", result->detour->seed_used},
                      {"inserted", std::move(ids)}};
  }
  if (s.edit_buffer()) view["editBuffer"] = to_json(*s.edit_buffer());
  return view;
}

Response Service::post_session(const std::string& body) {
  const json doc = parse_body(body);
  const auto ds = dataset(required_string(doc, "datasetId"));
  json params = {{"tourId", required_string(doc, "tourId")}};
  if (doc.contains("subject") && !doc["subject"].is_null()) params["subject"] = doc["subject"];
  if (doc.contains("seed") && !doc["seed"].is_null()) {
    params["seed"] = doc["seed"];
  } else {
    params["seed"] = options_.default_seed ? *options_.default_seed : static_cast<std::uint64_t>(now());
  }

  auto entry = std::make_shared<SessionEntry>();
  entry->dataset_id = ds->id;
  std::shared_ptr<const TourCorpus> corpus;
  std::string id;
  {
    std::unique_lock lock(mutex_);
    corpus = corpus_;
    id = "s" + std::to_string(next_session_++);
  }
  for (const auto& t : corpus->catalog().all()) entry->tour_ids.push_back(t.id);
  entry->session = std::make_unique<Session>(id, ds->analysis, corpus);
  entry->session->apply("start", params, now());
  {
    std::unique_lock lock(mutex_);
    sessions_[id] = entry;
  }
  std::lock_guard lock(entry->mutex);
  save_session(id, *entry);
  json view = session_view(*entry->session, nullptr);
  return {201,
          {{"sessionId", id},
           {"seed", entry->session->seed()},
           {"outline", view["outline"]},
           {"firstSlide", view["slide"]},
           {"pivotSuggestions", view["pivotSuggestions"]}}};
}

Response Service::post_action(const std::string& id, const std::string& body) {
  const json doc = parse_body(body);
  const std::string action = required_string(doc, "action");
  const json params = doc.contains("params") && !doc["params"].is_null() ? doc["params"] : json::object();
  const auto entry = session_entry(id);
  std::lock_guard lock(entry->mutex);
  const ActionResult result = entry->session->apply(action, params, now());
  save_session(id, *entry);
  return {200, session_view(*entry->session, &result)};
}

Response Service::get_session(const std::string& id) {
  const auto entry = session_entry(id);
  std::lock_guard lock(entry->mutex);
  json view = session_view(*entry->session, nullptr);
  view["sessionId"] = id;
  view["datasetId"] = entry->dataset_id;
  view["seed"] = entry->session->seed();
  return {200, std::move(view)};
}

Response Service::get_starred(const std::string& id) {
  const auto entry = session_entry(id);
  std::lock_guard lock(entry->mutex);
  json list = json::array();
  for (const auto& s : entry->session->starred()) {
    json doc = to_json(s.slide);
    doc["tourId"] = s.tour_id;
    list.push_back(std::move(doc));
  }
  return {200, {{"starred", std::move(list)}}};
}

// ---- flat-file store ----------------------------------------------------------

void Service::save_dataset(const Dataset& d) const {
  if (options_.data_dir.empty()) return;
  const json doc = {
      {"id", d.id}, {"name", d.name}, {"uploadedAt", d.uploaded_at}, {"graph", to_json(d.analysis->graph())}};
  write_atomically(options_.data_dir / "datasets" / (d.id + ".json"), doc.dump());
}

void Service::save_tour(const TourTemplate& t) const {
  if (options_.data_dir.empty()) return;
  std::size_t position = 0;
  {
    std::shared_lock lock(mutex_);
    position = corpus_->catalog().all().size();
  }
  const json doc = {{"position", position}, {"template", to_json(t)}};
  write_atomically(options_.data_dir / "tours" / (t.id + ".json"), doc.dump(2));
}

void Service::save_session(const std::string& id, const SessionEntry& e) const {
  if (options_.data_dir.empty()) return;
  json events = json::array();
  for (const auto& ev : e.session->log()) events.push_back(to_json(ev));
  const json doc = {{"id", id}, {"datasetId", e.dataset_id}, {"tours", e.tour_ids}, {"events", std::move(events)}};
  write_atomically(options_.data_dir / "sessions" / (id + ".json"), doc.dump());
}

void Service::load_store() {
  const auto files = [&](const char* dir) {
    std::vector<fs::path> out;
    const fs::path p = options_.data_dir / dir;
    if (!fs::is_directory(p)) return out;
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.path().extension() == ".json") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (const auto& path : files("datasets")) {
    const json doc = json::parse(read_text(path));
    auto d = std::make_shared<Dataset>();
    d->id = doc.at("id").get<std::string>();
    d->name = doc.value("name", d->id);
    d->uploaded_at = doc.value("uploadedAt", std::int64_t{0});
    d->analysis = std::make_shared<const Analysis>(graph_from_json(doc.at("graph")));
    next_dataset_ = std::max(next_dataset_, id_number(d->id) + 1);
    datasets_[d->id] = d;
  }

  std::vector<std::pair<std::size_t, TourTemplate>> tours;
  for (const auto& path : files("tours")) {
    const json doc = json::parse(read_text(path));
    tours.emplace_back(doc.value("position", std::size_t{0}),
                       parse_tour_template(doc.at("template"), FactRegistry::builtin()));
  }
  std::stable_sort(tours.begin(), tours.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  TourCatalog catalog = corpus_->catalog();
  for (auto& [position, t] : tours) catalog.add(std::move(t));
  corpus_ = std::make_shared<const TourCorpus>(std::move(catalog));

  for (const auto& path : files("sessions")) {
    const json doc = json::parse(read_text(path));
    auto entry = std::make_shared<SessionEntry>();
    const std::string id = doc.at("id").get<std::string>();
    entry->dataset_id = doc.at("datasetId").get<std::string>();
    entry->tour_ids = doc.at("tours").get<std::vector<std::string>>();
    std::vector<SessionEvent> events;
    for (const auto& e : doc.at("events")) events.push_back(event_from_json(e));
    const auto ds = datasets_.at(entry->dataset_id);
    entry->session = std::make_unique<Session>(
        Session::replay(id, ds->analysis, corpus_for(entry->tour_ids), events));
    next_session_ = std::max(next_session_, id_number(id) + 1);
    sessions_[id] = entry;
  }
}

}  // namespace netour
