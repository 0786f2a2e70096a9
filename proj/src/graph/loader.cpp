#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>
#include <unordered_set>

#include "csv.hpp"
#include "netour/error.hpp"
#include "netour/graph.hpp"

namespace netour {

namespace {

using nlohmann::json;

std::string generated_link_id(std::size_t index, std::size_t total) {
  std::string digits = std::to_string(index + 1);
  const std::size_t width = std::to_string(total).size();
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "L" + digits;
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

double parse_real(const std::string& s, const std::string& where) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::MalformedFile, where + ": '" + s + "' is not a number");
  }
  return v;
}

int digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
  if (pos + n > s.size()) throw Error(ErrorCode::MalformedFile, "bad timestamp '" + std::string(whole) + "'");
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::MalformedFile, "bad timestamp '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

// Resolves a canonical column name through the mapping; -1 when absent.
int column(const detail::CsvTable& t, const LoadOptions& o, const std::string& canonical) {
  std::string name = canonical;
  if (auto it = o.columns.find(canonical); it != o.columns.end()) name = it->second;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void check_required(const std::vector<Link>& links, const LoadOptions& o) {
  for (const auto& l : links) {
    if (o.require_weights.value_or(false) && !l.weight) {
      throw Error(ErrorCode::MalformedFile, "link '" + l.id + "' is missing a weight");
    }
    if (o.require_times.value_or(false) && !l.time) {
      throw Error(ErrorCode::MalformedFile, "link '" + l.id + "' is missing a time");
    }
  }
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
  const std::string s = trim(text);
  std::int64_t epoch = 0;
  if (parse_int(s, epoch)) return epoch;

  const int y = digits(s, 0, 4, s);
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') {
    throw Error(ErrorCode::MalformedFile, "bad timestamp '" + s + "'");
  }
  const int mo = digits(s, 5, 2, s);
  const int d = digits(s, 8, 2, s);
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw Error(ErrorCode::MalformedFile, "bad date '" + s + "'");
  std::int64_t seconds = std::chrono::sys_days{ymd}.time_since_epoch().count() * 86400LL;

  std::size_t pos = 10;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    const int hh = digits(s, pos + 1, 2, s);
    if (pos + 3 >= s.size() || s[pos + 3] != ':') throw Error(ErrorCode::MalformedFile, "bad time '" + s + "'");
    const int mm = digits(s, pos + 4, 2, s);
    int ss = 0;
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      ss = digits(s, pos + 1, 2, s);
      pos += 3;
      if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) throw Error(ErrorCode::MalformedFile, "bad time '" + s + "'");
    seconds += hh * 3600LL + mm * 60LL + ss;
    if (pos < s.size()) {
      if (s[pos] == 'Z') {
        ++pos;
      } else if (s[pos] == '+' || s[pos] == '-') {
        const int sign = s[pos] == '+' ? 1 : -1;
        const int oh = digits(s, pos + 1, 2, s);
        std::size_t mpos = pos + 3;
        if (mpos < s.size() && s[mpos] == ':') ++mpos;
        const int om = digits(s, mpos, 2, s);
        seconds -= sign * (oh * 3600LL + om * 60LL);
        pos = mpos + 2;
      }
    }
  }
  if (pos != s.size()) throw Error(ErrorCode::MalformedFile, "bad timestamp '" + s + "'");
  return seconds;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  if (rem == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  }
  return buf;
}

Graph load_graph(std::istream& node_csv, std::istream& link_csv, const LoadOptions& options,
                 std::vector<std::string>* warnings) {
  const auto nt = detail::read_csv(node_csv, "node file");
  const auto lt = detail::read_csv(link_csv, "link file");

  const int id_col = column(nt, options, "id");
  if (id_col < 0) throw Error(ErrorCode::MalformedFile, "node file: missing 'id' column");
  const int label_col = column(nt, options, "label");
  const int lat_col = column(nt, options, "lat");
  const int lon_col = column(nt, options, "lon");
  if ((lat_col < 0) != (lon_col < 0)) {
    throw Error(ErrorCode::MalformedFile, "node file: 'lat' and 'lon' must appear together");
  }

  std::vector<Node> nodes;
  nodes.reserve(nt.rows.size());
  for (std::size_t r = 0; r < nt.rows.size(); ++r) {
    const auto& row = nt.rows[r];
    const std::string where = "node file line " + std::to_string(nt.line_numbers[r]);
    Node n;
    n.id = row[id_col];
    if (n.id.empty()) throw Error(ErrorCode::MalformedFile, where + ": empty id");
    n.label = label_col >= 0 && !row[label_col].empty() ? row[label_col] : n.id;
    if (lat_col >= 0) {
      const bool has_lat = !trim(row[lat_col]).empty();
      const bool has_lon = !trim(row[lon_col]).empty();
      if (has_lat != has_lon) throw Error(ErrorCode::MalformedFile, where + ": incomplete coordinate");
      if (has_lat) n.coord = GeoCoord{parse_real(row[lat_col], where), parse_real(row[lon_col], where)};
    }
    for (std::size_t c = 0; c < nt.header.size(); ++c) {
      const int ci = static_cast<int>(c);
      if (ci == id_col || ci == label_col || ci == lat_col || ci == lon_col) continue;
      n.attributes[nt.header[c]] = row[c];
    }
    nodes.push_back(std::move(n));
  }

  const int src_col = column(lt, options, "source");
  const int dst_col = column(lt, options, "target");
  if (src_col < 0 || dst_col < 0) {
    throw Error(ErrorCode::MalformedFile, "link file: 'source' and 'target' columns are required");
  }
  const int lid_col = column(lt, options, "id");
  const int w_col = column(lt, options, "weight");
  const int t_col = column(lt, options, "time");
  if (options.require_weights.value_or(false) && w_col < 0) {
    throw Error(ErrorCode::MalformedFile, "link file: weights required but no 'weight' column");
  }
  if (options.require_times.value_or(false) && t_col < 0) {
    throw Error(ErrorCode::MalformedFile, "link file: times required but no 'time' column");
  }
  if (warnings) {
    for (std::size_t c = 0; c < lt.header.size(); ++c) {
      const int ci = static_cast<int>(c);
      if (ci != src_col && ci != dst_col && ci != lid_col && ci != w_col && ci != t_col) {
        warnings->push_back("link file: ignoring column '" + lt.header[c] + "'");
      }
    }
  }

  std::unordered_set<std::string> known;
  for (const auto& n : nodes) known.insert(n.id);
  std::string dangling;
  std::vector<Link> links;
  links.reserve(lt.rows.size());
  for (std::size_t r = 0; r < lt.rows.size(); ++r) {
    const auto& row = lt.rows[r];
    const std::string where = "link file line " + std::to_string(lt.line_numbers[r]);
    Link l;
    l.id = lid_col >= 0 && !row[lid_col].empty() ? row[lid_col] : generated_link_id(r, lt.rows.size());
    l.source = row[src_col];
    l.target = row[dst_col];
    if (!known.count(l.source) || !known.count(l.target)) {
      if (!dangling.empty()) dangling += ", ";
      dangling += std::to_string(lt.line_numbers[r]);
      continue;
    }
    if (w_col >= 0 && !trim(row[w_col]).empty()) {
      const double w = parse_real(row[w_col], where);
      if (w < 0.0) throw Error(ErrorCode::NegativeWeight, where + ": negative weight");
      if (!std::isfinite(w)) throw Error(ErrorCode::MalformedFile, where + ": non-finite weight");
      l.weight = w;
    }
    if (t_col >= 0 && !trim(row[t_col]).empty()) l.time = parse_timestamp(row[t_col]);
    links.push_back(std::move(l));
  }
  if (!dangling.empty()) {
    throw Error(ErrorCode::DanglingEndpoint, "link file lines with unknown endpoints: " + dangling);
  }
  check_required(links, options);
  return Graph(std::move(nodes), std::move(links), options.directed);
}

Graph graph_from_json(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "dataset must be a JSON object");
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw Error(ErrorCode::MalformedFile, "dataset: 'nodes' array is required");
  }
  const json links_doc = doc.contains("links") ? doc["links"] : json::array();
  if (!links_doc.is_array()) throw Error(ErrorCode::MalformedFile, "dataset: 'links' must be an array");
  bool directed = options.directed;
  if (doc.contains("directed")) {
    if (!doc["directed"].is_boolean()) throw Error(ErrorCode::MalformedFile, "dataset: 'directed' must be a boolean");
    directed = doc["directed"].get<bool>();
  }

  const auto scalar_string = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return {};
    return v.dump();
  };

  std::vector<Node> nodes;
  std::size_t index = 0;
  for (const auto& nd : doc["nodes"]) {
    const std::string where = "nodes[" + std::to_string(index++) + "]";
    if (!nd.is_object()) throw Error(ErrorCode::MalformedFile, where + " must be an object");
    if (!nd.contains("id") || !(nd["id"].is_string() || nd["id"].is_number_integer())) {
      throw Error(ErrorCode::MalformedFile, where + ": 'id' is required");
    }
    Node n;
    n.id = scalar_string(nd["id"]);
    n.label = nd.contains("label") && nd["label"].is_string() ? nd["label"].get<std::string>() : n.id;
    const bool has_lat = nd.contains("lat") && !nd["lat"].is_null();
    const bool has_lon = nd.contains("lon") && !nd["lon"].is_null();
    if (has_lat != has_lon) throw Error(ErrorCode::MalformedFile, where + ": incomplete coordinate");
    if (has_lat) {
      if (!nd["lat"].is_number() || !nd["lon"].is_number()) {
        throw Error(ErrorCode::MalformedFile, where + ": coordinates must be numbers");
      }
      n.coord = GeoCoord{nd["lat"].get<double>(), nd["lon"].get<double>()};
    }
    for (const auto& [key, value] : nd.items()) {
      if (key == "id" || key == "label" || key == "lat" || key == "lon") continue;
      if (key == "attributes" && value.is_object()) {
        for (const auto& [ak, av] : value.items()) n.attributes[ak] = scalar_string(av);
      } else {
        n.attributes[key] = scalar_string(value);
      }
    }
    nodes.push_back(std::move(n));
  }

  std::unordered_set<std::string> known;
  for (const auto& n : nodes) {
    if (!known.insert(n.id).second) throw Error(ErrorCode::DuplicateNodeId, "duplicate node id '" + n.id + "'");
  }

  std::vector<Link> links;
  std::string dangling;
  index = 0;
  for (const auto& ld : links_doc) {
    const std::size_t i = index++;
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!ld.is_object() || !ld.contains("source") || !ld.contains("target")) {
      throw Error(ErrorCode::MalformedFile, where + ": 'source' and 'target' are required");
    }
    Link l;
    l.id = ld.contains("id") && !ld["id"].is_null() ? scalar_string(ld["id"])
                                                    : generated_link_id(i, links_doc.size());
    l.source = scalar_string(ld["source"]);
    l.target = scalar_string(ld["target"]);
    if (!known.count(l.source) || !known.count(l.target)) {
      if (!dangling.empty()) dangling += ", ";
      dangling += std::to_string(i);
      continue;
    }
    if (ld.contains("weight") && !ld["weight"].is_null()) {
      if (!ld["weight"].is_number()) throw Error(ErrorCode::MalformedFile, where + ": weight must be a number");
      l.weight = ld["weight"].get<double>();
      if (*l.weight < 0.0) throw Error(ErrorCode::NegativeWeight, where + ": negative weight");
    }
    if (ld.contains("time") && !ld["time"].is_null()) {
      const auto& t = ld["time"];
      if (t.is_number_integer()) {
        l.time = t.get<std::int64_t>();
      } else if (t.is_string()) {
        l.time = parse_timestamp(t.get<std::string>());
      } else {
        throw Error(ErrorCode::MalformedFile, where + ": time must be an integer epoch or ISO-8601 string");
      }
    }
    links.push_back(std::move(l));
  }
  if (!dangling.empty()) throw Error(ErrorCode::DanglingEndpoint, "links with unknown endpoints: " + dangling);
  check_required(links, options);

  Terminology terms;
  if (doc.contains("terminology") && !doc["terminology"].is_null()) {
    terms = terminology_from_json(doc["terminology"]);
  }
  return set_terminology(Graph(std::move(nodes), std::move(links), directed), std::move(terms));
}

Graph load_dataset(std::string_view json_text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("dataset is not valid JSON: ") + e.what());
  }
  return graph_from_json(doc, options);
}

json to_json(const Graph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes()) {
    json nd = {{"id", n.id}, {"label", n.label}};
    if (n.coord) {
      nd["lat"] = n.coord->lat;
      nd["lon"] = n.coord->lon;
    }
    if (!n.attributes.empty()) nd["attributes"] = n.attributes;
    nodes.push_back(std::move(nd));
  }
  json links = json::array();
  for (const auto& l : g.links()) {
    json ld = {{"id", l.id}, {"source", l.source}, {"target", l.target}};
    if (l.weight) ld["weight"] = *l.weight;
    if (l.time) ld["time"] = *l.time;
    links.push_back(std::move(ld));
  }
  const auto& caps = g.capabilities();
  return {{"directed", g.directed()},
          {"nodes", std::move(nodes)},
          {"links", std::move(links)},
          {"terminology", to_json(g.terminology())},
          {"capabilities",
           {{"weighted", caps.weighted}, {"temporal", caps.temporal}, {"geographic", caps.geographic}}}};
}

}  // namespace netour
