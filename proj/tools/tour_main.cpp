#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "netour/error.hpp"
#include "netour/facts.hpp"
#include "netour/graph.hpp"
#include "netour/tours.hpp"
#include "serve.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit statuses.
constexpr int kLoadFailure = 1;
constexpr int kTourFailure = 2;

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct DatasetArgs {
  std::string dataset;
  std::string nodes;
  std::string links;
  bool directed = false;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--dataset", args.dataset, "JSON dataset, or a directory holding nodes.csv and links.csv");
  cmd->add_option("--nodes", args.nodes, "node CSV file");
  cmd->add_option("--links", args.links, "link CSV file");
  cmd->add_flag("--directed", args.directed, "treat CSV links as directed");
}

netour::Graph load(const DatasetArgs& args, std::vector<std::string>* warnings = nullptr) {
  netour::LoadOptions options;
  options.directed = args.directed;
  std::string nodes = args.nodes;
  std::string links = args.links;
  if (!args.dataset.empty()) {
    const fs::path p(args.dataset);
    if (fs::is_directory(p)) {
      nodes = (p / "nodes.csv").string();
      links = (p / "links.csv").string();
    } else {
      return netour::load_dataset(read_file(p), options);
    }
  }
  if (nodes.empty() || links.empty()) throw LoadError("give --dataset, or both --nodes and --links");
  std::istringstream node_csv(read_file(nodes));
  std::istringstream link_csv(read_file(links));
  return netour::load_graph(node_csv, link_csv, options, warnings);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    std::string part(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    part = b == std::string::npos ? std::string() : part.substr(b, e - b + 1);
    if (!part.empty()) out.push_back(part);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Comma-separated node ids, '|' between the two sets of a subgraph pair, or
// a subject JSON document.
netour::Subject parse_subject(const std::string& text, netour::SubjectKind scope, const netour::Graph& g) {
  using netour::SubjectKind;
  if (text.empty()) return std::monostate{};
  if (text.front() == '{') return netour::subject_from_json(json::parse(text), g);
  const auto ids = split(text, ',');
  switch (scope) {
    case SubjectKind::None:
      throw netour::Error(netour::ErrorCode::SubjectMismatch, "this tour covers the whole network and takes no subject");
    case SubjectKind::Node:
      if (ids.size() != 1) throw netour::Error(netour::ErrorCode::SubjectMismatch, "expected one node id");
      g.node_index(ids.front());
      return netour::NodeSubject{ids.front()};
    case SubjectKind::NodePair:
      if (ids.size() != 2) throw netour::Error(netour::ErrorCode::SubjectMismatch, "expected two node ids");
      return netour::NodePairSubject{ids[0], ids[1]};
    case SubjectKind::Subgraph:
      return netour::induce_subgraph(g, std::span<const std::string>(ids));
    case SubjectKind::SubgraphPair: {
      const auto sets = split(text, '|');
      if (sets.size() != 2) {
        throw netour::Error(netour::ErrorCode::SubjectMismatch, "expected two node sets separated by '|'");
      }
      const auto a = split(sets[0], ',');
      const auto b = split(sets[1], ',');
      return netour::SubgraphPairSubject{netour::induce_subgraph(g, std::span<const std::string>(a)),
                                         netour::induce_subgraph(g, std::span<const std::string>(b))};
    }
    case SubjectKind::Path:
      return netour::PathSubject{ids};
  }
  return std::monostate{};
}

bool is_load_error(netour::ErrorCode code) {
  using netour::ErrorCode;
  return code == ErrorCode::MalformedFile || code == ErrorCode::DanglingEndpoint ||
         code == ErrorCode::NegativeWeight || code == ErrorCode::DuplicateNodeId || code == ErrorCode::EmptyNoun;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

netour::TourTemplate resolve_tour(const std::string& ref) {
  for (const auto& t : netour::builtin_tours()) {
    if (t.id == ref) return t;
  }
  if (fs::is_regular_file(ref)) return netour::import_tour(read_file(ref), netour::FactRegistry::builtin());
  throw netour::Error(netour::ErrorCode::UnknownTour, "unknown tour '" + ref + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided data tours through network datasets"};
  app.require_subcommand(1);

  DatasetArgs run_data;
  std::string tour_ref;
  std::string subject_text;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  auto* run = app.add_subcommand("run", "Instantiate a tour and render it as a static slideshow");
  add_dataset_options(run, run_data);
  run->add_option("--tour", tour_ref, "built-in tour id or tour JSON file")->required();
  run->add_option("--subject", subject_text, "node ids: A | A,B | A,B,C | A,B|C,D, or subject JSON");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "markdown", "html"}));
  run->add_option("--out", out_path, "output file (default: standard output)");

  DatasetArgs validate_data;
  auto* validate = app.add_subcommand("validate", "Check a dataset and report its capabilities");
  add_dataset_options(validate, validate_data);

  std::vector<std::string> tags;
  DatasetArgs list_data;
  auto* list = app.add_subcommand("list-facts", "List the fact library, optionally filtered by tags");
  list->add_option("--tags", tags, "tags (space or comma separated)")->delimiter(',');
  add_dataset_options(list, list_data);

  std::string export_ref;
  auto* exp = app.add_subcommand("export", "Print a tour template as JSON");
  exp->add_option("--tour", export_ref, "built-in tour id or tour JSON file")->required();

  netour::ServeOptions serve_options;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--bind", serve_options.bind, "address:port (default: $BIND_ADDR or 127.0.0.1:8080)");
  serve->add_option("--data-dir", serve_options.data_dir, "storage directory (default: $DATA_DIR)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      netour::Graph g;
      try {
        g = load(run_data);
      } catch (const netour::Error& e) {
        if (is_load_error(e.code())) throw;
        throw LoadError(std::string(netour::to_string(e.code())) + ": " + e.what());
      }
      const auto tour = resolve_tour(tour_ref);
      const netour::Analysis analysis(g);
      const auto subject = parse_subject(subject_text, tour.scope, g);
      const auto instance = netour::instantiate(tour, analysis, subject);
      std::string text;
      if (format == "markdown") {
        text = netour::render_markdown(instance, g);
      } else if (format == "html") {
        text = netour::render_html(instance, g);
      } else {
        json doc = netour::to_json(instance);
        doc["seed"] = seed;
        text = doc.dump(2) + "\n";
      }
      write_output(text, out_path);
      return 0;
    }
    if (*validate) {
      std::vector<std::string> warnings;
      const auto g = load(validate_data, &warnings);
      const auto& caps = g.capabilities();
      const auto yes = [](bool b) { return b ? "yes" : "no"; };
      std::cout << g.terminology().node.plural << ": " << g.node_count() << "\n"
                << g.terminology().link.plural << ": " << g.link_count() << "\n"
                << "directed: " << yes(g.directed()) << "\n"
                << "weighted: " << yes(caps.weighted) << "\n"
                << "temporal: " << yes(caps.temporal) << "\n"
                << "geographic: " << yes(caps.geographic) << "\n";
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }
    if (*list) {
      const auto& registry = netour::FactRegistry::builtin();
      const auto filter = tags.empty() ? netour::TagSet::all() : netour::TagSet::parse(tags);
      std::vector<const netour::FactTemplate*> facts;
      if (!list_data.dataset.empty() || !list_data.nodes.empty()) {
        facts = netour::facts_by_tags(registry, filter, load(list_data));
      } else {
        for (const auto* t : registry.all()) {
          if (t->tag_set().intersects(filter)) facts.push_back(t);
        }
      }
      for (const auto* t : facts) {
        std::string tag_list;
        for (const auto& name : t->tag_set().names()) tag_list += (tag_list.empty() ? "" : ",") + name;
        std::cout << t->id << "\t" << tag_list << "\t" << t->title << "\n";
      }
      return 0;
    }
    if (*exp) {
      std::cout << netour::export_tour(resolve_tour(export_ref));
      return 0;
    }
    if (*serve) return netour::serve(serve_options);
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLoadFailure;
  } catch (const netour::Error& e) {
    std::cerr << "error: " << netour::to_string(e.code()) << ": " << e.what() << "\n";
    return is_load_error(e.code()) ? kLoadFailure : kTourFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTourFailure;
  }
  return 0;
}
