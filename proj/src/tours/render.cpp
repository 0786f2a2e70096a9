#include <sstream>

#include "netour/tours.hpp"

namespace netour {

namespace {

std::string subject_text(const Subject& s) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "whole network";
        if constexpr (std::is_same_v<T, NodeSubject>) return x.id;
        if constexpr (std::is_same_v<T, SubgraphRef>) return join_names(x.node_ids);
        if constexpr (std::is_same_v<T, NodePairSubject>) return x.first + " and " + x.second;
        if constexpr (std::is_same_v<T, SubgraphPairSubject>) {
          return "{" + join_names(x.first.node_ids) + "} and {" + join_names(x.second.node_ids) + "}";
        }
        if constexpr (std::is_same_v<T, PathSubject>) {
          std::string out;
          for (const auto& id : x.nodes) out += (out.empty() ? "" : " → ") + id;
          return out;
        }
      },
      s);
}

std::string highlight_text(const Slide& slide, const Graph& g) {
  std::vector<std::string> names;
  for (const auto& id : slide.highlight.node_ids) names.push_back(g.node(g.node_index(id)).label);
  std::string out = join_names(names);
  if (!slide.highlight.link_ids.empty()) {
    const auto n = static_cast<std::int64_t>(slide.highlight.link_ids.size());
    out += (out.empty() ? "" : "; ") + format_count(n) + " " + g.terminology().link.form(n != 1);
  }
  return out;
}

std::string escape_html(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_markdown(const TourInstance& inst, const Graph& g) {
  std::ostringstream out;
  out << "# " << inst.tour_name << "\n\n";
  out << "Subject: " << subject_text(inst.subject) << "\n";
  for (const auto& section : inst.sections) {
    out << "\n## " << section.title << "\n";
    for (const auto& slide : section.slides) {
      out << "\n### " << slide.title << "\n\n" << slide.caption << "\n";
      const std::string hl = highlight_text(slide, g);
      if (!hl.empty()) out << "\nHighlighted: " << hl << "\n";
    }
  }
  if (!inst.skipped.empty()) {
    out << "\n## Skipped\n\n";
    for (const auto& s : inst.skipped) {
      out << "- `" << s.fact_id << "` rank " << s.rank << " (" << s.section << "): " << s.reason << ", "
          << s.message << "\n";
    }
  }
  return out.str();
}

std::string render_html(const TourInstance& inst, const Graph& g) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>"
      << escape_html(inst.tour_name) << "</title>\n"
      << "<style>body{font-family:sans-serif;max-width:48rem;margin:2rem auto}"
         "section.slide{border:1px solid #ccc;border-radius:6px;padding:.5rem 1rem;margin:1rem 0}"
         ".hl{color:#666;font-size:.9em}</style>\n</head>\n<body>\n";
  out << "<h1>" << escape_html(inst.tour_name) << "</h1>\n<p>Subject: " << escape_html(subject_text(inst.subject))
      << "</p>\n";
  for (const auto& section : inst.sections) {
    out << "<h2>" << escape_html(section.title) << "</h2>\n";
    for (const auto& slide : section.slides) {
      out << "<section class=\"slide\" id=\"" << escape_html(slide.id) << "\">\n<h3>" << escape_html(slide.title)
          << "</h3>\n<p>" << escape_html(slide.caption) << "</p>\n";
      const std::string hl = highlight_text(slide, g);
      if (!hl.empty()) out << "<p class=\"hl\">Highlighted: " << escape_html(hl) << "</p>\n";
      out << "</section>\n";
    }
  }
  if (!inst.skipped.empty()) {
    out << "<h2>Skipped</h2>\n<ul>\n";
    for (const auto& s : inst.skipped) {
      out << "<li><code>" << escape_html(s.fact_id) << "</code> rank " << s.rank << " (" << escape_html(s.section)
          << "): " << escape_html(s.reason) << ", " << escape_html(s.message) << "</li>\n";
    }
    out << "</ul>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace netour
