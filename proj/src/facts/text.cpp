#include <cctype>
#include <cmath>
#include <cstdio>

#include "netour/error.hpp"
#include "netour/facts.hpp"

namespace netour {

std::string format_count(std::int64_t n) {
  const bool negative = n < 0;
  std::string digits = std::to_string(negative ? -static_cast<unsigned long long>(n) : n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return negative ? "-" + out : out;
}

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "n/a" : (x > 0 ? "infinity" : "-infinity");
  if (x == 0.0) return "0";
  if (std::fabs(x) < 1e15 && x == std::floor(x)) return format_count(static_cast<std::int64_t>(x));

  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const int decimals = 2 - magnitude;
  if (decimals <= 0) {
    const double scale = std::pow(10.0, -decimals);
    return format_count(static_cast<std::int64_t>(std::llround(x / scale)) * static_cast<std::int64_t>(scale));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  // Rounding may carry into a new integer part ("999.96" -> "1000").
  if (s.find('.') == std::string::npos) {
    const double rounded = std::strtod(s.c_str(), nullptr);
    if (std::fabs(rounded) >= 1000.0) return format_count(static_cast<std::int64_t>(rounded));
  }
  return s;
}

std::string format_value(const FactValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return format_count(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
  return std::get<std::string>(v);
}

std::string ordinal(std::int64_t n) {
  const std::int64_t mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

std::string join_names(std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
    out += names[i];
  }
  return out;
}

namespace {

bool is_one(const FactValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i == 1;
  if (const auto* d = std::get_if<double>(&v)) return *d == 1.0;
  return false;
}

const FactValue& lookup(const std::map<std::string, FactValue>& values, const std::string& key,
                        std::string_view text) {
  const auto it = values.find(key);
  if (it == values.end()) {
    throw Error(ErrorCode::SchemaViolation,
                "template '" + std::string(text) + "' references unknown value '" + key + "'");
  }
  return it->second;
}

const Noun* noun_for(const std::string& name, const Terminology& t) {
  if (name == "node") return &t.node;
  if (name == "link") return &t.link;
  if (name == "weight") return &t.weight;
  if (name == "subgraph") return &t.subgraph;
  return nullptr;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Resolves "nodeNoun", "NodeNouns", "linkNoun:count", ... or returns nullopt.
std::optional<std::string> resolve_noun(const std::string& token, const std::map<std::string, FactValue>& values,
                                        const Terminology& terms, std::string_view text) {
  std::string name = token;
  std::string agree;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    agree = name.substr(colon + 1);
    name = name.substr(0, colon);
  }
  if (name.empty()) return std::nullopt;
  const bool upper = std::isupper(static_cast<unsigned char>(name[0])) != 0;
  std::string lowered = name;
  lowered[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lowered[0])));
  bool plural = false;
  if (lowered.size() > 5 && lowered.compare(lowered.size() - 5, 5, "Nouns") == 0) {
    plural = true;
    lowered.resize(lowered.size() - 5);
  } else if (lowered.size() > 4 && lowered.compare(lowered.size() - 4, 4, "Noun") == 0) {
    lowered.resize(lowered.size() - 4);
  } else {
    return std::nullopt;
  }
  const Noun* noun = noun_for(lowered, terms);
  if (!noun) return std::nullopt;
  if (!agree.empty()) plural = !is_one(lookup(values, agree, text));
  std::string out = noun->form(plural);
  return upper ? capitalize(out) : out;
}

}  // namespace

std::string render_text(std::string_view text, const std::map<std::string, FactValue>& values,
                        const Terminology& terms) {
  std::string out;
  out.reserve(text.size() + 32);
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '{') {
      if (c == '}') throw Error(ErrorCode::SchemaViolation, "unbalanced '}' in '" + std::string(text) + "'");
      out.push_back(c);
      ++i;
      continue;
    }
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::SchemaViolation, "unbalanced '{' in '" + std::string(text) + "'");
    }
    const std::string token(text.substr(i + 1, close - i - 1));
    i = close + 1;

    if (!token.empty() && token[0] == '#') {
      // {#key|one|many}
      const auto bar1 = token.find('|');
      const auto bar2 = bar1 == std::string::npos ? std::string::npos : token.find('|', bar1 + 1);
      if (bar2 == std::string::npos) {
        throw Error(ErrorCode::SchemaViolation, "bad plural choice '{" + token + "}'");
      }
      const std::string key = token.substr(1, bar1 - 1);
      const bool one = is_one(lookup(values, key, text));
      out += one ? token.substr(bar1 + 1, bar2 - bar1 - 1) : token.substr(bar2 + 1);
      continue;
    }
    if (auto noun = resolve_noun(token, values, terms, text)) {
      out += *noun;
      continue;
    }
    out += format_value(lookup(values, token, text));
  }
  return out;
}

}  // namespace netour
