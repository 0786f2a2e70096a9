#include "data/embedded.hpp"
#include "netour/facts.hpp"

namespace netour {

const nlohmann::json& builtin_fact_manifest() {
  static const nlohmann::json manifest = nlohmann::json::parse(embedded::facts_json());
  return manifest;
}

const nlohmann::json& builtin_concepts() {
  static const nlohmann::json concepts = nlohmann::json::parse(embedded::concepts_json());
  return concepts;
}

}  // namespace netour
