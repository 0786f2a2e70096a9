#pragma once

#include <span>
#include <string_view>

// Data files compiled into the library (generated at configure time).
namespace netour::embedded {

std::string_view facts_json();
std::string_view concepts_json();
// Bundled tour templates, ordered by file name.
std::span<const std::string_view> tour_jsons();

}  // namespace netour::embedded
