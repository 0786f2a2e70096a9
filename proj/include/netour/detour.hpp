#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "netour/facts.hpp"
#include "netour/tours.hpp"

namespace netour {

struct SectionRef {
  std::string tour_id;
  std::string title;
  friend auto operator<=>(const SectionRef&, const SectionRef&) = default;
};

using TagWeights = std::array<double, kTagCount>;

struct SectionVector {
  SectionRef ref;
  TagWeights weights{};
};

// TF-IDF tag profile of every section of every template. TF is the share of
// a section's tag occurrences, IDF is ln((1 + S) / (1 + df)) + 1.
std::vector<SectionVector> build_section_vectors(std::span<const TourTemplate> tours, const FactRegistry& registry);

// 0 when either vector is all zeros.
double cosine(const TagWeights& a, const TagWeights& b);

struct SimilarSection {
  SectionRef ref;
  double similarity = 0.0;
};

// Every other section, most similar first, ties by reference. Throws
// UnknownSection.
std::vector<SimilarSection> similar_sections(const SectionRef& current, std::span<const SectionVector> vectors);

// A tour catalog with its section vectors, immutable once built.
class TourCorpus {
 public:
  explicit TourCorpus(TourCatalog catalog);

  const TourCatalog& catalog() const { return catalog_; }
  const FactRegistry& registry() const { return catalog_.registry(); }
  std::span<const SectionVector> vectors() const { return vectors_; }
  // Highest section-to-section similarity between two tours.
  double tour_similarity(const std::string& a, const std::string& b) const;

  static std::shared_ptr<const TourCorpus> builtin();

 private:
  TourCatalog catalog_;
  std::vector<SectionVector> vectors_;
};

enum class DetourSource { RankExtension, TagRecommendation };
std::string_view to_string(DetourSource s);

struct DetourResult {
  std::vector<Slide> slides;
  DetourSource source = DetourSource::TagRecommendation;
  std::uint64_t seed_used = 0;
};

// What a detour may add to: the running tour and every slide it already
// shows, across sections.
struct DetourContext {
  const Analysis& analysis;
  const TourCorpus& corpus;
  SubjectKind scope = SubjectKind::None;
  const Subject& subject;
  std::span<const Slide> existing;
  TagSet filter = TagSet::all();
};

inline constexpr std::size_t kDetourSize = 3;

// Ranks r+1 and r+2 of a rankable fact the first time, tag-related facts
// afterwards (or for facts without ranks).
DetourResult extend_slide(const DetourContext& ctx, const Slide& target, std::uint64_t seed);

// Up to three facts drawn from the sections most similar to `section`.
// Throws UnknownSection; an empty pool yields an empty result.
DetourResult extend_section(const DetourContext& ctx, const SectionRef& section, std::uint64_t seed);

// Seed for the n-th detour of a session.
std::uint64_t detour_seed(std::uint64_t session_seed, std::uint64_t counter);

}  // namespace netour
