#include "netour/detour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "netour/error.hpp"

namespace netour {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform index in [0, n). std::uniform_int_distribution differs between
// standard libraries, which would make seeded detours platform dependent.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

std::string presence_key(std::string_view fact, int rank, const Subject& evaluated_on) {
  return std::string(fact) + "#" + std::to_string(rank) + "|" + to_json(evaluated_on).dump();
}

struct Placement {
  std::string role;
  Subject subject;
};

// Where a fact can sit in a tour of the given scope: on the tour subject, or
// on one of its parts. Without a subject only overall facts fit.
std::vector<Placement> placements(const FactTemplate& f, SubjectKind scope, const Subject& subject) {
  std::vector<Placement> out;
  if (scope == SubjectKind::None) {
    if (f.subject == SubjectKind::None) out.push_back({"", std::monostate{}});
    return out;
  }
  if (f.subject == scope) {
    out.push_back({"", subject});
    return out;
  }
  std::vector<std::string> roles;
  if (scope == SubjectKind::NodePair || scope == SubjectKind::SubgraphPair) roles = {"first", "second"};
  if (scope == SubjectKind::Path) roles = {"first", "last"};
  for (const auto& role : roles) {
    if (projected_kind(scope, role) == f.subject) out.push_back({role, project_subject(subject, role)});
  }
  return out;
}

struct Candidate {
  const FactTemplate* fact;
  int rank;
  nlohmann::json params;
  Placement where;
};

class SlideIds {
 public:
  explicit SlideIds(std::span<const Slide> existing) {
    for (const auto& s : existing) {
      ids_.insert(s.id);
      present_.insert(presence_key(s.fact_id, s.rank, s.evaluated_on));
    }
  }

  bool present(std::string_view fact, int rank, const Subject& on) const {
    return present_.count(presence_key(fact, rank, on)) != 0;
  }

  void adopt(Slide& slide, const std::string& role) {
    std::string id = slide.fact_id + "#" + std::to_string(slide.rank);
    if (!role.empty()) id += "@" + role;
    if (ids_.count(id)) {
      int n = 2;
      while (ids_.count(id + "~" + std::to_string(n))) ++n;
      id += "~" + std::to_string(n);
    }
    ids_.insert(id);
    present_.insert(presence_key(slide.fact_id, slide.rank, slide.evaluated_on));
    slide.id = std::move(id);
  }

 private:
  std::set<std::string> ids_;
  std::set<std::string> present_;
};

// Evaluates candidates in seeded random order until kDetourSize succeed.
std::vector<Slide> draw(const DetourContext& ctx, std::vector<Candidate> pool, std::uint64_t seed, SlideIds& ids) {
  std::mt19937_64 rng(seed);
  std::vector<Slide> out;
  for (std::size_t i = 0; i < pool.size() && out.size() < kDetourSize; ++i) {
    std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
    const Candidate& c = pool[i];
    if (ids.present(c.fact->id, c.rank, c.where.subject)) continue;
    try {
      Slide slide = evaluate(*c.fact, ctx.analysis, c.where.subject, c.rank, c.params);
      ids.adopt(slide, c.where.role);
      out.push_back(std::move(slide));
    } catch (const Error&) {
      // Facts that cannot be computed for this subject are passed over.
    }
  }
  return out;
}

// "fact#2@first~3" -> "first"
std::string role_of(std::string_view slide_id) {
  const auto at = slide_id.find('@');
  if (at == std::string_view::npos) return {};
  const auto end = slide_id.find('~', at);
  return std::string(slide_id.substr(at + 1, end == std::string_view::npos ? end : end - at - 1));
}

int overlap(const TagSet& a, const TagSet& b) {
  int n = 0;
  for (Tag t : a.tags()) n += b.contains(t) ? 1 : 0;
  return n;
}

}  // namespace

std::vector<SectionVector> build_section_vectors(std::span<const TourTemplate> tours, const FactRegistry& registry) {
  std::vector<SectionVector> out;
  std::vector<std::array<int, kTagCount>> counts;
  std::array<int, kTagCount> df{};
  for (const auto& tour : tours) {
    for (const auto& section : tour.sections) {
      std::array<int, kTagCount> c{};
      for (const auto& spec : section.slides) {
        for (Tag t : registry.at(spec.fact).tags) ++c[static_cast<std::size_t>(t)];
      }
      for (std::size_t i = 0; i < kTagCount; ++i) df[i] += c[i] > 0 ? 1 : 0;
      counts.push_back(c);
      out.push_back({{tour.id, section.title}, {}});
    }
  }
  const double sections = static_cast<double>(out.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    int total = 0;
    for (int c : counts[s]) total += c;
    if (total == 0) continue;
    for (std::size_t i = 0; i < kTagCount; ++i) {
      const double tf = static_cast<double>(counts[s][i]) / total;
      const double idf = std::log((1.0 + sections) / (1.0 + df[i])) + 1.0;
      out[s].weights[i] = tf * idf;
    }
  }
  return out;
}

double cosine(const TagWeights& a, const TagWeights& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::vector<SimilarSection> similar_sections(const SectionRef& current, std::span<const SectionVector> vectors) {
  const auto it = std::find_if(vectors.begin(), vectors.end(), [&](const SectionVector& v) { return v.ref == current; });
  if (it == vectors.end()) {
    throw Error(ErrorCode::UnknownSection,
                "no section '" + current.title + "' in tour '" + current.tour_id + "'");
  }
  std::vector<SimilarSection> out;
  for (const auto& v : vectors) {
    if (v.ref != current) out.push_back({v.ref, cosine(it->weights, v.weights)});
  }
  std::sort(out.begin(), out.end(), [](const SimilarSection& a, const SimilarSection& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.ref < b.ref;
  });
  return out;
}

TourCorpus::TourCorpus(TourCatalog catalog)
    : catalog_(std::move(catalog)), vectors_(build_section_vectors(catalog_.all(), catalog_.registry())) {}

double TourCorpus::tour_similarity(const std::string& a, const std::string& b) const {
  double best = 0.0;
  for (const auto& va : vectors_) {
    if (va.ref.tour_id != a) continue;
    for (const auto& vb : vectors_) {
      if (vb.ref.tour_id == b) best = std::max(best, cosine(va.weights, vb.weights));
    }
  }
  return best;
}

std::shared_ptr<const TourCorpus> TourCorpus::builtin() {
  static const auto corpus = std::make_shared<const TourCorpus>(TourCatalog::with_builtins());
  return corpus;
}

std::string_view to_string(DetourSource s) {
  return s == DetourSource::RankExtension ? "rankExtension" : "tagRecommendation";
}

std::uint64_t detour_seed(std::uint64_t session_seed, std::uint64_t counter) {
  return splitmix64(session_seed ^ splitmix64(counter));
}

DetourResult extend_slide(const DetourContext& ctx, const Slide& target, std::uint64_t seed) {
  const FactRegistry& registry = ctx.corpus.registry();
  const FactTemplate& fact = registry.at(target.fact_id);
  SlideIds ids(ctx.existing);
  DetourResult result;
  result.seed_used = seed;

  const std::string role = role_of(target.id);

  if (fact.rankable && !ids.present(fact.id, target.rank + 1, target.evaluated_on)) {
    for (int rank = target.rank + 1; rank <= target.rank + 2; ++rank) {
      try {
        Slide slide = evaluate(fact, ctx.analysis, target.evaluated_on, rank, target.params);
        ids.adopt(slide, role);
        result.slides.push_back(std::move(slide));
      } catch (const Error&) {
        break;
      }
    }
    if (!result.slides.empty()) {
      result.source = DetourSource::RankExtension;
      return result;
    }
  }

  struct Scored {
    int overlap;
    Candidate candidate;
  };
  std::vector<Scored> scored;
  const TagSet tags = fact.tag_set();
  for (const auto* f : registry.all()) {
    if (!applicable(*f, ctx.analysis.graph()) || !f->tag_set().intersects(ctx.filter)) continue;
    const int shared = overlap(f->tag_set(), tags);
    if (shared == 0) continue;
    for (auto& p : placements(*f, ctx.scope, ctx.subject)) {
      if (ids.present(f->id, 1, p.subject)) continue;
      scored.push_back({shared, {f, 1, nlohmann::json::object(), std::move(p)}});
    }
  }
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) { return a.overlap > b.overlap; });
  // Keep the closest tiers, widening until the pool can fill a detour.
  std::vector<Candidate> pool;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (pool.size() >= kDetourSize && scored[i].overlap < scored[i - 1].overlap) break;
    pool.push_back(std::move(scored[i].candidate));
  }
  result.slides = draw(ctx, std::move(pool), seed, ids);
  return result;
}

DetourResult extend_section(const DetourContext& ctx, const SectionRef& section, std::uint64_t seed) {
  const auto similar = similar_sections(section, ctx.corpus.vectors());
  const FactRegistry& registry = ctx.corpus.registry();
  SlideIds ids(ctx.existing);
  std::vector<Candidate> pool;
  std::set<std::string> pooled;
  // The three most similar sections that hold facts usable for this tour's
  // subject; sections about other kinds of subjects cannot contribute.
  std::size_t used = 0;
  for (std::size_t i = 0; i < similar.size() && used < 3 && similar[i].similarity > 0.0; ++i) {
    const TourSection* source = ctx.corpus.catalog().at(similar[i].ref.tour_id).find_section(similar[i].ref.title);
    bool usable = false;
    for (const auto& spec : source->slides) {
      const FactTemplate& f = registry.at(spec.fact);
      if (!applicable(f, ctx.analysis.graph()) || !f.tag_set().intersects(ctx.filter)) continue;
      for (auto& p : placements(f, ctx.scope, ctx.subject)) {
        usable = true;
        const std::string key = presence_key(f.id, spec.effective_rank(), p.subject);
        if (ids.present(f.id, spec.effective_rank(), p.subject) || !pooled.insert(key).second) continue;
        pool.push_back({&f, spec.effective_rank(), spec.params, std::move(p)});
      }
    }
    if (usable) ++used;
  }
  DetourResult result;
  result.source = DetourSource::TagRecommendation;
  result.seed_used = seed;
  result.slides = draw(ctx, std::move(pool), seed, ids);
  return result;
}

}  // namespace netour
