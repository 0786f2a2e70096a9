#include <cmath>
#include <set>

#include "doctest.h"
#include "netour/detour.hpp"
#include "netour/error.hpp"
#include "netour/session.hpp"
#include "support.hpp"

using netour::FactRegistry;

namespace {

// Reference TF-IDF straight from the templates.
std::map<netour::SectionRef, netour::TagWeights> tfidf_oracle(const std::vector<netour::TourTemplate>& tours) {
  std::map<netour::SectionRef, std::array<double, netour::kTagCount>> counts;
  for (const auto& t : tours) {
    for (const auto& s : t.sections) {
      auto& c = counts[{t.id, s.title}];
      for (const auto& spec : s.slides) {
        for (auto tag : FactRegistry::builtin().at(spec.fact).tags) c[static_cast<std::size_t>(tag)] += 1.0;
      }
    }
  }
  const double sections = static_cast<double>(counts.size());
  std::array<double, netour::kTagCount> df{};
  for (const auto& [ref, c] : counts) {
    for (std::size_t k = 0; k < netour::kTagCount; ++k) df[k] += c[k] > 0 ? 1.0 : 0.0;
  }
  std::map<netour::SectionRef, netour::TagWeights> out;
  for (const auto& [ref, c] : counts) {
    double total = 0.0;
    for (double x : c) total += x;
    auto& w = out[ref];
    for (std::size_t k = 0; k < netour::kTagCount; ++k) {
      w[k] = total == 0.0 ? 0.0 : (c[k] / total) * (std::log((1.0 + sections) / (1.0 + df[k])) + 1.0);
    }
  }
  return out;
}

std::vector<std::string> slide_ids(const netour::DetourResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.slides) out.push_back(s.fact_id + "#" + std::to_string(s.rank));
  return out;
}

struct Fixture {
  std::shared_ptr<const netour::Analysis> analysis = std::make_shared<netour::Analysis>(testing::srilanka());
  std::shared_ptr<const netour::TourCorpus> corpus = netour::TourCorpus::builtin();

  netour::Session start(const std::string& tour, std::uint64_t seed = 42) {
    netour::Session s("s", analysis, corpus);
    s.apply("start", {{"tourId", tour}, {"seed", seed}});
    return s;
  }
};

}  // namespace

TEST_SUITE("detour") {
  TEST_CASE("section vectors match the tf-idf definition") {
    const auto expected = tfidf_oracle(netour::builtin_tours());
    const auto vectors = netour::build_section_vectors(netour::builtin_tours(), FactRegistry::builtin());
    REQUIRE(vectors.size() == expected.size());
    for (const auto& v : vectors) {
      const auto& w = expected.at(v.ref);
      for (std::size_t k = 0; k < netour::kTagCount; ++k) CHECK(v.weights[k] == doctest::Approx(w[k]).epsilon(1e-12));
    }
  }

  TEST_CASE("cosine similarity") {
    netour::TagWeights a{}, b{}, zero{};
    a[0] = 1.0;
    a[1] = 1.0;
    b[0] = 2.0;
    CHECK(netour::cosine(a, a) == doctest::Approx(1.0));
    CHECK(netour::cosine(a, b) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(netour::cosine(a, zero) == 0.0);
  }

  TEST_CASE("similar sections exclude the section itself and are sorted") {
    const auto corpus = netour::TourCorpus::builtin();
    const netour::SectionRef me{"network-overview", "Link information"};
    const auto sims = netour::similar_sections(me, corpus->vectors());
    CHECK(sims.size() == corpus->vectors().size() - 1);
    for (std::size_t i = 0; i < sims.size(); ++i) {
      CHECK(sims[i].ref != me);
      if (i > 0) CHECK(sims[i - 1].similarity >= sims[i].similarity);
    }
    CHECK_THROWS_AS(netour::similar_sections({"network-overview", "Nope"}, corpus->vectors()), netour::Error);
  }

  TEST_CASE("extending the weakest link inserts ranks 2 and 3") {
    Fixture f;
    auto s = f.start("network-overview");
    const auto r = s.apply("extendSlide", {{"slideId", "overall.weakest-link#1"}});
    REQUIRE(r.detour);
    CHECK(r.detour->source == netour::DetourSource::RankExtension);
    CHECK(slide_ids(*r.detour) == std::vector<std::string>{"overall.weakest-link#2", "overall.weakest-link#3"});
    const auto visible = s.visible_slides();
    std::vector<std::string> order;
    for (const auto* slide : visible) order.push_back(slide->id);
    const auto at = std::find(order.begin(), order.end(), "overall.weakest-link#1");
    REQUIRE(at + 2 < order.end());
    CHECK(*(at + 1) == "overall.weakest-link#2");
    CHECK(*(at + 2) == "overall.weakest-link#3");
  }

  TEST_CASE("a second extension of the same slide recommends by tags") {
    Fixture f;
    auto s = f.start("network-overview");
    s.apply("extendSlide", {{"slideId", "overall.weakest-link#1"}});
    const auto r = s.apply("extendSlide", {{"slideId", "overall.weakest-link#1"}});
    REQUIRE(r.detour);
    CHECK(r.detour->source == netour::DetourSource::TagRecommendation);
    CHECK(r.detour->slides.size() == netour::kDetourSize);
  }

  TEST_CASE("rank extension stops where the data ends") {
    const auto g = testing::make_graph({"a", "b"}, {{"a", "b", 3}, {"b", "a", 1}}, true);
    auto analysis = std::make_shared<netour::Analysis>(g);
    const auto& fact = FactRegistry::builtin().at("overall.weakest-link");
    const auto first = netour::evaluate(fact, *analysis, netour::Subject{}, 1);
    const auto corpus = netour::TourCorpus::builtin();
    const netour::Subject none;
    const std::vector<netour::Slide> existing{first};
    const netour::DetourContext ctx{*analysis, *corpus, netour::SubjectKind::None, none, existing};
    const auto r = netour::extend_slide(ctx, first, 1);
    CHECK(r.source == netour::DetourSource::RankExtension);
    CHECK(slide_ids(r) == std::vector<std::string>{"overall.weakest-link#2"});
  }

  TEST_CASE("section extension is deterministic for a seed") {
    Fixture f;
    const netour::Subject none;
    const auto& t = f.corpus->catalog().at("network-overview");
    const auto instance = netour::instantiate(t, *f.analysis, none);
    std::vector<netour::Slide> existing;
    for (const auto& sec : instance.sections) existing.insert(existing.end(), sec.slides.begin(), sec.slides.end());
    const netour::DetourContext ctx{*f.analysis, *f.corpus, netour::SubjectKind::None, none, existing};
    const auto first = netour::extend_section(ctx, {"network-overview", "Overview"}, 42);
    CHECK(first.slides.size() == netour::kDetourSize);
    CHECK(first.seed_used == 42);
    for (int i = 0; i < 10; ++i) CHECK(slide_ids(netour::extend_section(ctx, {"network-overview", "Overview"}, 42)) ==
                                       slide_ids(first));
    std::set<std::vector<std::string>> distinct;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      distinct.insert(slide_ids(netour::extend_section(ctx, {"network-overview", "Overview"}, seed)));
    }
    CHECK(distinct.size() > 1);
  }

  TEST_CASE("section detours never repeat a fact already shown") {
    Fixture f;
    auto s = f.start("centrality-exploration", 9);
    for (int i = 0; i < 3; ++i) s.apply("extendSection", {{"section", "Degree centrality"}});
    std::set<std::string> seen;
    for (const auto* slide : s.visible_slides()) {
      CHECK(seen.insert(slide->fact_id + "#" + std::to_string(slide->rank)).second);
    }
  }

  TEST_CASE("tag filter narrows recommendations") {
    Fixture f;
    auto s = f.start("network-overview");
    s.apply("setTagFilter", {{"tags", {"density", "links", "weight", "extrema"}}});
    const auto r = s.apply("extendSection", {{"section", "Overview"}});
    REQUIRE(r.detour);
    const auto filter = netour::TagSet{netour::Tag::Density, netour::Tag::Links, netour::Tag::Weight,
                                       netour::Tag::Extrema};
    for (const auto& slide : r.detour->slides) {
      CHECK(FactRegistry::builtin().at(slide.fact_id).tag_set().intersects(filter));
    }
  }

  TEST_CASE("an exhausted pool yields an empty detour") {
    const auto g = testing::make_graph({"a", "b"}, {{"a", "b", 1}}, true);
    auto analysis = std::make_shared<netour::Analysis>(g);
    const auto corpus = netour::TourCorpus::builtin();
    std::vector<netour::Slide> existing;
    for (const auto* t : FactRegistry::builtin().all()) {
      if (t->subject != netour::SubjectKind::None) continue;
      try {
        existing.push_back(netour::evaluate(*t, *analysis, netour::Subject{}, 1));
      } catch (const netour::Error&) {
      }
    }
    const netour::Subject none;
    netour::DetourContext ctx{*analysis, *corpus, netour::SubjectKind::None, none, existing};
    ctx.filter = netour::TagSet{netour::Tag::Clusters};
    const auto r = netour::extend_section(ctx, {"network-overview", "Overview"}, 3);
    CHECK(r.slides.empty());
  }

  TEST_CASE("detour seeds differ per counter and repeat per input") {
    CHECK(netour::detour_seed(42, 0) == netour::detour_seed(42, 0));
    CHECK(netour::detour_seed(42, 0) != netour::detour_seed(42, 1));
    CHECK(netour::detour_seed(42, 0) != netour::detour_seed(43, 0));
  }
}
