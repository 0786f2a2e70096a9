#pragma once

// Random structural edits that keep a tour template valid: unique,
// non-empty section titles, no empty sections, facts that fit the scope.

#include <random>
#include <string>
#include <vector>

#include "netour/facts.hpp"
#include "netour/tours.hpp"
#include "support.hpp"

namespace testing {

inline std::vector<std::string> roles_for(netour::SubjectKind scope) {
  using K = netour::SubjectKind;
  if (scope == K::NodePair || scope == K::SubgraphPair) return {"", "first", "second"};
  if (scope == K::Path) return {"", "first", "last"};
  return {""};
}

inline netour::TourSlideSpec random_spec(std::mt19937_64& rng, netour::SubjectKind scope,
                                         const netour::FactRegistry& registry) {
  const auto roles = roles_for(scope);
  const std::string role = roles[pick(rng, roles.size())];
  const auto kind = netour::projected_kind(scope, role);
  std::vector<const netour::FactTemplate*> fits;
  for (const auto* t : registry.all()) {
    if (t->subject == netour::SubjectKind::None || t->subject == kind) fits.push_back(t);
  }
  const auto* fact = fits[pick(rng, fits.size())];
  netour::TourSlideSpec spec;
  spec.fact = fact->id;
  // Roles only matter for facts about a part of the subject.
  if (fact->subject != netour::SubjectKind::None) spec.role = role;
  if (fact->rankable && pick(rng, 2) == 0) spec.rank = 1 + static_cast<int>(pick(rng, 4));
  if (!fact->rankable && pick(rng, 5) == 0) spec.rank = 1;
  return spec;
}

inline std::string random_title(std::mt19937_64& rng) {
  static const std::vector<std::string> words{"Overview", "Détails", "\"Quoted\"", "Links", "Cities & towns",
                                              "Paths\\slashes", "Zeitreihe", "Hubs", "Tail\tend"};
  return words[pick(rng, words.size())] + " " + std::to_string(pick(rng, 1000));
}

inline bool title_taken(const netour::TourTemplate& t, const std::string& title) {
  return t.find_section(title) != nullptr;
}

inline void random_edit(std::mt19937_64& rng, netour::TourTemplate& t, const netour::FactRegistry& registry) {
  switch (pick(rng, 8)) {
    case 0:
      t.name = random_title(rng);
      break;
    case 1:
      t.description = pick(rng, 2) == 0 ? "" : random_title(rng);
      break;
    case 2: {
      std::string title = random_title(rng);
      if (title_taken(t, title)) break;
      netour::TourSection s{title, {random_spec(rng, t.scope, registry)}};
      t.sections.insert(t.sections.begin() + static_cast<long>(pick(rng, t.sections.size() + 1)), std::move(s));
      break;
    }
    case 3:
      if (t.sections.size() > 1) t.sections.erase(t.sections.begin() + static_cast<long>(pick(rng, t.sections.size())));
      break;
    case 4: {
      auto& s = t.sections[pick(rng, t.sections.size())];
      s.slides.insert(s.slides.begin() + static_cast<long>(pick(rng, s.slides.size() + 1)),
                      random_spec(rng, t.scope, registry));
      break;
    }
    case 5: {
      auto& s = t.sections[pick(rng, t.sections.size())];
      if (s.slides.size() > 1) s.slides.erase(s.slides.begin() + static_cast<long>(pick(rng, s.slides.size())));
      break;
    }
    case 6: {
      auto& from = t.sections[pick(rng, t.sections.size())];
      if (from.slides.size() < 2) break;
      const std::size_t i = pick(rng, from.slides.size());
      auto spec = from.slides[i];
      from.slides.erase(from.slides.begin() + static_cast<long>(i));
      auto& to = t.sections[pick(rng, t.sections.size())];
      to.slides.insert(to.slides.begin() + static_cast<long>(pick(rng, to.slides.size() + 1)), std::move(spec));
      break;
    }
    default: {
      const std::string title = random_title(rng);
      if (!title_taken(t, title)) t.sections[pick(rng, t.sections.size())].title = title;
      break;
    }
  }
}

// A built-in tour after 1 to 20 random edits, under a fresh id.
inline netour::TourTemplate randomly_edited_tour(std::mt19937_64& rng, const std::vector<netour::TourTemplate>& base,
                                                 const netour::FactRegistry& registry, int n) {
  auto t = base[pick(rng, base.size())];
  t.id = "edited-" + std::to_string(n);
  const std::size_t edits = 1 + pick(rng, 20);
  for (std::size_t i = 0; i < edits; ++i) random_edit(rng, t, registry);
  return t;
}

}  // namespace testing
