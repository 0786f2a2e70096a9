#include <filesystem>
#include <fstream>

#include "cli_runner.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using testing::run_tour;

namespace {

std::string fixture() { return "--dataset '" + testing::source_path("data/datasets/srilanka_migration.json").string() + "'"; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "netour-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate reports sizes and capabilities") {
    const auto r = run_tour("validate " + fixture());
    CHECK(r.status == 0);
    CHECK(r.out.find("cities: 25") != std::string::npos);
    CHECK(r.out.find("migration routes: 600") != std::string::npos);
    CHECK(r.out.find("temporal: yes") != std::string::npos);
  }

  TEST_CASE("run prints the tour as json") {
    const auto r = run_tour("run " + fixture() + " --tour network-overview --seed 7");
    REQUIRE(r.status == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["seed"] == 7);
    bool found = false;
    for (const auto& slide : doc["slides"]) {
      if (slide["fact"] == "overall.link-count") {
        found = true;
        CHECK(slide["values"]["value"] == 600);
        CHECK(slide["caption"] == "This network has 600 migration routes.");
      }
    }
    CHECK(found);
  }

  TEST_CASE("the same seed prints the same bytes") {
    const auto a = run_tour("run " + fixture() + " --tour ego-network --subject KND --seed 3");
    const auto b = run_tour("run " + fixture() + " --tour ego-network --subject KND --seed 3");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("exit codes separate load failures from tour failures") {
    CHECK(run_tour("run --dataset /no/such/file.json --tour network-overview 2>/dev/null").status == 1);
    const auto bad = scratch("dangling.json");
    write(bad, R"({"nodes":[{"id":"a"}],"links":[{"source":"a","target":"b"}]})");
    CHECK(run_tour("run --dataset '" + bad.string() + "' --tour network-overview 2>/dev/null").status == 1);
    CHECK(run_tour("run " + fixture() + " --tour ego-network 2>/dev/null").status == 2);
    CHECK(run_tour("run " + fixture() + " --tour no-such-tour 2>/dev/null").status == 2);
    CHECK(run_tour("run " + fixture() + " --tour ego-network --subject ZZZ 2>/dev/null").status == 2);
  }

  TEST_CASE("list-facts filters by tag") {
    const auto r = run_tour("list-facts --tags extrema");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("overall.strongest-link") != std::string::npos);
    CHECK(r.out.find("overall.node-count\t") == std::string::npos);
  }

  TEST_CASE("export output imports back unchanged") {
    const auto r = run_tour("export --tour possible-paths");
    REQUIRE(r.status == 0);
    const auto path = scratch("possible-paths.json");
    write(path, r.out);
    const auto again = run_tour("export --tour '" + path.string() + "'");
    CHECK(again.out == r.out);
  }

  TEST_CASE("markdown output for a csv dataset without links skips density") {
    const auto nodes = scratch("nodes.csv");
    const auto links = scratch("links.csv");
    write(nodes, "id,label\nA,Alpha\n");
    write(links, "source,target\n");
    const auto r = run_tour("run --nodes '" + nodes.string() + "' --links '" + links.string() +
                            "' --tour network-overview --format markdown");
    CHECK(r.status == 0);
    CHECK(r.out.find("overall.density") != std::string::npos);
    CHECK(r.out.find("DegenerateGraph") != std::string::npos);
  }
}
