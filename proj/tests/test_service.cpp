#include <unistd.h>

#include <filesystem>

#include "doctest.h"
#include "netour/service.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using netour::Request;
using netour::Response;
using netour::Service;
using nlohmann::json;

namespace {

Response call(Service& s, const std::string& method, const std::string& path, const json& body = nullptr,
              std::map<std::string, std::string> query = {}) {
  Request r;
  r.method = method;
  r.path = path;
  r.query = std::move(query);
  if (!body.is_null()) r.body = body.dump();
  return s.handle(r);
}

netour::ServiceOptions fixed_options(const fs::path& dir = {}) {
  netour::ServiceOptions o;
  o.data_dir = dir;
  o.default_seed = 42;
  o.clock = [] { return std::int64_t{1'700'000'000'000}; };
  return o;
}

std::string upload_fixture(Service& s) {
  auto doc = json::parse(testing::read_file(testing::source_path("data/datasets/srilanka_migration.json")));
  doc["name"] = "Sri Lanka";
  const auto r = call(s, "POST", "/datasets", doc);
  REQUIRE(r.status == 201);
  return r.body["datasetId"].get<std::string>();
}

std::string start_session(Service& s, const std::string& dataset, const std::string& tour = "network-overview") {
  const auto r = call(s, "POST", "/sessions", {{"datasetId", dataset}, {"tourId", tour}});
  REQUIRE(r.status == 201);
  return r.body["sessionId"].get<std::string>();
}

Response act(Service& s, const std::string& session, const std::string& action, const json& params = json::object()) {
  return call(s, "POST", "/sessions/" + session + "/actions", {{"action", action}, {"params", params}});
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("netour-test-" + std::to_string(::getpid()));
  TempDir() { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("dataset upload reports size and capabilities") {
    Service s(fixed_options());
    const auto id = upload_fixture(s);
    const auto list = call(s, "GET", "/datasets");
    REQUIRE(list.body["datasets"].size() == 1);
    CHECK(list.body["datasets"][0]["links"] == 600);
    CHECK(list.body["datasets"][0]["name"] == "Sri Lanka");
    const auto graph = call(s, "GET", "/datasets/" + id + "/graph");
    CHECK(graph.status == 200);
    CHECK(graph.body["nodes"].size() == 25);
    CHECK(graph.body["id"] == id);
  }

  TEST_CASE("csv upload through json and multipart") {
    Service s(fixed_options());
    const auto r = call(s, "POST", "/datasets",
                        {{"nodesCsv", "id\nA\nB\n"}, {"linksCsv", "source,target,weight\nA,B,2\n"}, {"directed", true}});
    CHECK(r.status == 201);
    CHECK(r.body["capabilities"]["weighted"] == true);
    Request multi;
    multi.method = "POST";
    multi.path = "/datasets";
    multi.files = {{"nodes", "id\nA\n"}, {"links", "source,target\nA,A\n"}};
    multi.query = {{"name", "tiny"}};
    const auto m = s.handle(multi);
    CHECK(m.status == 201);
    CHECK(m.body["name"] == "tiny");
  }

  TEST_CASE("load errors map to 400 with the error code") {
    Service s(fixed_options());
    const auto r = call(s, "POST", "/datasets", {{"nodes", {{{"id", "a"}}}}, {"links", {{{"source", "a"}, {"target", "b"}}}}});
    CHECK(r.status == 400);
    CHECK(r.body["error"]["code"] == "DanglingEndpoint");
    Request bad;
    bad.method = "POST";
    bad.path = "/datasets";
    bad.body = "{nope";
    CHECK(s.handle(bad).body["error"]["code"] == "MalformedFile");
  }

  TEST_CASE("unknown resources and methods") {
    Service s(fixed_options());
    CHECK(call(s, "GET", "/nothing").status == 404);
    CHECK(call(s, "GET", "/datasets/d9/graph").status == 404);
    CHECK(call(s, "GET", "/sessions/s9").body["error"]["code"] == "UnknownSession");
    CHECK(call(s, "DELETE", "/datasets").status == 405);
    CHECK(call(s, "GET", "/tours/nope/export").status == 404);
  }

  TEST_CASE("error codes map to statuses") {
    using netour::ErrorCode;
    CHECK(netour::http_status(ErrorCode::UnknownSlide) == 404);
    CHECK(netour::http_status(ErrorCode::UnknownTag) == 400);
    CHECK(netour::http_status(ErrorCode::HiddenSlide) == 409);
    CHECK(netour::http_status(ErrorCode::NoPath) == 422);
  }

  TEST_CASE("tours list applicability for a dataset") {
    Service s(fixed_options());
    const auto plain = call(s, "POST", "/datasets", {{"nodesCsv", "id\nA\nB\n"}, {"linksCsv", "source,target\nA,B\n"}});
    const auto id = plain.body["datasetId"].get<std::string>();
    const auto r = call(s, "GET", "/tours", nullptr, {{"datasetId", id}});
    REQUIRE(r.body["tours"].size() == 10);
    for (const auto& t : r.body["tours"]) {
      if (t["id"] == "temporal-exploration") CHECK(t["applicability"]["applicable"] == false);
      if (t["id"] == "network-overview") CHECK(t["applicability"]["applicable"] == true);
    }
  }

  TEST_CASE("a session walks, extends and stars") {
    Service s(fixed_options());
    const auto ds = upload_fixture(s);
    const auto start = call(s, "POST", "/sessions", {{"datasetId", ds}, {"tourId", "network-overview"}});
    CHECK(start.body["seed"] == 42);
    CHECK(start.body["firstSlide"]["layout"]["mode"] == "geographic");
    const auto sid = start.body["sessionId"].get<std::string>();
    const auto ext = act(s, sid, "extendSlide", {{"slideId", "overall.weakest-link#1"}});
    CHECK(ext.status == 200);
    CHECK(ext.body["detour"]["source"] == "rankExtension");
    CHECK(ext.body["detour"]["inserted"] == json::array({"overall.weakest-link#2", "overall.weakest-link#3"}));
    CHECK(act(s, sid, "star").status == 200);
    const auto starred = call(s, "GET", "/sessions/" + sid + "/starred");
    CHECK(starred.body["starred"].size() == 1);
    CHECK(act(s, sid, "jumpTo", {{"slideId", "zz#1"}}).status == 404);
    act(s, sid, "setTagFilter", {{"tags", {"weight"}}});
    CHECK(act(s, sid, "jumpTo", {{"slideId", "overall.node-count#1"}}).status == 409);
    CHECK(act(s, sid, "setTagFilter", {{"tags", {"colour"}}}).status == 400);
    CHECK(call(s, "GET", "/sessions/" + sid + "/log").body["events"].size() == 4);
  }

  TEST_CASE("identical requests give identical responses with a fixed clock and seed") {
    const auto run = [] {
      Service s(fixed_options());
      const auto ds = upload_fixture(s);
      const auto sid = start_session(s, ds, "centrality-exploration");
      json out = json::array();
      out.push_back(act(s, sid, "extendSection").body);
      out.push_back(act(s, sid, "next").body);
      out.push_back(act(s, sid, "extendSlide").body);
      out.push_back(call(s, "GET", "/sessions/" + sid).body);
      return out.dump();
    };
    CHECK(run() == run());
  }

  TEST_CASE("saved edits become tours and can be exported") {
    Service s(fixed_options());
    const auto ds = upload_fixture(s);
    const auto sid = start_session(s, ds);
    act(s, sid, "editTour", {{"ops", {{{"op", "rename"}, {"id", "network-overview"}, {"name", "Mine"}}}}});
    const auto saved = call(s, "POST", "/tours", {{"sessionId", sid}});
    CHECK(saved.status == 201);
    CHECK(saved.body["tourId"] == "network-overview-2");
    const auto exported = call(s, "GET", "/tours/network-overview-2/export");
    CHECK(exported.body["name"] == "Mine");
    CHECK(call(s, "GET", "/tours").body["tours"].size() == 11);
    const auto other = start_session(s, ds, "network-overview-2");
    CHECK(call(s, "GET", "/sessions/" + other).status == 200);
  }

  TEST_CASE("state survives a restart through the data directory") {
    TempDir dir;
    std::string sid;
    json before;
    {
      Service s(fixed_options(dir.path));
      const auto ds = upload_fixture(s);
      sid = start_session(s, ds);
      act(s, sid, "next");
      act(s, sid, "extendSection");
      act(s, sid, "star");
      call(s, "POST", "/tours", json::parse(testing::read_file(testing::source_path("data/tours/07-ego-network.json"))));
      before = call(s, "GET", "/sessions/" + sid).body;
    }
    Service again(fixed_options(dir.path));
    CHECK(call(again, "GET", "/sessions/" + sid).body == before);
    CHECK(call(again, "GET", "/datasets").body["datasets"].size() == 1);
    CHECK(call(again, "GET", "/tours").body["tours"].size() == 11);
    const auto ds2 = upload_fixture(again);
    CHECK(ds2 == "d2");
  }

  TEST_CASE("terminology update changes captions") {
    Service s(fixed_options());
    const auto ds = upload_fixture(s);
    const auto put = call(s, "PUT", "/datasets/" + ds + "/terminology", {{"linkNoun", "flow"}});
    CHECK(put.status == 200);
    const auto start = call(s, "POST", "/sessions", {{"datasetId", ds}, {"tourId", "network-overview"}});
    const auto sid = start.body["sessionId"].get<std::string>();
    const auto r = act(s, sid, "jumpTo", {{"slideId", "overall.link-count#1"}});
    CHECK(r.body["slide"]["caption"] == "This network has 600 flows.");
  }

  TEST_CASE("facts can be filtered by tags") {
    Service s(fixed_options());
    const auto r = call(s, "GET", "/facts", nullptr, {{"tags", "time"}});
    REQUIRE(r.status == 200);
    CHECK(!r.body["facts"].empty());
    CHECK(call(s, "GET", "/facts", nullptr, {{"tags", "nope"}}).status == 400);
    CHECK(call(s, "GET", "/concepts").status == 200);
  }
}
