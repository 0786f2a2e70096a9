#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"
#include "netour/detour.hpp"
#include "netour/error.hpp"
#include "netour/session.hpp"

namespace netour {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  // Multipart uploads: field name -> content.
  std::map<std::string, std::string> files;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

struct ServiceOptions {
  // Flat-file storage; empty keeps everything in memory.
  std::filesystem::path data_dir;
  // Seed for sessions that do not bring one; time-derived when unset.
  std::optional<std::uint64_t> default_seed;
  // Milliseconds since the epoch, stamped on session events.
  std::function<std::int64_t()> clock;
};

int http_status(ErrorCode code);
nlohmann::json error_body(ErrorCode code, const std::string& message);

// Transport-independent HTTP/JSON API over datasets, tours and sessions.
// Safe to call from several threads; actions on one session are serialized.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  Response handle(const Request& request);

 private:
  struct Dataset {
    std::string id;
    std::string name;
    std::int64_t uploaded_at = 0;
    std::shared_ptr<const Analysis> analysis;
  };
  struct SessionEntry {
    std::mutex mutex;
    std::string dataset_id;
    std::vector<std::string> tour_ids;
    std::unique_ptr<Session> session;
  };

  Response route(const Request& request);
  Response post_dataset(const Request& request);
  Response get_graph(const std::string& id);
  Response put_terminology(const std::string& id, const std::string& body);
  Response list_tours(const Request& request);
  Response post_tour(const std::string& body);
  Response export_tour(const std::string& id);
  Response post_session(const std::string& body);
  Response post_action(const std::string& id, const std::string& body);
  Response get_starred(const std::string& id);
  Response get_session(const std::string& id);

  std::shared_ptr<const Dataset> dataset(const std::string& id) const;
  std::shared_ptr<SessionEntry> session_entry(const std::string& id) const;
  std::shared_ptr<const TourCorpus> corpus_for(const std::vector<std::string>& tour_ids) const;
  nlohmann::json session_view(const Session& s, const ActionResult* result) const;
  std::int64_t now() const;

  void load_store();
  void save_dataset(const Dataset& d) const;
  void save_tour(const TourTemplate& t) const;
  void save_session(const std::string& id, const SessionEntry& e) const;

  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::shared_ptr<const TourCorpus> corpus_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::uint64_t next_dataset_ = 1;
  std::uint64_t next_session_ = 1;
};

// Slide as sent to the viewer: slide fields plus layout hints.
nlohmann::json rendered_slide(const Slide& slide, const Graph& g, const std::string& section, bool starred);

}  // namespace netour
