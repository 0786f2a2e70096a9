#include "serve.hpp"

#include <cstdlib>
#include <iostream>

#include "httplib.h"
#include "netour/service.hpp"

namespace netour {

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

void dispatch(Service& service, const httplib::Request& req, httplib::Response& res) {
  Request r;
  r.method = req.method;
  r.path = req.path;
  for (const auto& [k, v] : req.params) r.query.emplace(k, v);
  r.body = req.body;
  for (const auto& [k, file] : req.files) r.files.emplace(k, file.content);
  const Response out = service.handle(r);
  res.status = out.status;
  res.set_content(out.body.dump(), "application/json");
}

}  // namespace

int serve(const ServeOptions& options) {
  const std::string bind = options.bind.empty() ? env_or("BIND_ADDR", "127.0.0.1:8080") : options.bind;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: bind address must be host:port, got '" << bind << "'\n";
    return 2;
  }
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    std::cerr << "error: bad port in '" << bind << "'\n";
    return 2;
  }

  ServiceOptions service_options;
  service_options.data_dir = options.data_dir.empty() ? env_or("DATA_DIR", "") : options.data_dir;
  if (const std::string seed = env_or("DEFAULT_SEED", ""); !seed.empty()) {
    try {
      service_options.default_seed = std::stoull(seed);
    } catch (const std::exception&) {
      std::cerr << "error: DEFAULT_SEED must be an unsigned integer\n";
      return 2;
    }
  }

  std::unique_ptr<Service> service;
  try {
    service = std::make_unique<Service>(std::move(service_options));
  } catch (const std::exception& e) {
    std::cerr << "error: cannot load the data directory: " << e.what() << "\n";
    return 1;
  }

  httplib::Server server;
  const auto handler = [&](const httplib::Request& req, httplib::Response& res) { dispatch(*service, req, res); };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << bind << "\n";
    return 1;
  }
  return 0;
}

}  // namespace netour
