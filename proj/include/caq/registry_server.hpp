#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "caq/errors.hpp"
#include "caq/library.hpp"

namespace caq {

// In-process registry speaking the wire protocol the remote backend
// consumes: GET /components/{name} answers 200 with the component record or
// 404 with an empty body. An artificial delay can be injected before each
// response to simulate slow environments. Requests are served concurrently.
class RegistryServer {
 public:
  struct Options {
    double latency_seconds = 0.0;
    int port = 0;  // 0 picks an ephemeral port
    std::string host = "127.0.0.1";
  };

  explicit RegistryServer(LibraryDescriptor fixture)
      : RegistryServer(std::move(fixture), Options()) {}

  RegistryServer(LibraryDescriptor fixture, Options options)
      : fixture_(std::move(fixture)), options_(std::move(options)) {
    if (options_.latency_seconds < 0.0) {
      throw ValidationError("registry latency must be >= 0");
    }
    fixture_.validate();
    for (const auto& component : fixture_.components) {
      index_.emplace(component.name, &component);
    }

    // SO_REUSEADDR only: a second registry on an occupied port must fail,
    // not silently share it (httplib's default adds SO_REUSEPORT)
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                 reinterpret_cast<const char*>(&yes), sizeof(yes));
    });

    server_.Get(R"(/components/(.+))", [this](const httplib::Request& req,
                                              httplib::Response& res) {
      if (options_.latency_seconds > 0.0) {
        std::this_thread::sleep_for(
            std::chrono::duration<double>(options_.latency_seconds));
      }
      const auto it = index_.find(req.matches[1].str());
      if (it == index_.end()) {
        res.status = 404;
        return;
      }
      const ComponentRecord& record = *it->second;
      nlohmann::json body;
      body["name"] = record.name;
      body["version"] = record.version.value_or("");
      body["path"] = record.path;
      res.set_content(body.dump(), "application/json");
    });

    if (options_.port == 0) {
      port_ = server_.bind_to_any_port(options_.host);
      if (port_ < 0) {
        throw TransportError("mock registry: failed to bind an ephemeral "
                             "port on " +
                             options_.host);
      }
    } else {
      if (!server_.bind_to_port(options_.host, options_.port)) {
        throw TransportError("mock registry: failed to bind port " +
                             std::to_string(options_.port) + " on " +
                             options_.host);
      }
      port_ = options_.port;
    }
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~RegistryServer() { stop(); }

  RegistryServer(const RegistryServer&) = delete;
  RegistryServer& operator=(const RegistryServer&) = delete;

  int port() const { return port_; }

  std::string endpoint() const {
    return "http://" + options_.host + ":" + std::to_string(port_);
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

 private:
  LibraryDescriptor fixture_;
  Options options_;
  std::unordered_map<std::string, const ComponentRecord*> index_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
};

inline std::unique_ptr<RegistryServer> run_mock_registry(
    LibraryDescriptor fixture, double latency_seconds = 0.0, int port = 0) {
  RegistryServer::Options options;
  options.latency_seconds = latency_seconds;
  options.port = port;
  return std::make_unique<RegistryServer>(std::move(fixture), options);
}

}  // namespace caq
