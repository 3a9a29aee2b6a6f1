#pragma once

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "caq/errors.hpp"
#include "caq/library.hpp"
#include "caq/metrics.hpp"

namespace caq {

// Result of resolving one name against a backend. raw_elapsed covers the
// resolution only, measured on a monotonic clock.
struct LookupOutcome {
  bool found = false;
  double raw_elapsed_seconds = 0.0;
  std::optional<ComponentRecord> resolved;
};

// Immutable after construction; lookups are safe from any number of threads.
class LookupBackend {
 public:
  virtual ~LookupBackend() = default;

  LookupBackend(const LookupBackend&) = delete;
  LookupBackend& operator=(const LookupBackend&) = delete;

  virtual LookupOutcome lookup(std::string_view name) const = 0;

  virtual std::size_t component_count() const {
    return descriptor_.components.size();
  }

  const LibraryDescriptor& descriptor() const { return descriptor_; }

 protected:
  explicit LookupBackend(LibraryDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  using Clock = std::chrono::steady_clock;

  static double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }

  LibraryDescriptor descriptor_;
};

namespace detail {

// Exact-name lookup via a prebuilt hash index.
class SearchBackend final : public LookupBackend {
 public:
  explicit SearchBackend(LibraryDescriptor descriptor)
      : LookupBackend(std::move(descriptor)) {
    index_.reserve(descriptor_.components.size());
    for (const auto& component : descriptor_.components) {
      index_.emplace(component.name, &component);
    }
  }

  LookupOutcome lookup(std::string_view name) const override {
    const auto start = Clock::now();
    const auto it = index_.find(name);
    const double elapsed = elapsed_seconds(start);
    if (it == index_.end()) return {false, elapsed, std::nullopt};
    return {true, elapsed, *it->second};
  }

  std::size_t component_count() const override { return index_.size(); }

 private:
  struct TransparentHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view key) const noexcept {
      return std::hash<std::string_view>{}(key);
    }
  };
  std::unordered_map<std::string_view, const ComponentRecord*, TransparentHash,
                     std::equal_to<>>
      index_;
};

// Flat alphabetically ordered name list, scanned entry by entry, the way a
// programmer reads down a drop-down.
class DropdownBackend final : public LookupBackend {
 public:
  explicit DropdownBackend(LibraryDescriptor descriptor)
      : LookupBackend(std::move(descriptor)) {
    ordered_.reserve(descriptor_.components.size());
    for (const auto& component : descriptor_.components) {
      ordered_.emplace_back(component.name, &component);
    }
    std::sort(ordered_.begin(), ordered_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  LookupOutcome lookup(std::string_view name) const override {
    const auto start = Clock::now();
    const ComponentRecord* hit = nullptr;
    for (const auto& [entry_name, record] : ordered_) {
      if (entry_name == name) {
        hit = record;
        break;
      }
    }
    const double elapsed = elapsed_seconds(start);
    if (hit == nullptr) return {false, elapsed, std::nullopt};
    return {true, elapsed, *hit};
  }

 private:
  std::vector<std::pair<std::string_view, const ComponentRecord*>> ordered_;
};

// Directory tree keyed by path segments; resolution walks the tree until a
// component with the requested name turns up.
class HierarchicalBackend final : public LookupBackend {
 public:
  explicit HierarchicalBackend(LibraryDescriptor descriptor)
      : LookupBackend(std::move(descriptor)) {
    for (const auto& component : descriptor_.components) {
      Node* node = &root_;
      for (const auto& segment : component.path) {
        node = &node->children[segment];
      }
      node->components.push_back(&component);
    }
  }

  LookupOutcome lookup(std::string_view name) const override {
    const auto start = Clock::now();
    const ComponentRecord* hit = walk(root_, name);
    const double elapsed = elapsed_seconds(start);
    if (hit == nullptr) return {false, elapsed, std::nullopt};
    return {true, elapsed, *hit};
  }

 private:
  struct Node {
    std::map<std::string, Node, std::less<>> children;
    std::vector<const ComponentRecord*> components;
  };

  static const ComponentRecord* walk(const Node& node, std::string_view name) {
    for (const ComponentRecord* record : node.components) {
      if (record->name == name) return record;
    }
    for (const auto& [segment, child] : node.children) {
      (void)segment;
      if (const ComponentRecord* hit = walk(child, name)) return hit;
    }
    return nullptr;
  }

  Node root_;
};

inline std::string url_encode_component(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string encoded;
  encoded.reserve(text.size());
  for (const char c : text) {
    const bool unreserved = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                            (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                            c == '_' || c == '~';
    if (unreserved) {
      encoded.push_back(c);
    } else {
      const auto byte = static_cast<unsigned char>(c);
      encoded.push_back('%');
      encoded.push_back(kHex[byte >> 4]);
      encoded.push_back(kHex[byte & 0x0F]);
    }
  }
  return encoded;
}

struct ParsedEndpoint {
  std::string host;
  int port = 80;
  std::string base_path;  // no trailing slash
};

inline ParsedEndpoint parse_endpoint(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.starts_with("https://")) {
    throw ValidationError("endpoint '" + url +
                          "': https endpoints are not supported; use http");
  }
  if (!url.starts_with(kScheme)) {
    throw ValidationError("endpoint '" + url +
                          "': expected the form http://host[:port][/path]");
  }
  const std::string rest = url.substr(kScheme.size());
  const auto slash = rest.find('/');
  std::string authority =
      slash == std::string::npos ? rest : rest.substr(0, slash);
  std::string base_path =
      slash == std::string::npos ? std::string() : rest.substr(slash);
  while (!base_path.empty() && base_path.back() == '/') base_path.pop_back();

  ParsedEndpoint endpoint;
  endpoint.base_path = std::move(base_path);
  const auto colon = authority.rfind(':');
  if (colon == std::string::npos) {
    endpoint.host = std::move(authority);
  } else {
    endpoint.host = authority.substr(0, colon);
    const std::string port_text = authority.substr(colon + 1);
    try {
      std::size_t consumed = 0;
      endpoint.port = std::stoi(port_text, &consumed);
      if (consumed != port_text.size()) throw std::invalid_argument(port_text);
    } catch (const std::exception&) {
      throw ValidationError("endpoint '" + url + "': invalid port '" +
                            port_text + "'");
    }
    if (endpoint.port < 1 || endpoint.port > 65535) {
      throw ValidationError("endpoint '" + url + "': port out of range");
    }
  }
  if (endpoint.host.empty()) {
    throw ValidationError("endpoint '" + url + "': host must be non-empty");
  }
  return endpoint;
}

}  // namespace detail

// Tuning for remote lookups. connection_limit bounds in-flight requests
// against one endpoint (default 1).
struct RemoteOptions {
  int connection_limit = 1;
  double connect_timeout_seconds = 5.0;
  double read_timeout_seconds = 10.0;
};

namespace detail {

class ClientPool {
 public:
  ClientPool(ParsedEndpoint endpoint, RemoteOptions options)
      : endpoint_(std::move(endpoint)), options_(options) {
    if (options_.connection_limit < 1) {
      throw ValidationError("remote connection limit must be >= 1");
    }
  }

  class Lease {
   public:
    Lease(ClientPool& pool, httplib::Client* client)
        : pool_(&pool), client_(client) {}
    ~Lease() {
      if (client_ != nullptr) pool_->release(client_);
    }
    Lease(const Lease&) = delete;
    Lease& operator=(const Lease&) = delete;
    httplib::Client& client() { return *client_; }

   private:
    ClientPool* pool_;
    httplib::Client* client_;
  };

  Lease acquire() {
    std::unique_lock lock(mutex_);
    for (;;) {
      if (!idle_.empty()) {
        httplib::Client* client = idle_.back();
        idle_.pop_back();
        return Lease(*this, client);
      }
      if (clients_.size() <
          static_cast<std::size_t>(options_.connection_limit)) {
        clients_.push_back(make_client());
        return Lease(*this, clients_.back().get());
      }
      available_.wait(lock);
    }
  }

  const ParsedEndpoint& endpoint() const { return endpoint_; }

 private:
  std::unique_ptr<httplib::Client> make_client() const {
    auto client =
        std::make_unique<httplib::Client>(endpoint_.host, endpoint_.port);
    const auto to_duration = [](double seconds) {
      return std::chrono::microseconds(
          static_cast<long long>(seconds * 1e6));
    };
    client->set_connection_timeout(
        to_duration(options_.connect_timeout_seconds));
    client->set_read_timeout(to_duration(options_.read_timeout_seconds));
    return client;
  }

  void release(httplib::Client* client) {
    {
      std::lock_guard lock(mutex_);
      idle_.push_back(client);
    }
    available_.notify_one();
  }

  ParsedEndpoint endpoint_;
  RemoteOptions options_;
  std::mutex mutex_;
  std::condition_variable available_;
  std::vector<std::unique_ptr<httplib::Client>> clients_;
  std::vector<httplib::Client*> idle_;
};

// Speaks the registry wire protocol: GET {endpoint}/components/{name},
// 200 -> found, 404 -> not found, anything else -> transport error.
class RemoteBackend final : public LookupBackend {
 public:
  RemoteBackend(LibraryDescriptor descriptor, RemoteOptions options)
      : LookupBackend(std::move(descriptor)),
        pool_(parse_endpoint(*descriptor_.remote_endpoint), options) {}

  LookupOutcome lookup(std::string_view name) const override {
    auto lease = pool_.acquire();
    const std::string path = pool_.endpoint().base_path + "/components/" +
                             url_encode_component(name);
    const auto start = Clock::now();
    httplib::Result result = lease.client().Get(path);
    const double elapsed = elapsed_seconds(start);

    if (!result) {
      throw TransportError("GET " + path + " against '" +
                           *descriptor_.remote_endpoint +
                           "' failed: " + httplib::to_string(result.error()));
    }
    if (result->status == 404) return {false, elapsed, std::nullopt};
    if (result->status != 200) {
      throw TransportError("GET " + path + " against '" +
                           *descriptor_.remote_endpoint +
                           "' returned unexpected status " +
                           std::to_string(result->status));
    }
    return {true, elapsed, parse_wire_record(result->body, path)};
  }

 private:
  ComponentRecord parse_wire_record(const std::string& body,
                                    const std::string& path) const {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& err) {
      throw TransportError("GET " + path + ": malformed response body: " +
                           err.what());
    }
    if (!doc.is_object() || !doc.contains("name") ||
        !doc["name"].is_string()) {
      throw TransportError("GET " + path +
                           ": response body missing string field 'name'");
    }
    ComponentRecord record;
    record.name = doc["name"].get<std::string>();
    if (auto it = doc.find("version");
        it != doc.end() && it->is_string() && !it->get<std::string>().empty()) {
      record.version = it->get<std::string>();
    }
    if (auto it = doc.find("path"); it != doc.end() && it->is_array()) {
      for (const auto& segment : *it) {
        if (segment.is_string()) {
          record.path.push_back(segment.get<std::string>());
        }
      }
    }
    return record;
  }

  mutable ClientPool pool_;
};

}  // namespace detail

// Builds the backend matching the descriptor's factor axes: remote
// environments talk to the configured registry endpoint, local ones resolve
// in-process per the organization type.
inline std::unique_ptr<LookupBackend> build_backend(
    LibraryDescriptor descriptor, const RemoteOptions& remote_options = {}) {
  descriptor.validate();
  if (is_remote(descriptor.environment)) {
    return std::make_unique<detail::RemoteBackend>(std::move(descriptor),
                                                   remote_options);
  }
  switch (descriptor.organization) {
    case OrganizationType::SearchBased:
      return std::make_unique<detail::SearchBackend>(std::move(descriptor));
    case OrganizationType::DropdownList:
      return std::make_unique<detail::DropdownBackend>(std::move(descriptor));
    case OrganizationType::Hierarchical:
      return std::make_unique<detail::HierarchicalBackend>(
          std::move(descriptor));
  }
  throw ValidationError("unknown organization type");
}

inline Availability availability(const LookupBackend& backend,
                                 std::string_view name) {
  return Availability(backend.lookup(name).found);
}

}  // namespace caq
