#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "cellgraph/error.hpp"
#include "cellgraph/repository.hpp"

#include "json.hpp"

namespace cellgraph {

/// Single-writer, multi-reader access to a repository. Readers take an
/// immutable snapshot; a writer applies its change to a private copy and
/// publishes it only after it has been persisted, so no reader ever sees a
/// half-applied mutation.
class RepositoryHandle {
public:
  explicit RepositoryHandle(Repository repo, std::optional<std::filesystem::path> persist_dir = std::nullopt);

  std::shared_ptr<const Repository> snapshot() const;

  /// Runs `change` on a copy under the writer lock, persists, publishes.
  /// Returns the new revision. Exceptions leave the published state as is.
  std::uint64_t mutate(const std::function<void(Repository&)>& change);

private:
  mutable std::mutex read_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const Repository> current_;
  std::optional<std::filesystem::path> persist_dir_;
};

/// JSON-over-HTTP facade; see docs/api.md for the endpoints. Every response
/// carries the `X-Repository-Revision` header.
class HttpService {
public:
  explicit HttpService(std::shared_ptr<RepositoryHandle> repo);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it; call run() to serve.
  int bind_any_port(const std::string& host);
  bool run();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// HTTP status for an engine error code.
int http_status(Errc code) noexcept;

// Response bodies shared by the HTTP endpoints and the command-line tool.
nlohmann::json error_json(const Error& e);
nlohmann::json resolve_json(const Repository& repo, std::string_view uri);
nlohmann::json tree_json(const Repository& repo, std::string_view path);
nlohmann::json backrefs_json(const Repository& repo, const NodeId& node);
nlohmann::json contexts_json(const Repository& repo);
nlohmann::json lint_json(const Repository& repo);

}  // namespace cellgraph
