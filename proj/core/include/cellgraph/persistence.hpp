#pragma once

#include <filesystem>

#include "cellgraph/repository.hpp"

namespace cellgraph {

inline constexpr int kFormatVersion = 1;

/// Loads a repository directory:
///   repo.json, graph.json, linkbase.json, contexts.json, cells/<id>.json
/// Any problem is reported as Error(load_error) naming the file and reason.
Repository import_repo(const std::filesystem::path& dir);

/// Writes the repository byte-deterministically; each file is replaced
/// atomically and stale cell files are removed. Throws Error(write_error).
void export_repo(const Repository& repo, const std::filesystem::path& dir);

}  // namespace cellgraph
