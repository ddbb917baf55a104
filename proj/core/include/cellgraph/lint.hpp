#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cellgraph/repository.hpp"

namespace cellgraph {

enum class Severity { warning, error };

std::string_view severity_name(Severity s) noexcept;

struct Finding {
  Severity severity = Severity::warning;
  std::string code;  // cycle, dangling-anchor, dangling-endpoint, empty-link, unreachable, hierarchy, missing-root
  std::string detail;
  std::vector<std::string> subjects;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct LintReport {
  std::vector<Finding> findings;

  bool empty() const noexcept { return findings.empty(); }
  bool has_errors() const noexcept;
  std::size_t count(std::string_view code) const noexcept;
};

/// Cycles, dangling anchors and links, empty link expansions and
/// unreachable nodes are warnings; a broken hierarchical forest or a
/// missing root is an error.
LintReport lint(const Repository& repo);

std::string format_report(const LintReport& report);

}  // namespace cellgraph
