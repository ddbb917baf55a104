#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellgraph/fragment.hpp"
#include "cellgraph/semantic_namespace.hpp"

namespace cellgraph {

/// Four-layer address `cell://HOST[/HIERPATH][#CONTEXTPATH][?FRAGMENT]`.
/// `#` switches into the semantic (context) name space and `?` into the
/// within-cell fragment layer. Hierarchical segments are stored decoded.
struct Address {
  std::string host = "local";
  std::optional<std::vector<std::string>> hier_path;
  std::optional<SemanticPath> context_path;
  std::optional<FragmentSelector> fragment;

  friend bool operator==(const Address&, const Address&) = default;
};

Address parse_uri(std::string_view uri);
std::string format_uri(const Address& address);

/// Percent-encodes everything outside `A-Za-z0-9-._~` (uppercase hex).
std::string percent_encode(std::string_view raw);

struct Dereferenced {
  NodeId node;
  ContextChain context;
  std::optional<std::vector<FragmentSpan>> spans;

  friend bool operator==(const Dereferenced&, const Dereferenced&) = default;
};

/// The context path wins when present; a hierarchical-only address yields
/// an empty context.
Dereferenced dereference(const StructureView& view, const Address& address);

}  // namespace cellgraph
