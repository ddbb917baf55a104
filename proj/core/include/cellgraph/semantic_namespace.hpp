#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellgraph/cellstore.hpp"
#include "cellgraph/graph.hpp"
#include "cellgraph/ids.hpp"

namespace cellgraph {

/// Read-only view of the structure a path is resolved against.
struct StructureView {
  const CellStore& cells;
  const Graph& graph;
  ComponentId root;
};

struct Segment {
  std::string name;
  std::optional<std::size_t> index;  // 1-based among same-named siblings

  std::string str() const;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Absolute context path: `/`, `/name`, `/name[k]/...`.
struct SemanticPath {
  std::vector<Segment> segments;

  /// Throws Error(bad_path) with the byte offset of the problem.
  static SemanticPath parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const SemanticPath&, const SemanticPath&) = default;
};

struct ContextStep {
  ComponentId component;
  RelationId relation;

  friend bool operator==(const ContextStep&, const ContextStep&) = default;
};

/// Root-to-target chain; the last relation's child is the resolved node.
using ContextChain = std::vector<ContextStep>;

struct Resolution {
  NodeId node;
  ContextChain context;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

inline constexpr std::size_t kDefaultMaxDepth = 16;

Resolution resolve_semantic(const StructureView& view, const SemanticPath& path);

/// All simple root-to-node paths with at most `max_depth` segments, in
/// canonical form (index only where a name repeats), sorted by text.
std::vector<SemanticPath> enumerate_paths(const StructureView& view, const NodeId& node,
                                          std::size_t max_depth = kDefaultMaxDepth);

/// Walks hierarchical relations only. Accepts `a/b` or `/a/b`; `/` is root.
NodeId resolve_hierarchical(const StructureView& view, std::string_view path);
NodeId resolve_hierarchical(const StructureView& view, const std::vector<std::string>& labels);

/// Labels from the root along hierarchical parents; nullopt if the chain
/// does not reach the root.
std::optional<std::vector<std::string>> hierarchical_path(const StructureView& view, const NodeId& node);

struct DirectoryEntry {
  std::string segment;  // `name` or `name[k]` for repeated names
  std::string kind;
  NodeId node;

  friend bool operator==(const DirectoryEntry&, const DirectoryEntry&) = default;
};

std::vector<DirectoryEntry> list_directory(const StructureView& view, const SemanticPath& path);

/// Segment naming `relation` under its parent: bare if the name is unique
/// there, indexed otherwise; `always_index` forces the `[k]` form.
Segment segment_for(const Graph& graph, const RelationId& relation, bool always_index = false);

/// Path text for a context chain.
SemanticPath path_for(const Graph& graph, const ContextChain& chain, bool always_index = false);

struct ArrangedCell {
  CellId cell;
  RelationId relation;  // relation that placed the cell
  std::size_t depth = 1;  // nesting below the arranged composite

  friend bool operator==(const ArrangedCell&, const ArrangedCell&) = default;
};

/// Depth-first, position-ordered flattening of a composite down to its
/// cells. A composite already on the current descent is not entered again.
std::vector<ArrangedCell> arrangement(const Graph& graph, const ComponentId& composite);

/// "paragraph", "page", ...; throws UnknownNode.
std::string node_kind(const StructureView& view, const NodeId& node);

}  // namespace cellgraph
