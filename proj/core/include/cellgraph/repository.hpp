#pragma once

#include <cstdint>
#include <string>

#include "cellgraph/cellstore.hpp"
#include "cellgraph/graph.hpp"
#include "cellgraph/linkbase.hpp"
#include "cellgraph/semantic_namespace.hpp"

namespace cellgraph {

struct RepoConfig {
  ComponentId root;
  std::string name;

  friend bool operator==(const RepoConfig&, const RepoConfig&) = default;
};

/// Cells, structure and linkbase behind one revision counter. Every
/// successful mutation bumps the revision exactly once; a failed one
/// leaves the repository untouched.
class Repository {
public:
  Repository() = default;
  explicit Repository(RepoConfig config) : config_(std::move(config)) {}

  const RepoConfig& config() const noexcept { return config_; }
  const CellStore& cells() const noexcept { return cells_; }
  const Graph& graph() const noexcept { return graph_; }
  const Linkbase& linkbase() const noexcept { return linkbase_; }
  const ContextSet& contexts() const noexcept { return contexts_; }
  std::uint64_t revision() const noexcept { return revision_; }

  StructureView structure() const { return StructureView{cells_, graph_, config_.root}; }

  const Cell& get_cell(const CellId& id) const { return cells_.get(id); }
  const LinkContext& context(const ContextId& id) const;

  void set_config(RepoConfig config);
  void put_cell(Cell cell);
  /// Throws StillReferenced listing the relations that point at the cell.
  void delete_cell(const CellId& id);
  void put_component(Component component);
  void delete_component(const ComponentId& id);
  RelationId add_relation(const ComponentId& parent, std::string name, const NodeId& child, std::size_t position,
                          bool hierarchical = false);
  /// Appends at the end of the parent's relations.
  RelationId append_relation(const ComponentId& parent, std::string name, const NodeId& child,
                             bool hierarchical = false);
  void remove_relation(const RelationId& id);
  void put_anchor(AnchorDef anchor);
  void delete_anchor(const AnchorId& id);
  void put_link(LinkDef link);
  void delete_link(const LinkId& id);
  void put_context(LinkContext context);
  void delete_context(const ContextId& id);

  /// Loader access: places relations verbatim and restores counters.
  Graph& mutable_graph() noexcept { return graph_; }
  void restore_revision(std::uint64_t revision) noexcept { revision_ = revision; }

  friend bool operator==(const Repository&, const Repository&) = default;

private:
  void bump() noexcept { ++revision_; }

  RepoConfig config_;
  CellStore cells_;
  Graph graph_;
  Linkbase linkbase_;
  ContextSet contexts_;
  std::uint64_t revision_ = 0;
};

}  // namespace cellgraph
