#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellgraph/cellstore.hpp"
#include "cellgraph/ids.hpp"

namespace cellgraph {

enum class ComponentKind { page, section, course, site };

std::string_view component_kind_name(ComponentKind kind) noexcept;
std::optional<ComponentKind> component_kind_from_name(std::string_view name) noexcept;

struct Component {
  ComponentId id;
  ComponentKind kind = ComponentKind::page;
  Meta meta;

  friend bool operator==(const Component&, const Component&) = default;
};

/// Named, ordered, directed edge from a composite to a cell or composite.
struct Relation {
  RelationId id;
  ComponentId parent;
  std::string name;
  NodeId child;
  std::size_t position = 0;  // 1-based among the parent's relations
  bool hierarchical = false;

  friend bool operator==(const Relation&, const Relation&) = default;
};

struct ChildEntry {
  std::string name;
  NodeId child;
  RelationId relation;

  friend bool operator==(const ChildEntry&, const ChildEntry&) = default;
};

struct ReferrerEntry {
  ComponentId parent;
  std::string name;
  RelationId relation;

  friend bool operator==(const ReferrerEntry&, const ReferrerEntry&) = default;
};

using Cycle = std::vector<RelationId>;

/// Composite structure over the cell store. Cells are leaves; only
/// composites have outgoing relations. Cycles are tolerated, self-loops are
/// not, and the relations flagged hierarchical always form a forest.
class Graph {
public:
  /// Inserts or replaces a component. The kind of an existing component
  /// cannot change.
  void put_component(Component component);
  const Component& component(const ComponentId& id) const;
  const Component* find_component(const ComponentId& id) const;
  bool has_component(const ComponentId& id) const { return components_.contains(id); }
  /// Throws StillReferenced if any relation touches the component.
  void erase_component(const ComponentId& id);

  /// Inserts at `position` (1..n+1), shifting later siblings. `cells` is
  /// consulted for the existence of cell children.
  RelationId add_relation(const ComponentId& parent, std::string name, const NodeId& child,
                          std::size_t position, bool hierarchical, const CellStore& cells);
  /// Same as add_relation but with a caller-chosen id (used on import).
  void insert_relation(Relation relation, const CellStore& cells);
  void remove_relation(const RelationId& id);

  const Relation& relation(const RelationId& id) const;
  const Relation* find_relation(const RelationId& id) const;

  std::vector<ChildEntry> children(const ComponentId& parent) const;
  /// Ordered by (parent id, position).
  std::vector<ReferrerEntry> referrers(const NodeId& child, const CellStore& cells) const;
  /// Relation ids whose child is `node`, without existence checks.
  std::vector<RelationId> relations_to(const NodeId& node) const;
  /// Relation ids of a parent in position order; empty for unknown parents.
  const std::vector<RelationId>& relations_of(const ComponentId& parent) const;

  /// The single hierarchical relation into `node`, if any.
  const Relation* hierarchical_parent(const NodeId& node) const;

  /// Every elementary cycle, each as its relation sequence rotated to start
  /// at the smallest component id; sorted. Parallel relations yield
  /// distinct cycles.
  std::vector<Cycle> find_cycles() const;

  bool node_exists(const NodeId& node, const CellStore& cells) const;

  const std::map<ComponentId, Component>& components() const noexcept { return components_; }
  const std::map<RelationId, Relation>& relations() const noexcept { return relations_; }

  /// Sequence for generated relation ids ("r<N>").
  std::size_t next_relation_seq() const noexcept { return next_seq_; }
  void set_next_relation_seq(std::size_t seq) noexcept { next_seq_ = seq; }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  void renumber(const ComponentId& parent);

  std::map<ComponentId, Component> components_;
  std::map<RelationId, Relation> relations_;
  std::map<ComponentId, std::vector<RelationId>> ordered_;
  std::size_t next_seq_ = 1;
};

}  // namespace cellgraph
