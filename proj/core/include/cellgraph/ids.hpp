#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace cellgraph {

/// Opaque string identifier, distinct per Tag so cell and component ids
/// cannot be mixed up at compile time.
template <class Tag>
class Id {
public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value_; }

private:
  std::string value_;
};

using CellId = Id<struct CellIdTag>;
using ComponentId = Id<struct ComponentIdTag>;
using RelationId = Id<struct RelationIdTag>;

/// A graph node: either a cell or a composite. Composites own the `x-` prefix.
class NodeId {
public:
  NodeId() = default;
  explicit NodeId(std::string value) : value_(std::move(value)) {}
  NodeId(const CellId& id) : value_(id.str()) {}        // NOLINT(implicit)
  NodeId(const ComponentId& id) : value_(id.str()) {}   // NOLINT(implicit)

  const std::string& str() const noexcept { return value_; }
  bool is_composite() const noexcept { return value_.starts_with("x-"); }
  CellId as_cell() const { return CellId(value_); }
  ComponentId as_component() const { return ComponentId(value_); }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << id.value_; }

private:
  std::string value_;
};

/// `[a-z0-9][a-z0-9-]{0,63}`
bool is_token(std::string_view s) noexcept;
/// Token not in the composite namespace.
bool is_cell_id(std::string_view s) noexcept;
/// Token with the reserved `x-` prefix.
bool is_component_id(std::string_view s) noexcept;
/// Relation label: `[a-z0-9_][a-z0-9_-]{0,31}`
bool is_relation_label(std::string_view s) noexcept;

/// Throws Error(invalid_id) unless `s` is a token; `what` names the field.
void require_token(std::string_view s, std::string_view what);

}  // namespace cellgraph

template <class Tag>
struct std::hash<cellgraph::Id<Tag>> {
  std::size_t operator()(const cellgraph::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

template <>
struct std::hash<cellgraph::NodeId> {
  std::size_t operator()(const cellgraph::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
