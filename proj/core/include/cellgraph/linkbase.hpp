#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cellgraph/cellstore.hpp"
#include "cellgraph/fragment.hpp"
#include "cellgraph/ids.hpp"

namespace cellgraph {

using AnchorId = Id<struct AnchorIdTag>;
using LinkId = Id<struct LinkIdTag>;
using ContextId = Id<struct ContextIdTag>;

/// One equality test. Keys are `id`, `kind` (cells), `group` (links) or
/// `meta.<name>`.
struct Clause {
  std::string key;
  std::string value;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Conjunction of clauses; the empty predicate matches everything.
using Predicate = std::vector<Clause>;

/// Anchor layer: selects fragments in a fixed cell or in every cell that
/// matches a query.
struct AnchorDef {
  AnchorId id;
  std::variant<CellId, Predicate> target;
  FragmentSelector selector;
  Meta meta;

  friend bool operator==(const AnchorDef&, const AnchorDef&) = default;
};

enum class Role { source, destination, bidirectional };

std::string_view role_name(Role role) noexcept;
std::optional<Role> role_from_name(std::string_view name) noexcept;
inline bool can_source(Role r) noexcept { return r != Role::destination; }
inline bool can_destination(Role r) noexcept { return r != Role::source; }

struct EndpointSpec {
  std::variant<AnchorId, Predicate> anchor;  // fixed anchor or query over anchors
  Role role = Role::source;

  friend bool operator==(const EndpointSpec&, const EndpointSpec&) = default;
};

/// Link layer: relates two or more anchor endpoints.
struct LinkDef {
  LinkId id;
  std::string group;
  std::vector<EndpointSpec> endpoints;
  Meta meta;

  friend bool operator==(const LinkDef&, const LinkDef&) = default;
};

struct Rule {
  enum class Op { include_group, exclude_group, include_where, exclude_where };
  Op op = Op::include_group;
  std::string group;  // *_group rules
  Predicate where;    // *_where rules

  bool includes() const noexcept { return op == Op::include_group || op == Op::include_where; }
  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string_view rule_op_name(Rule::Op op) noexcept;
std::optional<Rule::Op> rule_op_from_name(std::string_view name) noexcept;

/// Link-context layer: an ordered rule list deciding which links decorate
/// a view. Later matching rules override earlier ones; no match excludes.
struct LinkContext {
  ContextId id;
  std::string name;
  std::vector<Rule> rules;

  friend bool operator==(const LinkContext&, const LinkContext&) = default;
};

/// Throw Error(invalid_anchor / invalid_link / invalid_context).
void validate_anchor(const AnchorDef& anchor);
void validate_link(const LinkDef& link);
void validate_context(const LinkContext& context);

struct Linkbase {
  std::map<AnchorId, AnchorDef> anchors;
  std::map<LinkId, LinkDef> links;

  friend bool operator==(const Linkbase&, const Linkbase&) = default;
};

using ContextSet = std::map<ContextId, LinkContext>;

}  // namespace cellgraph
