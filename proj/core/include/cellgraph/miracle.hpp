#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellgraph/address.hpp"
#include "cellgraph/linkbase.hpp"
#include "cellgraph/repository.hpp"

namespace cellgraph {

/// One concrete link occurrence: a source span and where it leads.
struct LinkInstance {
  LinkId link;
  std::string group;
  FragmentSpan source;
  FragmentSpan target;
  std::vector<Address> destinations;
  std::optional<std::size_t> rule;  // index of the context rule that included it

  friend bool operator==(const LinkInstance&, const LinkInstance&) = default;
};

bool matches_cell(const Predicate& where, const Cell& cell);
bool matches_anchor(const Predicate& where, const AnchorDef& anchor);
bool matches_link(const Predicate& where, const LinkDef& link);

/// Orders spans by (cell, start, end).
bool span_less(const FragmentSpan& a, const FragmentSpan& b);
bool same_span(const FragmentSpan& a, const FragmentSpan& b);

/// Anchor layer. Dangling fixed targets and missing node paths yield no spans.
std::vector<FragmentSpan> eval_anchor(const Repository& repo, const AnchorDef& anchor);

/// Canonical address of a span: the cell's only semantic path, else its
/// hierarchical path, else its first semantic path with explicit indices.
/// Cells unreachable from the root have no address.
class DestinationAddresser {
public:
  explicit DestinationAddresser(const Repository& repo) : repo_(repo) {}
  std::optional<Address> address_of(const FragmentSpan& span);

private:
  const Repository& repo_;
  std::map<CellId, std::optional<Address>> cache_;
};

/// Link layer: cross product of source-capable and destination-capable
/// instances, minus identical-span pairs; sorted by (source, target).
std::vector<LinkInstance> eval_link(const Repository& repo, const LinkDef& link);
std::vector<LinkInstance> eval_link(const Repository& repo, const LinkDef& link, DestinationAddresser& addresser);

/// Index of the rule deciding inclusion, or nullopt if the link is excluded
/// (explicitly or by default).
std::optional<std::size_t> deciding_rule(const LinkContext& context, const LinkDef& link);

/// Link-context layer: instances of included links whose source lies in a
/// cell arranged on `page`, ordered by (link id, source, target).
std::vector<LinkInstance> active_links(const Repository& repo, const LinkContext& context, const ComponentId& page);
std::vector<LinkInstance> active_links(const Repository& repo, const ContextId& context, const ComponentId& page);

}  // namespace cellgraph
