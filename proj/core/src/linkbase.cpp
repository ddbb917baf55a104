#include "cellgraph/linkbase.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

std::string_view role_name(Role role) noexcept {
  switch (role) {
    case Role::source: return "source";
    case Role::destination: return "destination";
    case Role::bidirectional: return "bidirectional";
  }
  return "source";
}

std::optional<Role> role_from_name(std::string_view name) noexcept {
  for (auto r : {Role::source, Role::destination, Role::bidirectional})
    if (role_name(r) == name) return r;
  return std::nullopt;
}

std::string_view rule_op_name(Rule::Op op) noexcept {
  switch (op) {
    case Rule::Op::include_group: return "include_group";
    case Rule::Op::exclude_group: return "exclude_group";
    case Rule::Op::include_where: return "include_where";
    case Rule::Op::exclude_where: return "exclude_where";
  }
  return "include_group";
}

std::optional<Rule::Op> rule_op_from_name(std::string_view name) noexcept {
  for (auto op : {Rule::Op::include_group, Rule::Op::exclude_group, Rule::Op::include_where, Rule::Op::exclude_where})
    if (rule_op_name(op) == name) return op;
  return std::nullopt;
}

namespace {

void check_predicate(const Predicate& where, std::initializer_list<std::string_view> plain_keys, Errc errc,
                     const std::string& owner) {
  for (const auto& clause : where) {
    bool ok = clause.key.starts_with("meta.") && clause.key.size() > 5;
    for (auto k : plain_keys) ok = ok || clause.key == k;
    if (!ok) throw Error(errc, owner + ": unsupported predicate key '" + clause.key + "'");
  }
}

}  // namespace

void validate_anchor(const AnchorDef& anchor) {
  const std::string owner = "anchor '" + anchor.id.str() + "'";
  if (!is_token(anchor.id.str())) throw Error(Errc::invalid_anchor, owner + ": id is not a token");
  if (const auto* cell = std::get_if<CellId>(&anchor.target)) {
    if (!is_cell_id(cell->str())) throw Error(Errc::invalid_anchor, owner + ": target is not a cell id");
  } else {
    check_predicate(std::get<Predicate>(anchor.target), {"id", "kind"}, Errc::invalid_anchor, owner);
  }
}

void validate_link(const LinkDef& link) {
  const std::string owner = "link '" + link.id.str() + "'";
  if (!is_token(link.id.str())) throw Error(Errc::invalid_link, owner + ": id is not a token");
  if (!is_token(link.group)) throw Error(Errc::invalid_link, owner + ": group is not a token");
  if (link.endpoints.size() < 2) throw Error(Errc::invalid_link, owner + ": needs at least two endpoints");
  bool source = false, destination = false;
  for (const auto& ep : link.endpoints) {
    source = source || can_source(ep.role);
    destination = destination || can_destination(ep.role);
    if (const auto* id = std::get_if<AnchorId>(&ep.anchor)) {
      if (!is_token(id->str())) throw Error(Errc::invalid_link, owner + ": endpoint anchor id is not a token");
    } else {
      check_predicate(std::get<Predicate>(ep.anchor), {"id"}, Errc::invalid_link, owner);
    }
  }
  if (!source || !destination)
    throw Error(Errc::invalid_link, owner + ": needs a source-capable and a destination-capable endpoint");
}

void validate_context(const LinkContext& context) {
  const std::string owner = "context '" + context.id.str() + "'";
  if (!is_token(context.id.str())) throw Error(Errc::invalid_context, owner + ": id is not a token");
  if (context.name.empty()) throw Error(Errc::invalid_context, owner + ": display name is empty");
  for (const auto& rule : context.rules) {
    bool group_rule = rule.op == Rule::Op::include_group || rule.op == Rule::Op::exclude_group;
    if (group_rule && !is_token(rule.group))
      throw Error(Errc::invalid_context, owner + ": rule group '" + rule.group + "' is not a token");
    if (!group_rule) check_predicate(rule.where, {"id", "group"}, Errc::invalid_context, owner);
  }
}

}  // namespace cellgraph
