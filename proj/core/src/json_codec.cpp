#include "cellgraph/json_codec.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, Errc errc) {
  if (!j.is_object()) throw Error(errc, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(errc, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key, Errc errc) {
  const auto& v = require(j, key, errc);
  if (!v.is_string()) throw Error(errc, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string id_field(const json& j, const std::string& hint, Errc errc) {
  if (j.is_object() && j.contains("id")) {
    auto id = string_field(j, "id", errc);
    if (!hint.empty() && id != hint) throw Error(errc, "body id '" + id + "' does not match '" + hint + "'");
    return id;
  }
  if (hint.empty()) throw Error(errc, "missing field 'id'");
  return hint;
}

Meta meta_field(const json& j, Errc errc) {
  Meta meta;
  if (!j.is_object() || !j.contains("meta")) return meta;
  const auto& m = j.at("meta");
  if (!m.is_object()) throw Error(errc, "field 'meta' must be an object of strings");
  for (const auto& [k, v] : m.items()) {
    if (!v.is_string()) throw Error(errc, "meta value for '" + k + "' must be a string");
    meta.emplace(k, v.get<std::string>());
  }
  return meta;
}

json meta_json(const Meta& meta) {
  json out = json::object();
  for (const auto& [k, v] : meta) out[k] = v;
  return out;
}

}  // namespace

json cell_to_json(const Cell& cell) {
  return {{"id", cell.id.str()},
          {"kind", cell_kind_name(cell.kind)},
          {"meta", meta_json(cell.meta)},
          {"content", content_string(cell)}};
}

Cell cell_from_json(const json& j, const std::string& id_hint) {
  auto id = id_field(j, id_hint, Errc::invalid_cell);
  auto kind_name = string_field(j, "kind", Errc::invalid_cell);
  auto kind = cell_kind_from_name(kind_name);
  if (!kind) throw Error(Errc::invalid_cell, "unknown cell kind '" + kind_name + "'");
  auto content = string_field(j, "content", Errc::invalid_cell);
  return make_cell(CellId(id), *kind, content, meta_field(j, Errc::invalid_cell));
}

json component_to_json(const Component& c) {
  return {{"id", c.id.str()}, {"kind", component_kind_name(c.kind)}, {"meta", meta_json(c.meta)}};
}

Component component_from_json(const json& j, const std::string& id_hint) {
  auto id = id_field(j, id_hint, Errc::invalid_id);
  auto kind_name = string_field(j, "kind", Errc::invalid_id);
  auto kind = component_kind_from_name(kind_name);
  if (!kind) throw Error(Errc::invalid_id, "unknown component kind '" + kind_name + "'");
  return Component{ComponentId(id), *kind, meta_field(j, Errc::invalid_id)};
}

json relation_to_json(const Relation& r) {
  return {{"id", r.id.str()},         {"parent", r.parent.str()},   {"name", r.name},
          {"child", r.child.str()},   {"position", r.position},     {"hierarchical", r.hierarchical}};
}

Relation relation_from_json(const json& j) {
  Relation r;
  r.id = RelationId(string_field(j, "id", Errc::invalid_id));
  r.parent = ComponentId(string_field(j, "parent", Errc::invalid_id));
  r.name = string_field(j, "name", Errc::invalid_id);
  r.child = NodeId(string_field(j, "child", Errc::invalid_id));
  const auto& pos = require(j, "position", Errc::invalid_id);
  if (!pos.is_number_unsigned()) throw Error(Errc::position_out_of_range, "position must be a positive integer");
  r.position = pos.get<std::size_t>();
  if (j.contains("hierarchical")) {
    if (!j.at("hierarchical").is_boolean()) throw Error(Errc::invalid_id, "hierarchical must be a boolean");
    r.hierarchical = j.at("hierarchical").get<bool>();
  }
  return r;
}

json predicate_to_json(const Predicate& where) {
  json out = json::array();
  for (const auto& c : where) out.push_back({{"key", c.key}, {"value", c.value}});
  return out;
}

Predicate predicate_from_json(const json& j, Errc errc) {
  if (!j.is_array()) throw Error(errc, "predicate must be an array of {key, value} clauses");
  Predicate out;
  for (const auto& c : j) out.push_back({string_field(c, "key", errc), string_field(c, "value", errc)});
  return out;
}

json anchor_to_json(const AnchorDef& a) {
  json target;
  if (const auto* cell = std::get_if<CellId>(&a.target))
    target = {{"cell", cell->str()}};
  else
    target = {{"query", predicate_to_json(std::get<Predicate>(a.target))}};
  return {{"id", a.id.str()}, {"target", target}, {"selector", format_selector(a.selector)}, {"meta", meta_json(a.meta)}};
}

AnchorDef anchor_from_json(const json& j, const std::string& id_hint) {
  AnchorDef a;
  a.id = AnchorId(id_field(j, id_hint, Errc::invalid_anchor));
  const auto& target = require(j, "target", Errc::invalid_anchor);
  if (target.is_object() && target.contains("cell"))
    a.target = CellId(string_field(target, "cell", Errc::invalid_anchor));
  else
    a.target = predicate_from_json(require(target, "query", Errc::invalid_anchor));
  a.selector = parse_selector(string_field(j, "selector", Errc::invalid_anchor));
  a.meta = meta_field(j, Errc::invalid_anchor);
  return a;
}

json link_to_json(const LinkDef& l) {
  json endpoints = json::array();
  for (const auto& ep : l.endpoints) {
    json e = {{"role", role_name(ep.role)}};
    if (const auto* id = std::get_if<AnchorId>(&ep.anchor))
      e["anchor"] = id->str();
    else
      e["query"] = predicate_to_json(std::get<Predicate>(ep.anchor));
    endpoints.push_back(std::move(e));
  }
  return {{"id", l.id.str()}, {"group", l.group}, {"endpoints", endpoints}, {"meta", meta_json(l.meta)}};
}

LinkDef link_from_json(const json& j, const std::string& id_hint) {
  LinkDef l;
  l.id = LinkId(id_field(j, id_hint, Errc::invalid_link));
  l.group = string_field(j, "group", Errc::invalid_link);
  const auto& eps = require(j, "endpoints", Errc::invalid_link);
  if (!eps.is_array()) throw Error(Errc::invalid_link, "endpoints must be an array");
  for (const auto& e : eps) {
    EndpointSpec ep;
    auto role = role_from_name(string_field(e, "role", Errc::invalid_link));
    if (!role) throw Error(Errc::invalid_link, "role must be source, destination or bidirectional");
    ep.role = *role;
    if (e.contains("anchor"))
      ep.anchor = AnchorId(string_field(e, "anchor", Errc::invalid_link));
    else
      ep.anchor = predicate_from_json(require(e, "query", Errc::invalid_link), Errc::invalid_link);
    l.endpoints.push_back(std::move(ep));
  }
  l.meta = meta_field(j, Errc::invalid_link);
  return l;
}

json context_to_json(const LinkContext& c) {
  json rules = json::array();
  for (const auto& r : c.rules) {
    json rule = {{"op", rule_op_name(r.op)}};
    if (r.op == Rule::Op::include_group || r.op == Rule::Op::exclude_group)
      rule["group"] = r.group;
    else
      rule["where"] = predicate_to_json(r.where);
    rules.push_back(std::move(rule));
  }
  return {{"id", c.id.str()}, {"name", c.name}, {"rules", rules}};
}

LinkContext context_from_json(const json& j, const std::string& id_hint) {
  LinkContext c;
  c.id = ContextId(id_field(j, id_hint, Errc::invalid_context));
  c.name = string_field(j, "name", Errc::invalid_context);
  const auto& rules = require(j, "rules", Errc::invalid_context);
  if (!rules.is_array()) throw Error(Errc::invalid_context, "rules must be an array");
  for (const auto& r : rules) {
    auto op_name = string_field(r, "op", Errc::invalid_context);
    auto op = rule_op_from_name(op_name);
    if (!op) throw Error(Errc::invalid_context, "unknown rule op '" + op_name + "'");
    Rule rule{*op, {}, {}};
    if (*op == Rule::Op::include_group || *op == Rule::Op::exclude_group)
      rule.group = string_field(r, "group", Errc::invalid_context);
    else
      rule.where = predicate_from_json(require(r, "where", Errc::invalid_context), Errc::invalid_context);
    c.rules.push_back(std::move(rule));
  }
  return c;
}

json chain_to_json(const Graph& graph, const ContextChain& chain) {
  json out = json::array();
  for (const auto& step : chain)
    out.push_back({{"component", step.component.str()},
                   {"relation", step.relation.str()},
                   {"segment", segment_for(graph, step.relation).str()}});
  return out;
}

}  // namespace cellgraph
