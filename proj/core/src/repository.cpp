#include "cellgraph/repository.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

const LinkContext& Repository::context(const ContextId& id) const {
  auto it = contexts_.find(id);
  if (it == contexts_.end()) throw Error(Errc::unknown_context, "no link context '" + id.str() + "'");
  return it->second;
}

void Repository::set_config(RepoConfig config) {
  if (!is_component_id(config.root.str()))
    throw Error(Errc::invalid_id, "root '" + config.root.str() + "' is not a component id");
  config_ = std::move(config);
  bump();
}

void Repository::put_cell(Cell cell) {
  cells_.put(std::move(cell));
  bump();
}

void Repository::delete_cell(const CellId& id) {
  if (!cells_.contains(id)) throw Error(Errc::not_found, "no cell '" + id.str() + "'");
  auto refs = graph_.relations_to(NodeId(id));
  if (!refs.empty()) {
    std::vector<std::string> ids;
    for (const auto& r : refs) ids.push_back(r.str());
    throw Error(Errc::still_referenced, "cell '" + id.str() + "' is referenced by " + std::to_string(ids.size()) +
                                            " relation(s)", std::nullopt, std::move(ids));
  }
  cells_.erase(id);
  bump();
}

void Repository::put_component(Component component) {
  graph_.put_component(std::move(component));
  bump();
}

void Repository::delete_component(const ComponentId& id) {
  graph_.erase_component(id);
  bump();
}

RelationId Repository::add_relation(const ComponentId& parent, std::string name, const NodeId& child,
                                    std::size_t position, bool hierarchical) {
  auto id = graph_.add_relation(parent, std::move(name), child, position, hierarchical, cells_);
  bump();
  return id;
}

RelationId Repository::append_relation(const ComponentId& parent, std::string name, const NodeId& child,
                                       bool hierarchical) {
  return add_relation(parent, std::move(name), child, graph_.relations_of(parent).size() + 1, hierarchical);
}

void Repository::remove_relation(const RelationId& id) {
  graph_.remove_relation(id);
  bump();
}

void Repository::put_anchor(AnchorDef anchor) {
  validate_anchor(anchor);
  auto id = anchor.id;
  linkbase_.anchors.insert_or_assign(std::move(id), std::move(anchor));
  bump();
}

void Repository::delete_anchor(const AnchorId& id) {
  if (linkbase_.anchors.erase(id) == 0) throw Error(Errc::not_found, "no anchor '" + id.str() + "'");
  bump();
}

void Repository::put_link(LinkDef link) {
  validate_link(link);
  auto id = link.id;
  linkbase_.links.insert_or_assign(std::move(id), std::move(link));
  bump();
}

void Repository::delete_link(const LinkId& id) {
  if (linkbase_.links.erase(id) == 0) throw Error(Errc::not_found, "no link '" + id.str() + "'");
  bump();
}

void Repository::put_context(LinkContext context) {
  validate_context(context);
  auto id = context.id;
  contexts_.insert_or_assign(std::move(id), std::move(context));
  bump();
}

void Repository::delete_context(const ContextId& id) {
  if (contexts_.erase(id) == 0) throw Error(Errc::unknown_context, "no link context '" + id.str() + "'");
  bump();
}

}  // namespace cellgraph
