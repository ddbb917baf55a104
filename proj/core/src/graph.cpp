#include "cellgraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cellgraph/error.hpp"

namespace cellgraph {

std::string_view component_kind_name(ComponentKind kind) noexcept {
  switch (kind) {
    case ComponentKind::page: return "page";
    case ComponentKind::section: return "section";
    case ComponentKind::course: return "course";
    case ComponentKind::site: return "site";
  }
  return "page";
}

std::optional<ComponentKind> component_kind_from_name(std::string_view name) noexcept {
  for (auto k : {ComponentKind::page, ComponentKind::section, ComponentKind::course, ComponentKind::site})
    if (component_kind_name(k) == name) return k;
  return std::nullopt;
}

void Graph::put_component(Component component) {
  if (!is_component_id(component.id.str()))
    throw Error(Errc::invalid_id, "component id '" + component.id.str() + "' must be a token with the x- prefix");
  if (const auto* existing = find_component(component.id); existing && existing->kind != component.kind)
    throw Error(Errc::invalid_id, "component '" + component.id.str() + "' kind is fixed at creation");
  auto id = component.id;
  components_.insert_or_assign(std::move(id), std::move(component));
}

const Component& Graph::component(const ComponentId& id) const {
  if (const auto* c = find_component(id)) return *c;
  throw Error(Errc::unknown_node, "no component '" + id.str() + "'");
}

const Component* Graph::find_component(const ComponentId& id) const {
  auto it = components_.find(id);
  return it == components_.end() ? nullptr : &it->second;
}

void Graph::erase_component(const ComponentId& id) {
  if (!has_component(id)) throw Error(Errc::not_found, "no component '" + id.str() + "'");
  std::vector<std::string> touching;
  for (const auto& [rid, rel] : relations_)
    if (rel.parent == id || rel.child == NodeId(id)) touching.push_back(rid.str());
  if (!touching.empty())
    throw Error(Errc::still_referenced, "component '" + id.str() + "' is still related", std::nullopt,
                std::move(touching));
  components_.erase(id);
}

bool Graph::node_exists(const NodeId& node, const CellStore& cells) const {
  return node.is_composite() ? has_component(node.as_component()) : cells.contains(node.as_cell());
}

RelationId Graph::add_relation(const ComponentId& parent, std::string name, const NodeId& child,
                               std::size_t position, bool hierarchical, const CellStore& cells) {
  RelationId id("r" + std::to_string(next_seq_));
  while (relations_.contains(id)) id = RelationId("r" + std::to_string(++next_seq_));
  insert_relation(Relation{id, parent, std::move(name), child, position, hierarchical}, cells);
  return id;
}

void Graph::insert_relation(Relation rel, const CellStore& cells) {
  require_token(rel.id.str(), "relation id");
  if (relations_.contains(rel.id)) throw Error(Errc::invalid_id, "relation '" + rel.id.str() + "' already exists");
  if (!has_component(rel.parent)) throw Error(Errc::unknown_node, "no composite '" + rel.parent.str() + "'");
  if (!node_exists(rel.child, cells)) throw Error(Errc::unknown_node, "no node '" + rel.child.str() + "'");
  if (!is_relation_label(rel.name))
    throw Error(Errc::invalid_id, "relation name '" + rel.name + "' must match [a-z0-9_][a-z0-9_-]{0,31}");
  if (rel.child == NodeId(rel.parent)) throw Error(Errc::self_loop, "'" + rel.parent.str() + "' cannot contain itself");

  auto& siblings = ordered_[rel.parent];
  if (rel.position < 1 || rel.position > siblings.size() + 1) {
    auto n = siblings.size();
    if (siblings.empty()) ordered_.erase(rel.parent);
    throw Error(Errc::position_out_of_range,
                "position " + std::to_string(rel.position) + " not in 1.." + std::to_string(n + 1));
  }

  if (rel.hierarchical) {
    if (const auto* existing = hierarchical_parent(rel.child))
      throw Error(Errc::hierarchical_conflict,
                  "'" + rel.child.str() + "' already has hierarchical parent '" + existing->parent.str() + "'",
                  std::nullopt, {existing->id.str()});
    for (const auto& rid : siblings) {
      const auto& sib = relations_.at(rid);
      if (sib.hierarchical && sib.name == rel.name)
        throw Error(Errc::hierarchical_conflict,
                    "'" + rel.parent.str() + "' already has a hierarchical child named '" + rel.name + "'",
                    std::nullopt, {rid.str()});
    }
    // The new edge must not close a loop in the hierarchical forest.
    for (NodeId up(rel.parent);;) {
      if (up == rel.child)
        throw Error(Errc::hierarchical_conflict,
                    "'" + rel.child.str() + "' is a hierarchical ancestor of '" + rel.parent.str() + "'");
      const auto* hp = hierarchical_parent(up);
      if (!hp) break;
      up = NodeId(hp->parent);
    }
  }

  siblings.insert(siblings.begin() + static_cast<std::ptrdiff_t>(rel.position - 1), rel.id);
  auto parent = rel.parent;
  if (auto num = rel.id.str(); num.size() > 1 && num[0] == 'r' &&
                                std::all_of(num.begin() + 1, num.end(), [](char c) { return c >= '0' && c <= '9'; }))
    next_seq_ = std::max(next_seq_, std::stoul(num.substr(1)) + 1);
  relations_.emplace(rel.id, std::move(rel));
  renumber(parent);
}

void Graph::remove_relation(const RelationId& id) {
  auto it = relations_.find(id);
  if (it == relations_.end()) throw Error(Errc::not_found, "no relation '" + id.str() + "'");
  auto parent = it->second.parent;
  relations_.erase(it);
  auto& siblings = ordered_[parent];
  std::erase(siblings, id);
  if (siblings.empty())
    ordered_.erase(parent);
  else
    renumber(parent);
}

void Graph::renumber(const ComponentId& parent) {
  std::size_t pos = 0;
  for (const auto& rid : ordered_[parent]) relations_.at(rid).position = ++pos;
}

const Relation& Graph::relation(const RelationId& id) const {
  if (const auto* r = find_relation(id)) return *r;
  throw Error(Errc::not_found, "no relation '" + id.str() + "'");
}

const Relation* Graph::find_relation(const RelationId& id) const {
  auto it = relations_.find(id);
  return it == relations_.end() ? nullptr : &it->second;
}

const std::vector<RelationId>& Graph::relations_of(const ComponentId& parent) const {
  static const std::vector<RelationId> kNone;
  auto it = ordered_.find(parent);
  return it == ordered_.end() ? kNone : it->second;
}

std::vector<ChildEntry> Graph::children(const ComponentId& parent) const {
  if (!has_component(parent)) throw Error(Errc::unknown_node, "no composite '" + parent.str() + "'");
  std::vector<ChildEntry> out;
  for (const auto& rid : relations_of(parent)) {
    const auto& rel = relations_.at(rid);
    out.push_back({rel.name, rel.child, rel.id});
  }
  return out;
}

std::vector<ReferrerEntry> Graph::referrers(const NodeId& child, const CellStore& cells) const {
  if (!node_exists(child, cells)) throw Error(Errc::unknown_node, "no node '" + child.str() + "'");
  std::vector<const Relation*> rels;
  for (const auto& [rid, rel] : relations_)
    if (rel.child == child) rels.push_back(&rel);
  std::sort(rels.begin(), rels.end(), [](const Relation* a, const Relation* b) {
    return std::tie(a->parent, a->position) < std::tie(b->parent, b->position);
  });
  std::vector<ReferrerEntry> out;
  for (const auto* rel : rels) out.push_back({rel->parent, rel->name, rel->id});
  return out;
}

std::vector<RelationId> Graph::relations_to(const NodeId& node) const {
  std::vector<RelationId> out;
  for (const auto& [rid, rel] : relations_)
    if (rel.child == node) out.push_back(rid);
  return out;
}

const Relation* Graph::hierarchical_parent(const NodeId& node) const {
  for (const auto& [rid, rel] : relations_)
    if (rel.hierarchical && rel.child == node) return &rel;
  return nullptr;
}

// Johnson's elementary-circuit enumeration over the composite subgraph,
// with parallel relations expanded per found vertex circuit.
std::vector<Cycle> Graph::find_cycles() const {
  std::vector<ComponentId> vertices;
  std::map<ComponentId, std::size_t> index;
  for (const auto& [id, c] : components_) {
    index.emplace(id, vertices.size());
    vertices.push_back(id);
  }
  const std::size_t n = vertices.size();
  // edges[u][w] = relations from u to w in position order
  std::vector<std::map<std::size_t, std::vector<RelationId>>> edges(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& rid : relations_of(vertices[u])) {
      const auto& rel = relations_.at(rid);
      if (!rel.child.is_composite()) continue;
      auto it = index.find(rel.child.as_component());
      if (it != index.end()) edges[u][it->second].push_back(rid);
    }
  }

  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& [w, rels] : edges[u]) reverse[w].push_back(u);

  std::vector<Cycle> cycles;
  std::vector<bool> blocked(n);
  std::vector<std::set<std::size_t>> blocked_by(n);
  std::vector<std::size_t> stack;
  std::vector<bool> in_scc(n);

  auto emit = [&](std::size_t start) {
    std::vector<std::size_t> path = stack;
    path.push_back(start);
    std::vector<RelationId> current;
    std::function<void(std::size_t)> expand = [&](std::size_t i) {
      if (i + 1 == path.size()) {
        cycles.push_back(current);
        return;
      }
      for (const auto& rid : edges[path[i]].at(path[i + 1])) {
        current.push_back(rid);
        expand(i + 1);
        current.pop_back();
      }
    };
    expand(0);
  };

  std::function<void(std::size_t)> unblock = [&](std::size_t u) {
    blocked[u] = false;
    auto pending = std::move(blocked_by[u]);
    blocked_by[u].clear();
    for (auto w : pending)
      if (blocked[w]) unblock(w);
  };

  std::function<bool(std::size_t, std::size_t)> circuit = [&](std::size_t v, std::size_t s) {
    bool found = false;
    stack.push_back(v);
    blocked[v] = true;
    for (const auto& [w, rels] : edges[v]) {
      if (!in_scc[w]) continue;
      if (w == s) {
        emit(s);
        found = true;
      } else if (!blocked[w] && circuit(w, s)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (const auto& [w, rels] : edges[v])
        if (in_scc[w]) blocked_by[w].insert(v);
    }
    stack.pop_back();
    return found;
  };

  for (std::size_t s = 0; s < n; ++s) {
    // Strongly connected component of s within vertices >= s.
    auto reach = [&](bool forward) {
      std::vector<bool> seen(n);
      std::vector<std::size_t> todo{s};
      seen[s] = true;
      while (!todo.empty()) {
        auto u = todo.back();
        todo.pop_back();
        auto visit = [&](std::size_t w) {
          if (w >= s && !seen[w]) {
            seen[w] = true;
            todo.push_back(w);
          }
        };
        if (forward)
          for (const auto& [w, rels] : edges[u]) visit(w);
        else
          for (auto w : reverse[u]) visit(w);
      }
      return seen;
    };
    auto fwd = reach(true);
    auto bwd = reach(false);
    std::size_t size = 0;
    for (std::size_t v = 0; v < n; ++v) {
      in_scc[v] = v >= s && fwd[v] && bwd[v];
      size += in_scc[v];
    }
    if (size < 2) continue;
    for (std::size_t v = s; v < n; ++v) {
      blocked[v] = false;
      blocked_by[v].clear();
    }
    circuit(s, s);
  }

  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace cellgraph
