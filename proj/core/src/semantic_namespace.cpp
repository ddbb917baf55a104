#include "cellgraph/semantic_namespace.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cellgraph/error.hpp"

namespace cellgraph {

std::string Segment::str() const {
  return index ? name + "[" + std::to_string(*index) + "]" : name;
}

SemanticPath SemanticPath::parse(std::string_view text) {
  if (text.empty() || text.front() != '/') throw Error(Errc::bad_path, "path must start with '/'", 0);
  SemanticPath path;
  if (text == "/") return path;
  std::size_t pos = 1;
  while (true) {
    std::size_t end = text.find('/', pos);
    std::string_view seg = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    Segment out;
    auto open = seg.find('[');
    out.name = std::string(seg.substr(0, open));
    if (!is_relation_label(out.name)) throw Error(Errc::bad_path, "invalid segment name '" + out.name + "'", pos);
    if (open != std::string_view::npos) {
      auto digits = seg.substr(open + 1);
      if (digits.size() < 2 || digits.back() != ']')
        throw Error(Errc::bad_path, "unterminated index", pos + open);
      digits.remove_suffix(1);
      if (digits.size() > 9 || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(Errc::bad_path, "index must be a positive integer", pos + open + 1);
      std::size_t k = std::stoul(std::string(digits));
      if (k < 1 || digits.front() == '0') throw Error(Errc::bad_path, "index must be a positive integer", pos + open + 1);
      out.index = k;
    }
    path.segments.push_back(std::move(out));
    if (end == std::string_view::npos) break;
    pos = end + 1;
    if (pos == text.size()) throw Error(Errc::bad_path, "trailing '/'", end);
  }
  return path;
}

std::string SemanticPath::str() const {
  if (segments.empty()) return "/";
  std::string out;
  for (const auto& s : segments) out += "/" + s.str();
  return out;
}

std::string node_kind(const StructureView& view, const NodeId& node) {
  if (node.is_composite()) return std::string(component_kind_name(view.graph.component(node.as_component()).kind));
  const auto* cell = view.cells.find(node.as_cell());
  if (!cell) throw Error(Errc::unknown_node, "no node '" + node.str() + "'");
  return std::string(cell_kind_name(cell->kind));
}

Segment segment_for(const Graph& graph, const RelationId& relation, bool always_index) {
  const auto& rel = graph.relation(relation);
  std::size_t k = 0, same = 0;
  for (const auto& rid : graph.relations_of(rel.parent)) {
    if (graph.relation(rid).name != rel.name) continue;
    ++same;
    if (rid == relation) k = same;
  }
  Segment seg{rel.name, std::nullopt};
  if (always_index || same > 1) seg.index = k;
  return seg;
}

SemanticPath path_for(const Graph& graph, const ContextChain& chain, bool always_index) {
  SemanticPath path;
  for (const auto& step : chain) path.segments.push_back(segment_for(graph, step.relation, always_index));
  return path;
}

Resolution resolve_semantic(const StructureView& view, const SemanticPath& path) {
  if (!view.graph.has_component(view.root))
    throw Error(Errc::unknown_node, "root component '" + view.root.str() + "' does not exist");
  Resolution res{NodeId(view.root), {}};
  for (const auto& seg : path.segments) {
    std::vector<RelationId> matches;
    if (res.node.is_composite()) {
      for (const auto& rid : view.graph.relations_of(res.node.as_component()))
        if (view.graph.relation(rid).name == seg.name) matches.push_back(rid);
    }
    if (matches.empty())
      throw Error(Errc::no_such_segment, "no relation '" + seg.name + "' under '" + res.node.str() + "'");
    RelationId chosen;
    if (seg.index) {
      if (*seg.index > matches.size())
        throw Error(Errc::index_out_of_range,
                    seg.str() + ": only " + std::to_string(matches.size()) + " relation(s) named '" + seg.name + "'");
      chosen = matches[*seg.index - 1];
    } else if (matches.size() > 1) {
      std::vector<std::string> ids;
      for (const auto& m : matches) ids.push_back(m.str());
      throw Error(Errc::ambiguous,
                  "'" + seg.name + "' matches " + std::to_string(matches.size()) + " relations; use " + seg.name + "[k]",
                  std::nullopt, std::move(ids));
    } else {
      chosen = matches.front();
    }
    res.context.push_back({res.node.as_component(), chosen});
    res.node = view.graph.relation(chosen).child;
  }
  return res;
}

std::vector<SemanticPath> enumerate_paths(const StructureView& view, const NodeId& node, std::size_t max_depth) {
  if (!view.graph.node_exists(node, view.cells)) throw Error(Errc::unknown_node, "no node '" + node.str() + "'");
  if (!view.graph.has_component(view.root)) return {};

  // Composites from which `node` is reachable; everything else is pruned.
  std::set<ComponentId> reaches;
  std::vector<NodeId> todo{node};
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    for (const auto& rid : view.graph.relations_to(cur)) {
      const auto& parent = view.graph.relation(rid).parent;
      if (reaches.insert(parent).second) todo.push_back(NodeId(parent));
    }
  }

  std::vector<std::string> found;
  if (node == NodeId(view.root)) found.push_back("/");
  if (!reaches.contains(view.root)) {
    std::vector<SemanticPath> out;
    for (const auto& f : found) out.push_back(SemanticPath::parse(f));
    return out;
  }

  std::set<ComponentId> on_path{view.root};
  std::string prefix;
  std::function<void(const ComponentId&, std::size_t)> walk = [&](const ComponentId& at, std::size_t depth) {
    for (const auto& rid : view.graph.relations_of(at)) {
      const auto& rel = view.graph.relation(rid);
      std::string text = "/" + segment_for(view.graph, rid).str();
      if (rel.child == node) {
        found.push_back(prefix + text);
        continue;
      }
      if (!rel.child.is_composite() || depth + 1 >= max_depth) continue;
      auto next = rel.child.as_component();
      if (on_path.contains(next) || !reaches.contains(next)) continue;
      on_path.insert(next);
      auto saved = prefix.size();
      prefix += text;
      walk(next, depth + 1);
      prefix.resize(saved);
      on_path.erase(next);
    }
  };
  if (max_depth >= 1 && node != NodeId(view.root)) walk(view.root, 0);

  std::sort(found.begin(), found.end());
  std::vector<SemanticPath> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(SemanticPath::parse(f));
  return out;
}

NodeId resolve_hierarchical(const StructureView& view, const std::vector<std::string>& labels) {
  if (!view.graph.has_component(view.root))
    throw Error(Errc::unknown_node, "root component '" + view.root.str() + "' does not exist");
  NodeId at(view.root);
  for (const auto& label : labels) {
    const Relation* next = nullptr;
    if (at.is_composite()) {
      for (const auto& rid : view.graph.relations_of(at.as_component())) {
        const auto& rel = view.graph.relation(rid);
        if (rel.hierarchical && rel.name == label) {
          next = &rel;
          break;  // hierarchical names are unique per parent
        }
      }
    }
    if (!next)
      throw Error(Errc::no_such_segment, "no hierarchical relation '" + label + "' under '" + at.str() + "'");
    at = next->child;
  }
  return at;
}

NodeId resolve_hierarchical(const StructureView& view, std::string_view path) {
  std::vector<std::string> labels;
  if (path.starts_with('/')) path.remove_prefix(1);
  std::size_t pos = 0;
  while (pos < path.size()) {
    auto end = path.find('/', pos);
    if (end == std::string_view::npos) end = path.size();
    if (end == pos) throw Error(Errc::bad_path, "empty segment in hierarchical path", pos);
    labels.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
    if (pos == path.size() && end != path.size()) throw Error(Errc::bad_path, "trailing '/'", end);
  }
  return resolve_hierarchical(view, labels);
}

std::optional<std::vector<std::string>> hierarchical_path(const StructureView& view, const NodeId& node) {
  std::vector<std::string> labels;
  NodeId at = node;
  while (at != NodeId(view.root)) {
    const auto* up = view.graph.hierarchical_parent(at);
    if (!up) return std::nullopt;
    labels.push_back(up->name);
    at = NodeId(up->parent);
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::vector<DirectoryEntry> list_directory(const StructureView& view, const SemanticPath& path) {
  auto res = resolve_semantic(view, path);
  if (!res.node.is_composite()) throw Error(Errc::not_composite, "'" + path.str() + "' names cell '" + res.node.str() + "'");
  std::vector<DirectoryEntry> out;
  for (const auto& rid : view.graph.relations_of(res.node.as_component())) {
    const auto& rel = view.graph.relation(rid);
    out.push_back({segment_for(view.graph, rid).str(), node_kind(view, rel.child), rel.child});
  }
  return out;
}

std::vector<ArrangedCell> arrangement(const Graph& graph, const ComponentId& composite) {
  if (!graph.has_component(composite)) throw Error(Errc::unknown_node, "no composite '" + composite.str() + "'");
  std::vector<ArrangedCell> out;
  std::set<ComponentId> on_path{composite};
  std::function<void(const ComponentId&, std::size_t)> walk = [&](const ComponentId& at, std::size_t depth) {
    for (const auto& rid : graph.relations_of(at)) {
      const auto& rel = graph.relation(rid);
      if (!rel.child.is_composite()) {
        out.push_back({rel.child.as_cell(), rid, depth});
        continue;
      }
      auto next = rel.child.as_component();
      if (!on_path.insert(next).second) continue;
      walk(next, depth + 1);
      on_path.erase(next);
    }
  };
  walk(composite, 1);
  return out;
}

}  // namespace cellgraph
