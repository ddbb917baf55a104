#include "cellgraph/lint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cellgraph/miracle.hpp"

namespace cellgraph {

std::string_view severity_name(Severity s) noexcept { return s == Severity::error ? "error" : "warning"; }

bool LintReport::has_errors() const noexcept {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::error; });
}

std::size_t LintReport::count(std::string_view code) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
}

LintReport lint(const Repository& repo) {
  LintReport report;
  auto add = [&](Severity sev, std::string code, std::string detail, std::vector<std::string> subjects = {}) {
    report.findings.push_back({sev, std::move(code), std::move(detail), std::move(subjects)});
  };
  const auto& graph = repo.graph();

  if (!graph.has_component(repo.config().root))
    add(Severity::error, "missing-root", "root component '" + repo.config().root.str() + "' does not exist",
        {repo.config().root.str()});

  for (const auto& cycle : graph.find_cycles()) {
    std::vector<std::string> ids;
    std::string path;
    for (const auto& rid : cycle) {
      ids.push_back(rid.str());
      const auto& rel = graph.relation(rid);
      path += rel.parent.str() + " -" + rel.name + "-> ";
    }
    path += graph.relation(cycle.front()).parent.str();
    add(Severity::warning, "cycle", "relation cycle " + path, std::move(ids));
  }

  // Hierarchical forest: one parent per node, unique names per parent, no loops.
  std::map<NodeId, std::vector<std::string>> hier_parents;
  std::map<std::pair<ComponentId, std::string>, std::vector<std::string>> hier_names;
  for (const auto& [rid, rel] : graph.relations()) {
    if (!rel.hierarchical) continue;
    hier_parents[rel.child].push_back(rid.str());
    hier_names[{rel.parent, rel.name}].push_back(rid.str());
  }
  for (const auto& [node, rels] : hier_parents)
    if (rels.size() > 1) add(Severity::error, "hierarchy", "'" + node.str() + "' has several hierarchical parents", rels);
  for (const auto& [key, rels] : hier_names)
    if (rels.size() > 1)
      add(Severity::error, "hierarchy", "'" + key.first.str() + "' has several hierarchical children named '" + key.second + "'", rels);
  for (const auto& [node, rels] : hier_parents) {
    std::set<NodeId> seen{node};
    for (const Relation* up = graph.hierarchical_parent(node); up; up = graph.hierarchical_parent(NodeId(up->parent))) {
      if (!seen.insert(NodeId(up->parent)).second) {
        add(Severity::error, "hierarchy", "hierarchical relations loop through '" + node.str() + "'", {node.str()});
        break;
      }
    }
  }

  // Reachability from the root over all relations.
  std::set<NodeId> reached;
  if (graph.has_component(repo.config().root)) {
    std::vector<ComponentId> todo{repo.config().root};
    reached.insert(NodeId(repo.config().root));
    while (!todo.empty()) {
      auto at = todo.back();
      todo.pop_back();
      for (const auto& rid : graph.relations_of(at)) {
        const auto& child = graph.relation(rid).child;
        if (reached.insert(child).second && child.is_composite()) todo.push_back(child.as_component());
      }
    }
  }
  for (const auto& [id, c] : graph.components())
    if (!reached.contains(NodeId(id)))
      add(Severity::warning, "unreachable", "component '" + id.str() + "' is unreachable from the root", {id.str()});
  for (const auto& [id, c] : repo.cells().all())
    if (!reached.contains(NodeId(id)))
      add(Severity::warning, "unreachable", "cell '" + id.str() + "' is unreachable from the root", {id.str()});

  for (const auto& [id, anchor] : repo.linkbase().anchors) {
    if (const auto* cell = std::get_if<CellId>(&anchor.target); cell && !repo.cells().contains(*cell))
      add(Severity::warning, "dangling-anchor", "anchor '" + id.str() + "' targets missing cell '" + cell->str() + "'",
          {id.str(), cell->str()});
  }

  DestinationAddresser addresser(repo);
  for (const auto& [id, link] : repo.linkbase().links) {
    for (const auto& ep : link.endpoints) {
      if (const auto* aid = std::get_if<AnchorId>(&ep.anchor); aid && !repo.linkbase().anchors.contains(*aid))
        add(Severity::warning, "dangling-endpoint", "link '" + id.str() + "' names missing anchor '" + aid->str() + "'",
            {id.str(), aid->str()});
    }
    if (eval_link(repo, link, addresser).empty())
      add(Severity::warning, "empty-link", "link '" + id.str() + "' expands to no instances", {id.str()});
  }
  return report;
}

std::string format_report(const LintReport& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += std::string(severity_name(f.severity)) + " [" + f.code + "] " + f.detail + "\n";
  }
  return out;
}

}  // namespace cellgraph
