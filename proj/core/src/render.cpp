#include "cellgraph/render.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "cellgraph/error.hpp"

namespace cellgraph {

namespace {

Block block_for(const Cell& cell) {
  Block b;
  b.cell = cell.id;
  b.kind = std::string(cell_kind_name(cell.kind));
  b.content = cell.content;
  return b;
}

std::string block_text(const Block& block) {
  if (const auto* tree = std::get_if<InlineTree>(&block.content)) return plain_text(*tree);
  return std::get<std::string>(block.content);
}

std::vector<InlineEvent> block_events(const Block& block) {
  if (const auto* tree = std::get_if<InlineTree>(&block.content)) return linearize(*tree);
  return linearize_text(std::get<std::string>(block.content));
}

bool partially_overlaps(const Decoration& a, const Decoration& b) {
  bool intersect = a.start_word <= b.end_word && b.start_word <= a.end_word;
  bool a_in_b = b.start_word <= a.start_word && a.end_word <= b.end_word;
  bool b_in_a = a.start_word <= b.start_word && b.end_word <= a.end_word;
  return intersect && !a_in_b && !b_in_a;
}

void escape_html(std::string& out, std::string_view text, bool attribute) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out += c;
    }
  }
}

std::string_view html_tag(InlineKind kind) {
  switch (kind) {
    case InlineKind::em: return "em";
    case InlineKind::kw: return "mark";
    case InlineKind::term: return "dfn";
    default: return "span";
  }
}

// Inline content with decorations. Anchors never span element boundaries;
// they are closed before a tag and reopened after it, and one <a> carries
// every decoration active over a run (the innermost supplies the href).
void emit_inline(std::string& out, const Block& block) {
  const auto events = block_events(block);
  const auto& decos = block.decorations;

  auto active_for = [&](std::size_t word) {
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < decos.size(); ++i)
      if (decos[i].start_word <= word && word <= decos[i].end_word) set.push_back(i);
    return set;
  };

  std::vector<std::size_t> current;
  bool anchor_open = false;
  auto close_anchor = [&] {
    if (anchor_open) out += "</a>";
    anchor_open = false;
    current.clear();
  };
  auto open_anchor = [&](const std::vector<std::size_t>& set) {
    // Decorations are sorted by (start, end, link); the innermost is the narrowest, first on ties.
    std::size_t inner = set.front();
    for (auto i : set)
      if (decos[i].end_word - decos[i].start_word < decos[inner].end_word - decos[inner].start_word) inner = i;
    const auto& d = decos[inner];
    out += "<a href=\"";
    escape_html(out, d.destinations.empty() ? std::string() : format_uri(d.destinations.front()), true);
    out += "\" data-link=\"";
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k) out += ' ';
      escape_html(out, decos[set[k]].link.str(), true);
    }
    out += "\"";
    if (d.destinations.size() > 1) {
      out += " data-alt=\"";
      for (std::size_t k = 1; k < d.destinations.size(); ++k) {
        if (k > 1) out += ' ';
        escape_html(out, format_uri(d.destinations[k]), true);
      }
      out += "\"";
    }
    out += ">";
    anchor_open = true;
    current = set;
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    switch (ev.type) {
      case InlineEvent::Type::open:
        close_anchor();
        out += "<" + std::string(html_tag(ev.kind)) + ">";
        break;
      case InlineEvent::Type::close:
        close_anchor();
        out += "</" + std::string(html_tag(ev.kind)) + ">";
        break;
      case InlineEvent::Type::cite:
        close_anchor();
        out += "<cite data-ref=\"";
        escape_html(out, ev.text, true);
        out += "\"></cite>";
        break;
      case InlineEvent::Type::word: {
        auto set = active_for(ev.word);
        if (!anchor_open || set != current) {
          close_anchor();
          if (!set.empty()) open_anchor(set);
        }
        escape_html(out, ev.text, false);
        break;
      }
      case InlineEvent::Type::space: {
        if (anchor_open) {
          bool keep = i + 1 < events.size() && events[i + 1].type == InlineEvent::Type::word &&
                      active_for(events[i + 1].word) == current;
          if (!keep) close_anchor();
        }
        escape_html(out, ev.text, false);
        break;
      }
    }
  }
  close_anchor();
}

void attribute(std::string& out, std::string_view name, std::string_view value) {
  out += ' ';
  out += name;
  out += "=\"";
  escape_html(out, value, true);
  out += '"';
}

}  // namespace

RenderTree assemble_page(const Repository& repo, const SemanticPath& path) {
  auto res = resolve_semantic(repo.structure(), path);
  if (!res.node.is_composite())
    throw Error(Errc::not_renderable, "'" + path.str() + "' names cell '" + res.node.str() + "', not a page");
  const auto& component = repo.graph().component(res.node.as_component());
  if (component.kind == ComponentKind::site)
    throw Error(Errc::not_renderable, "'" + component.id.str() + "' is a site composite without page semantics");

  RenderTree tree;
  tree.page = component.id;
  tree.context_path = path;
  for (const auto& arranged : arrangement(repo.graph(), component.id))
    tree.blocks.push_back(block_for(repo.cells().get(arranged.cell)));
  return tree;
}

RenderTree inject_links(const Repository& repo, RenderTree tree, const LinkContext& context) {
  for (auto& block : tree.blocks) block.decorations.clear();
  tree.context = context.id;
  tree.context_name = context.name;

  struct Candidate {
    Decoration deco;
    std::size_t rule;
  };
  // One candidate per (cell, link, span); destinations merge.
  std::map<std::tuple<CellId, LinkId, std::size_t, std::size_t>, Candidate> merged;
  for (auto& inst : active_links(repo, context, tree.page)) {
    auto key = std::make_tuple(inst.source.cell, inst.link, inst.source.start_word, inst.source.end_word);
    auto it = merged.try_emplace(
        key, Candidate{Decoration{inst.source.start_word, inst.source.end_word, {}, inst.link, inst.group}, *inst.rule}).first;
    for (auto& d : inst.destinations) it->second.deco.destinations.push_back(std::move(d));
  }

  std::map<CellId, std::vector<Candidate>> by_cell;
  for (auto& [key, cand] : merged) {
    auto& dests = cand.deco.destinations;
    std::sort(dests.begin(), dests.end(),
              [](const Address& a, const Address& b) { return format_uri(a) < format_uri(b); });
    dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
    by_cell[std::get<0>(key)].push_back(std::move(cand));
  }

  std::map<CellId, std::vector<Decoration>> accepted;
  for (auto& [cell, cands] : by_cell) {
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.rule, a.deco.link, a.deco.start_word, a.deco.end_word) <
             std::tie(b.rule, b.deco.link, b.deco.start_word, b.deco.end_word);
    });
    auto& kept = accepted[cell];
    for (auto& cand : cands) {
      bool clash = std::any_of(kept.begin(), kept.end(),
                               [&](const Decoration& d) { return partially_overlaps(d, cand.deco); });
      if (!clash) kept.push_back(std::move(cand.deco));
    }
    std::sort(kept.begin(), kept.end(), [](const Decoration& a, const Decoration& b) {
      return std::tie(a.start_word, a.end_word, a.link) < std::tie(b.start_word, b.end_word, b.link);
    });
  }

  for (auto& block : tree.blocks) {
    auto it = accepted.find(block.cell);
    if (it != accepted.end()) block.decorations = it->second;
  }
  return tree;
}

RenderTree inject_links(const Repository& repo, RenderTree tree, const ContextId& context) {
  return inject_links(repo, std::move(tree), repo.context(context));
}

std::string render_plain_text(const RenderTree& tree) {
  std::string out;
  for (const auto& block : tree.blocks) out += block_text(block) + "\n";
  return out;
}

std::string emit_html(const RenderTree& tree) {
  std::string out;
  if (tree.kind == RenderKind::overview) {
    out += "<nav class=\"overview\"";
    attribute(out, "data-root", tree.page.str());
    out += "><ul>";
    for (const auto& block : tree.blocks) {
      out += "<li";
      attribute(out, "data-depth", std::to_string(block.depth));
      out += ">";
      emit_inline(out, block);
      out += "</li>\n";
    }
    out += "</ul></nav>";
    return out;
  }

  out += "<article class=\"page\"";
  attribute(out, "data-page", tree.page.str());
  attribute(out, "data-path", tree.context_path.str());
  if (tree.context) attribute(out, "data-context", tree.context->str());
  out += ">";
  for (const auto& block : tree.blocks) {
    out += "<div class=\"cell\"";
    attribute(out, "data-cell", block.cell.str());
    out += ">";
    if (block.kind == "paragraph") {
      out += "<p>";
      emit_inline(out, block);
      out += "</p>";
    } else if (block.kind == "title") {
      out += "<h1>";
      emit_inline(out, block);
      out += "</h1>";
    } else {
      out += "<p";
      attribute(out, "class", block.kind);
      out += ">";
      emit_inline(out, block);
      out += "</p>";
    }
    out += "</div>\n";
  }
  out += "</article>";
  return out;
}

RenderTree generate_overview(const Repository& repo, const ComponentId& root, std::size_t depth) {
  const auto& graph = repo.graph();
  if (!graph.has_component(root)) throw Error(Errc::unknown_node, "no composite '" + root.str() + "'");

  RenderTree tree;
  tree.kind = RenderKind::overview;
  tree.page = root;

  // Chain from the repository root to the overview root, for addressing.
  std::optional<ContextChain> prefix;
  auto view = repo.structure();
  if (auto paths = enumerate_paths(view, NodeId(root)); !paths.empty())
    prefix = resolve_semantic(view, paths.front()).context;
  if (prefix) tree.context_path = path_for(graph, *prefix);

  std::set<ComponentId> visited{root};
  ContextChain chain;
  std::function<void(const ComponentId&, std::size_t)> walk = [&](const ComponentId& at, std::size_t level) {
    for (const auto& rid : graph.relations_of(at)) {
      const auto& rel = graph.relation(rid);
      if (!rel.child.is_composite()) continue;
      auto child = rel.child.as_component();
      if (!visited.insert(child).second) continue;
      chain.push_back({at, rid});

      Block entry;
      entry.kind = "nav";
      entry.depth = level;
      std::string label = rel.name;
      bool titled = false;
      for (const auto& crid : graph.relations_of(child)) {
        const auto& crel = graph.relation(crid);
        if (crel.child.is_composite()) continue;
        const auto& cell = repo.cells().get(crel.child.as_cell());
        if (cell.kind == CellKind::title && !titled) {
          label = *cell.atom();
          entry.cell = cell.id;
          titled = true;
        } else if (cell.kind == CellKind::keyword) {
          entry.keywords.push_back(*cell.atom());
        }
      }
      entry.content = label;
      if (prefix) {
        ContextChain full = *prefix;
        full.insert(full.end(), chain.begin(), chain.end());
        Address addr{"local", std::nullopt, path_for(graph, full), std::nullopt};
        entry.decorations.push_back({1, std::max<std::size_t>(1, word_count(label)), {addr}, LinkId("overview"), "nav"});
      }
      tree.blocks.push_back(std::move(entry));

      if (level < depth) walk(child, level + 1);
      chain.pop_back();
    }
  };
  if (depth >= 1) walk(root, 1);
  return tree;
}

nlohmann::json render_tree_json(const RenderTree& tree) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : tree.blocks) {
    nlohmann::json decos = nlohmann::json::array();
    for (const auto& d : block.decorations) {
      nlohmann::json dests = nlohmann::json::array();
      for (const auto& a : d.destinations) dests.push_back(format_uri(a));
      decos.push_back({{"start", d.start_word}, {"end", d.end_word}, {"link", d.link.str()}, {"group", d.group},
                       {"destinations", dests}});
    }
    nlohmann::json b = {{"cell", block.cell.str()}, {"kind", block.kind}, {"text", block_text(block)},
                        {"decorations", decos}};
    if (const auto* t = std::get_if<InlineTree>(&block.content)) b["markup"] = serialize_paragraph(*t);
    if (tree.kind == RenderKind::overview) {
      b["depth"] = block.depth;
      b["keywords"] = block.keywords;
    }
    blocks.push_back(std::move(b));
  }
  nlohmann::json out = {{"v", kRenderTreeVersion},
                        {"kind", tree.kind == RenderKind::page ? "page" : "overview"},
                        {"page", tree.page.str()},
                        {"context_path", tree.context_path.str()},
                        {"blocks", blocks}};
  out["context"] = tree.context ? nlohmann::json{{"id", tree.context->str()}, {"name", tree.context_name}}
                                : nlohmann::json(nullptr);
  return out;
}

}  // namespace cellgraph
