#include "cellgraph/miracle.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cellgraph/error.hpp"

namespace cellgraph {

namespace {

const std::string* meta_value(const Meta& meta, const std::string& key) {
  auto it = meta.find(key.substr(5));
  return it == meta.end() ? nullptr : &it->second;
}

template <class Lookup>
bool all_clauses(const Predicate& where, Lookup lookup) {
  return std::all_of(where.begin(), where.end(), [&](const Clause& c) {
    std::optional<std::string> v = lookup(c.key);
    return v && *v == c.value;
  });
}

auto span_key(const FragmentSpan& s) { return std::tie(s.cell, s.start_word, s.end_word); }

}  // namespace

bool matches_cell(const Predicate& where, const Cell& cell) {
  return all_clauses(where, [&](const std::string& key) -> std::optional<std::string> {
    if (key == "id") return cell.id.str();
    if (key == "kind") return std::string(cell_kind_name(cell.kind));
    if (key.starts_with("meta."))
      if (const auto* v = meta_value(cell.meta, key)) return *v;
    return std::nullopt;
  });
}

bool matches_anchor(const Predicate& where, const AnchorDef& anchor) {
  return all_clauses(where, [&](const std::string& key) -> std::optional<std::string> {
    if (key == "id") return anchor.id.str();
    if (key.starts_with("meta."))
      if (const auto* v = meta_value(anchor.meta, key)) return *v;
    return std::nullopt;
  });
}

bool matches_link(const Predicate& where, const LinkDef& link) {
  return all_clauses(where, [&](const std::string& key) -> std::optional<std::string> {
    if (key == "id") return link.id.str();
    if (key == "group") return link.group;
    if (key.starts_with("meta."))
      if (const auto* v = meta_value(link.meta, key)) return *v;
    return std::nullopt;
  });
}

bool span_less(const FragmentSpan& a, const FragmentSpan& b) { return span_key(a) < span_key(b); }
bool same_span(const FragmentSpan& a, const FragmentSpan& b) { return span_key(a) == span_key(b); }

std::vector<FragmentSpan> eval_anchor(const Repository& repo, const AnchorDef& anchor) {
  auto spans_in = [&](const Cell& cell) -> std::vector<FragmentSpan> {
    try {
      return resolve_selector(anchor.selector, cell);
    } catch (const Error& e) {
      if (e.code() == Errc::bad_node_path) return {};
      throw;
    }
  };

  if (const auto* fixed = std::get_if<CellId>(&anchor.target)) {
    const auto* cell = repo.cells().find(*fixed);
    return cell ? spans_in(*cell) : std::vector<FragmentSpan>{};
  }
  std::vector<FragmentSpan> out;
  const auto& where = std::get<Predicate>(anchor.target);
  for (const auto& [id, cell] : repo.cells().all()) {
    if (!matches_cell(where, cell)) continue;
    auto spans = spans_in(cell);
    out.insert(out.end(), spans.begin(), spans.end());
  }
  return out;
}

std::optional<Address> DestinationAddresser::address_of(const FragmentSpan& span) {
  auto it = cache_.find(span.cell);
  if (it == cache_.end()) {
    auto view = repo_.structure();
    NodeId node(span.cell);
    std::optional<Address> base;
    auto paths = enumerate_paths(view, node);
    if (paths.size() == 1) {
      base = Address{"local", std::nullopt, paths.front(), std::nullopt};
    } else if (auto hier = hierarchical_path(view, node)) {
      base = Address{"local", std::move(*hier), std::nullopt, std::nullopt};
    } else if (!paths.empty()) {
      auto chain = resolve_semantic(view, paths.front()).context;
      base = Address{"local", std::nullopt, path_for(repo_.graph(), chain, true), std::nullopt};
    }
    it = cache_.emplace(span.cell, std::move(base)).first;
  }
  if (!it->second) return std::nullopt;
  Address out = *it->second;
  out.fragment = SelectWords{span.start_word, span.end_word};
  return out;
}

std::vector<LinkInstance> eval_link(const Repository& repo, const LinkDef& link) {
  DestinationAddresser addresser(repo);
  return eval_link(repo, link, addresser);
}

std::vector<LinkInstance> eval_link(const Repository& repo, const LinkDef& link, DestinationAddresser& addresser) {
  auto by_key = [](const FragmentSpan& a, const FragmentSpan& b) { return span_less(a, b); };
  std::set<FragmentSpan, decltype(by_key)> sources(by_key), targets(by_key);

  for (const auto& ep : link.endpoints) {
    std::vector<const AnchorDef*> anchors;
    if (const auto* id = std::get_if<AnchorId>(&ep.anchor)) {
      auto it = repo.linkbase().anchors.find(*id);
      if (it != repo.linkbase().anchors.end()) anchors.push_back(&it->second);
    } else {
      for (const auto& [aid, anchor] : repo.linkbase().anchors)
        if (matches_anchor(std::get<Predicate>(ep.anchor), anchor)) anchors.push_back(&anchor);
    }
    for (const auto* anchor : anchors) {
      for (auto& span : eval_anchor(repo, *anchor)) {
        if (can_source(ep.role)) sources.insert(span);
        if (can_destination(ep.role)) targets.insert(span);
      }
    }
  }

  std::vector<LinkInstance> out;
  for (const auto& s : sources) {
    for (const auto& t : targets) {
      if (same_span(s, t)) continue;
      auto address = addresser.address_of(t);
      if (!address) continue;
      out.push_back(LinkInstance{link.id, link.group, s, t, {std::move(*address)}, std::nullopt});
    }
  }
  return out;
}

std::optional<std::size_t> deciding_rule(const LinkContext& context, const LinkDef& link) {
  std::optional<std::size_t> decided;
  bool include = false;
  for (std::size_t i = 0; i < context.rules.size(); ++i) {
    const auto& rule = context.rules[i];
    bool hit = false;
    switch (rule.op) {
      case Rule::Op::include_group:
      case Rule::Op::exclude_group:
        hit = link.group == rule.group;
        break;
      case Rule::Op::include_where:
      case Rule::Op::exclude_where:
        hit = matches_link(rule.where, link);
        break;
    }
    if (hit) {
      decided = i;
      include = rule.includes();
    }
  }
  return include ? decided : std::nullopt;
}

std::vector<LinkInstance> active_links(const Repository& repo, const LinkContext& context, const ComponentId& page) {
  if (!repo.graph().has_component(page)) throw Error(Errc::unknown_page, "no composite '" + page.str() + "'");
  std::set<CellId> on_page;
  for (const auto& arranged : arrangement(repo.graph(), page)) on_page.insert(arranged.cell);

  DestinationAddresser addresser(repo);
  std::vector<LinkInstance> out;
  for (const auto& [id, link] : repo.linkbase().links) {
    auto rule = deciding_rule(context, link);
    if (!rule) continue;
    for (auto& inst : eval_link(repo, link, addresser)) {
      if (!on_page.contains(inst.source.cell)) continue;
      inst.rule = rule;
      out.push_back(std::move(inst));
    }
  }
  return out;
}

std::vector<LinkInstance> active_links(const Repository& repo, const ContextId& context, const ComponentId& page) {
  return active_links(repo, repo.context(context), page);
}

}  // namespace cellgraph
