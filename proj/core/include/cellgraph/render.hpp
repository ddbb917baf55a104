#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cellgraph/address.hpp"
#include "cellgraph/miracle.hpp"
#include "cellgraph/repository.hpp"

#include "json.hpp"

namespace cellgraph {

inline constexpr int kRenderTreeVersion = 1;

struct Decoration {
  std::size_t start_word = 1;
  std::size_t end_word = 1;
  std::vector<Address> destinations;
  LinkId link;
  std::string group;

  friend bool operator==(const Decoration&, const Decoration&) = default;
};

struct Block {
  CellId cell;        // empty for overview entries without a title cell
  std::string kind;   // cell kind, or "nav" for overview entries
  std::variant<InlineTree, std::string> content;
  std::vector<Decoration> decorations;  // sorted by (start, end), never partially overlapping
  std::size_t depth = 0;                // overview nesting, 0 on pages
  std::vector<std::string> keywords;    // overview only

  friend bool operator==(const Block&, const Block&) = default;
};

enum class RenderKind { page, overview };

struct RenderTree {
  RenderKind kind = RenderKind::page;
  ComponentId page;
  SemanticPath context_path;
  std::optional<ContextId> context;
  std::string context_name;
  std::vector<Block> blocks;

  friend bool operator==(const RenderTree&, const RenderTree&) = default;
};

/// Undecorated page: the composite at `path` flattened to its cells.
/// Throws NotRenderable for cells and site composites.
RenderTree assemble_page(const Repository& repo, const SemanticPath& path);

/// Recomputes decorations from scratch for `context`. Partially overlapping
/// candidates are settled by rule order (earlier rule wins, then link id).
RenderTree inject_links(const Repository& repo, RenderTree tree, const LinkContext& context);
RenderTree inject_links(const Repository& repo, RenderTree tree, const ContextId& context);

/// Deterministic HTML5 fragment; stripping its tags yields render_plain_text.
std::string emit_html(const RenderTree& tree);

/// Text of every block, each followed by a newline.
std::string render_plain_text(const RenderTree& tree);

/// Navigation entries for the composites reachable from `root` within
/// `depth` relations, labeled by their title atom (or relation name) and
/// linked to the composite's address.
RenderTree generate_overview(const Repository& repo, const ComponentId& root, std::size_t depth);

nlohmann::json render_tree_json(const RenderTree& tree);

}  // namespace cellgraph
