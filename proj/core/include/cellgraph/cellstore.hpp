#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cellgraph/ids.hpp"
#include "cellgraph/inline_tree.hpp"

namespace cellgraph {

enum class CellKind { paragraph, title, author, keyword, directory_entry };

std::string_view cell_kind_name(CellKind kind) noexcept;
std::optional<CellKind> cell_kind_from_name(std::string_view name) noexcept;
inline bool is_atom(CellKind kind) noexcept { return kind != CellKind::paragraph; }

using Meta = std::map<std::string, std::string>;

/// The only holder of content bytes. Paragraphs carry an InlineTree, every
/// other kind a plain string.
struct Cell {
  CellId id;
  CellKind kind = CellKind::paragraph;
  std::variant<InlineTree, std::string> content;
  Meta meta;

  const InlineTree* tree() const { return std::get_if<InlineTree>(&content); }
  const std::string* atom() const { return std::get_if<std::string>(&content); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Builds a cell from its stored form: canonical markup for paragraphs, the
/// atom string otherwise. Markup errors surface as MalformedMarkup.
Cell make_cell(CellId id, CellKind kind, std::string_view content, Meta meta = {});

/// Canonical markup (paragraph) or the atom string.
std::string content_string(const Cell& cell);
std::string cell_plain_text(const Cell& cell);
std::size_t cell_word_count(const Cell& cell);

/// Throws Error(invalid_cell) naming the broken invariant.
void validate_cell(const Cell& cell);

/// True if `text` contains something that would encode a link target
/// (our own scheme or anchor/href markup).
bool contains_link_markup(std::string_view text);

/// Flat object store of cells keyed by id.
class CellStore {
public:
  void put(Cell cell);
  const Cell& get(const CellId& id) const;
  const Cell* find(const CellId& id) const;
  bool contains(const CellId& id) const { return cells_.contains(id); }
  void erase(const CellId& id);

  const std::map<CellId, Cell>& all() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  friend bool operator==(const CellStore&, const CellStore&) = default;

private:
  std::map<CellId, Cell> cells_;
};

}  // namespace cellgraph
