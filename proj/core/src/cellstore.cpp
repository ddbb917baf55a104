#include "cellgraph/cellstore.hpp"

#include <algorithm>
#include <cctype>

#include "cellgraph/error.hpp"

namespace cellgraph {

std::string_view cell_kind_name(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::paragraph: return "paragraph";
    case CellKind::title: return "title";
    case CellKind::author: return "author";
    case CellKind::keyword: return "keyword";
    case CellKind::directory_entry: return "directory-entry";
  }
  return "paragraph";
}

std::optional<CellKind> cell_kind_from_name(std::string_view name) noexcept {
  for (auto k : {CellKind::paragraph, CellKind::title, CellKind::author, CellKind::keyword,
                 CellKind::directory_entry})
    if (cell_kind_name(k) == name) return k;
  return std::nullopt;
}

Cell make_cell(CellId id, CellKind kind, std::string_view content, Meta meta) {
  Cell cell{std::move(id), kind, {}, std::move(meta)};
  if (kind == CellKind::paragraph)
    cell.content = parse_paragraph(content);
  else
    cell.content = std::string(content);
  return cell;
}

std::string content_string(const Cell& cell) {
  if (const auto* t = cell.tree()) return serialize_paragraph(*t);
  return *cell.atom();
}

std::string cell_plain_text(const Cell& cell) {
  if (const auto* t = cell.tree()) return plain_text(*t);
  return *cell.atom();
}

std::size_t cell_word_count(const Cell& cell) {
  if (const auto* t = cell.tree()) return word_count(*t);
  return word_count(*cell.atom());
}

bool contains_link_markup(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.find("cell://") != std::string::npos) return true;
  if (lower.find("<a ") != std::string::npos || lower.find("<a>") != std::string::npos) return true;
  // "href" alone is an ordinary word; only an attribute assignment counts.
  for (std::size_t at = lower.find("href"); at != std::string::npos; at = lower.find("href", at + 1)) {
    std::size_t i = at + 4;
    while (i < lower.size() && is_space(lower[i])) ++i;
    if (i < lower.size() && lower[i] == '=') return true;
  }
  return false;
}

namespace {

[[noreturn]] void invalid(const Cell& cell, const std::string& what) {
  throw Error(Errc::invalid_cell, "cell '" + cell.id.str() + "': " + what);
}

}  // namespace

void validate_cell(const Cell& cell) {
  if (!is_cell_id(cell.id.str())) invalid(cell, "id must match [a-z0-9][a-z0-9-]{0,63} without the x- prefix");
  for (const auto& [key, value] : cell.meta)
    if (key.empty()) invalid(cell, "empty meta key");

  if (cell.kind == CellKind::paragraph) {
    const auto* tree = cell.tree();
    if (!tree) invalid(cell, "paragraph content must be an inline tree");
    try {
      validate_tree(*tree);
    } catch (const Error& e) {
      invalid(cell, "paragraph content is not a valid inline tree: " + e.detail());
    }
    if (contains_link_markup(plain_text(*tree))) invalid(cell, "content must not carry link targets");
    return;
  }

  const auto* atom = cell.atom();
  if (!atom) invalid(cell, "atom content must be a plain string");
  if (atom->find_first_of("<>") != std::string::npos) invalid(cell, "atom content contains markup");
  if (word_count(*atom) == 0) invalid(cell, "atom content is empty");
  if (contains_link_markup(*atom)) invalid(cell, "content must not carry link targets");
}

void CellStore::put(Cell cell) {
  validate_cell(cell);
  auto id = cell.id;
  cells_.insert_or_assign(std::move(id), std::move(cell));
}

const Cell& CellStore::get(const CellId& id) const {
  if (const auto* cell = find(id)) return *cell;
  throw Error(Errc::not_found, "no cell '" + id.str() + "'");
}

const Cell* CellStore::find(const CellId& id) const {
  auto it = cells_.find(id);
  return it == cells_.end() ? nullptr : &it->second;
}

void CellStore::erase(const CellId& id) {
  if (cells_.erase(id) == 0) throw Error(Errc::not_found, "no cell '" + id.str() + "'");
}

}  // namespace cellgraph
