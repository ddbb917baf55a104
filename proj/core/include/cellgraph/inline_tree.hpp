#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellgraph {

/// Paragraph content model: a `p` root holding text, the containers
/// em/kw/term and the empty `cite` element.
enum class InlineKind { text, em, kw, term, cite };

std::string_view inline_kind_name(InlineKind kind) noexcept;
/// Element kinds only; "text" is not a tag and yields nullopt.
std::optional<InlineKind> inline_kind_from_name(std::string_view name) noexcept;

struct InlineNode {
  InlineKind kind = InlineKind::text;
  std::string text;                  // character data (text) or label (cite)
  std::vector<InlineNode> children;  // em, kw, term only

  friend bool operator==(const InlineNode&, const InlineNode&) = default;
};

struct InlineTree {
  std::vector<InlineNode> children;

  friend bool operator==(const InlineTree&, const InlineTree&) = default;
};

inline constexpr std::size_t kMaxInlineDepth = 4;  // the p root is level 1

InlineNode text_node(std::string text);
InlineNode element_node(InlineKind kind, std::vector<InlineNode> children = {});
InlineNode cite_node(std::string label);

/// `[A-Za-z0-9][A-Za-z0-9_.-]{0,63}`; no room for URIs by construction.
bool is_cite_label(std::string_view label) noexcept;

/// Parses paragraph markup into its normalized tree. Throws
/// Error(malformed_markup) carrying the byte offset of the problem.
InlineTree parse_paragraph(std::string_view markup);

/// Canonical markup: no optional whitespace, double-quoted attributes,
/// `& < >` escaped.
std::string serialize_paragraph(const InlineTree& tree);

std::string plain_text(const InlineTree& tree);

/// Merges adjacent text nodes and drops empty ones, recursively.
InlineTree normalize(InlineTree tree);

/// Throws Error(malformed_markup) if the tree breaks a structural invariant
/// (depth, empty or adjacent text, bad cite label, misplaced children).
void validate_tree(const InlineTree& tree);

/// Flat event stream over a tree. Words are maximal non-whitespace runs
/// within one text node, so tag boundaries also separate words; they are
/// numbered from 1 in document order.
struct InlineEvent {
  enum class Type { open, close, cite, word, space };
  Type type = Type::word;
  InlineKind kind = InlineKind::text;
  std::string text;       // word or whitespace run; cite label
  std::size_t word = 0;   // word index for Type::word
};

std::vector<InlineEvent> linearize(const InlineTree& tree);
/// Same event stream for an unstructured atom string.
std::vector<InlineEvent> linearize_text(std::string_view text);

std::size_t word_count(const InlineTree& tree);
std::size_t word_count(std::string_view text);

bool is_space(char c) noexcept;

}  // namespace cellgraph
