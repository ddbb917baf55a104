#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cellgraph/cellstore.hpp"
#include "cellgraph/inline_tree.hpp"

namespace cellgraph {

struct FragmentStep {
  InlineKind tag = InlineKind::em;
  std::size_t index = 1;  // 1-based among same-tag element siblings

  friend bool operator==(const FragmentStep&, const FragmentStep&) = default;
};

/// `all(KIND)`: every outermost node of that kind.
struct SelectAll {
  InlineKind kind = InlineKind::kw;
  friend bool operator==(const SelectAll&, const SelectAll&) = default;
};

/// `words(A..B)`: 1-based inclusive word range.
struct SelectWords {
  std::size_t first = 1;
  std::size_t last = 1;
  friend bool operator==(const SelectWords&, const SelectWords&) = default;
};

/// `node(/tag[i]/...)`: one element addressed by its path from the root.
struct SelectNode {
  std::vector<FragmentStep> steps;
  friend bool operator==(const SelectNode&, const SelectNode&) = default;
};

using FragmentSelector = std::variant<SelectAll, SelectWords, SelectNode>;

struct FragmentSpan {
  CellId cell;
  std::size_t start_word = 1;
  std::size_t end_word = 1;
  std::optional<std::vector<FragmentStep>> node_path;

  friend bool operator==(const FragmentSpan&, const FragmentSpan&) = default;
};

/// Throws Error(bad_selector) with the offending offset.
FragmentSelector parse_selector(std::string_view text);
std::string format_selector(const FragmentSelector& selector);
std::string format_steps(const std::vector<FragmentStep>& steps);

/// Spans selected inside `cell`, sorted and non-overlapping. A word range
/// reaching past the last word selects nothing; an empty result is not an
/// error. Throws Error(bad_node_path) when a
/// node step does not exist.
std::vector<FragmentSpan> resolve_selector(const FragmentSelector& selector, const Cell& cell);

}  // namespace cellgraph
