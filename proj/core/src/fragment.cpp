#include "cellgraph/fragment.hpp"

#include <algorithm>

#include "cellgraph/error.hpp"

namespace cellgraph {

namespace {

[[noreturn]] void bad(std::size_t at, std::string what) { throw Error(Errc::bad_selector, std::move(what), at); }

bool digit(char c) { return c >= '0' && c <= '9'; }

class SelectorParser {
public:
  explicit SelectorParser(std::string_view in) : in_(in) {}

  FragmentSelector run() {
    std::size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] >= 'a' && in_[pos_] <= 'z') ++pos_;
    auto fn = in_.substr(start, pos_ - start);
    expect('(');
    FragmentSelector sel;
    if (fn == "all") {
      sel = SelectAll{read_kind()};
    } else if (fn == "words") {
      std::size_t a_at = pos_;
      auto a = read_number();
      expect('.');
      expect('.');
      auto b = read_number();
      if (a > b) bad(a_at, "word range start exceeds end");
      sel = SelectWords{a, b};
    } else if (fn == "node") {
      SelectNode node;
      while (pos_ < in_.size() && in_[pos_] == '/') {
        ++pos_;
        FragmentStep step{read_kind(), 1};
        if (pos_ < in_.size() && in_[pos_] == '[') {
          ++pos_;
          step.index = read_number();
          expect(']');
        }
        node.steps.push_back(step);
      }
      if (node.steps.empty()) bad(pos_, "node path needs at least one step");
      sel = std::move(node);
    } else {
      bad(start, "unknown selector '" + std::string(fn) + "'");
    }
    expect(')');
    if (pos_ != in_.size()) bad(pos_, "trailing characters");
    return sel;
  }

private:
  void expect(char c) {
    if (pos_ >= in_.size() || in_[pos_] != c) bad(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  InlineKind read_kind() {
    std::size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] >= 'a' && in_[pos_] <= 'z') ++pos_;
    auto kind = inline_kind_from_name(in_.substr(start, pos_ - start));
    if (!kind) bad(start, "expected one of em, kw, term, cite");
    return *kind;
  }

  std::size_t read_number() {
    std::size_t start = pos_;
    while (pos_ < in_.size() && digit(in_[pos_])) ++pos_;
    if (start == pos_ || pos_ - start > 9) bad(start, "expected a positive integer");
    if (in_[start] == '0') bad(start, "numbers are 1-based without leading zeros");
    return std::stoul(std::string(in_.substr(start, pos_ - start)));
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

struct NodeRange {
  const InlineNode* node;
  std::vector<FragmentStep> path;
  std::size_t first = 0;  // 0 when the node holds no words
  std::size_t last = 0;
};

// Word ranges of every element, assigned in document order with the same
// word rules as linearize().
void measure(const std::vector<InlineNode>& nodes, std::vector<FragmentStep>& path, std::size_t& words,
             std::vector<NodeRange>& out) {
  std::vector<std::size_t> seen(5, 0);
  for (const auto& node : nodes) {
    if (node.kind == InlineKind::text) {
      bool in_word = false;
      for (char c : node.text) {
        bool w = !is_space(c);
        if (w && !in_word) ++words;
        in_word = w;
      }
      continue;
    }
    path.push_back({node.kind, ++seen[static_cast<std::size_t>(node.kind)]});
    std::size_t before = words;
    std::size_t slot = out.size();
    out.push_back({&node, path, 0, 0});
    measure(node.children, path, words, out);
    if (words > before) {
      out[slot].first = before + 1;
      out[slot].last = words;
    }
    path.pop_back();
  }
}

}  // namespace

FragmentSelector parse_selector(std::string_view text) { return SelectorParser(text).run(); }

std::string format_steps(const std::vector<FragmentStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += "/" + std::string(inline_kind_name(s.tag)) + "[" + std::to_string(s.index) + "]";
  return out;
}

std::string format_selector(const FragmentSelector& selector) {
  struct {
    std::string operator()(const SelectAll& s) const { return "all(" + std::string(inline_kind_name(s.kind)) + ")"; }
    std::string operator()(const SelectWords& s) const {
      return "words(" + std::to_string(s.first) + ".." + std::to_string(s.last) + ")";
    }
    std::string operator()(const SelectNode& s) const { return "node(" + format_steps(s.steps) + ")"; }
  } visitor;
  return std::visit(visitor, selector);
}

std::vector<FragmentSpan> resolve_selector(const FragmentSelector& selector, const Cell& cell) {
  const std::size_t total = cell_word_count(cell);

  if (const auto* w = std::get_if<SelectWords>(&selector)) {
    if (w->last > total) return {};
    return {FragmentSpan{cell.id, w->first, w->last, std::nullopt}};
  }

  const auto* tree = cell.tree();
  if (!tree) {
    if (std::holds_alternative<SelectNode>(selector))
      throw Error(Errc::bad_node_path, "cell '" + cell.id.str() + "' is an atom and has no nodes");
    return {};
  }

  std::vector<NodeRange> ranges;
  std::vector<FragmentStep> path;
  std::size_t words = 0;
  measure(tree->children, path, words, ranges);

  std::vector<FragmentSpan> out;
  if (const auto* all = std::get_if<SelectAll>(&selector)) {
    std::size_t covered_until = 0;
    for (const auto& r : ranges) {
      if (r.node->kind != all->kind || r.first == 0) continue;
      // Nested nodes of the same kind are covered by their outermost one.
      if (r.first <= covered_until) continue;
      out.push_back({cell.id, r.first, r.last, r.path});
      covered_until = r.last;
    }
    return out;
  }

  const auto& steps = std::get<SelectNode>(selector).steps;
  for (const auto& r : ranges) {
    if (r.path != steps) continue;
    if (r.first != 0) out.push_back({cell.id, r.first, r.last, r.path});
    return out;
  }
  throw Error(Errc::bad_node_path, "cell '" + cell.id.str() + "' has no node " + format_steps(steps));
}

}  // namespace cellgraph
