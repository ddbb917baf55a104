#include "cellgraph/inline_tree.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

std::string_view inline_kind_name(InlineKind kind) noexcept {
  switch (kind) {
    case InlineKind::text: return "text";
    case InlineKind::em: return "em";
    case InlineKind::kw: return "kw";
    case InlineKind::term: return "term";
    case InlineKind::cite: return "cite";
  }
  return "text";
}

std::optional<InlineKind> inline_kind_from_name(std::string_view name) noexcept {
  if (name == "em") return InlineKind::em;
  if (name == "kw") return InlineKind::kw;
  if (name == "term") return InlineKind::term;
  if (name == "cite") return InlineKind::cite;
  return std::nullopt;
}

InlineNode text_node(std::string text) { return InlineNode{InlineKind::text, std::move(text), {}}; }

InlineNode element_node(InlineKind kind, std::vector<InlineNode> children) {
  return InlineNode{kind, {}, std::move(children)};
}

InlineNode cite_node(std::string label) { return InlineNode{InlineKind::cite, std::move(label), {}}; }

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_cite_label(std::string_view label) noexcept {
  auto alnum = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  };
  if (label.empty() || label.size() > 64 || !alnum(label.front())) return false;
  for (char c : label.substr(1))
    if (!alnum(c) && c != '_' && c != '.' && c != '-') return false;
  return true;
}

namespace {

void append_text(std::vector<InlineNode>& siblings, std::string_view text) {
  if (text.empty()) return;
  if (!siblings.empty() && siblings.back().kind == InlineKind::text)
    siblings.back().text.append(text);
  else
    siblings.push_back(text_node(std::string(text)));
}

class ParagraphParser {
public:
  explicit ParagraphParser(std::string_view in) : in_(in) {}

  InlineTree run() {
    if (!in_.starts_with("<p>")) fail(0, "expected <p> root");
    pos_ = 3;
    InlineTree tree;
    tree.children = parse_children("p", 1);
    if (pos_ != in_.size()) fail(pos_, "content after </p>");
    return tree;
  }

private:
  [[noreturn]] void fail(std::size_t at, std::string what) const {
    throw Error(Errc::malformed_markup, std::move(what), at);
  }

  // Parses content up to and including the closing tag of `open`.
  std::vector<InlineNode> parse_children(std::string_view open, std::size_t depth) {
    std::vector<InlineNode> out;
    std::string pending;
    auto flush = [&] {
      append_text(out, pending);
      pending.clear();
    };
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (c == '&') {
        pending += parse_entity();
      } else if (c == '<') {
        std::size_t tag_at = pos_;
        if (in_.substr(pos_).starts_with("</")) {
          pos_ += 2;
          std::string_view name = read_name();
          expect('>');
          if (name != open)
            fail(tag_at, "unbalanced tags: </" + std::string(name) + "> closes <" + std::string(open) + ">");
          flush();
          return out;
        }
        ++pos_;
        std::string_view name = read_name();
        auto kind = inline_kind_from_name(name);
        if (!kind) fail(tag_at, "unknown element <" + std::string(name) + ">");
        if (depth + 1 > kMaxInlineDepth)
          fail(tag_at, "depth " + std::to_string(depth + 1) + " exceeds " + std::to_string(kMaxInlineDepth));
        flush();
        if (*kind == InlineKind::cite) {
          out.push_back(cite_node(parse_cite_rest(tag_at)));
        } else {
          expect('>');
          out.push_back(element_node(*kind, parse_children(name, depth + 1)));
        }
      } else if (c == '>') {
        fail(pos_, "'>' in character data must be written &gt;");
      } else {
        pending += c;
        ++pos_;
      }
    }
    fail(pos_, "unbalanced tags: <" + std::string(open) + "> is never closed");
  }

  std::string_view read_name() {
    std::size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] >= 'a' && in_[pos_] <= 'z') ++pos_;
    if (start == pos_) fail(start, "expected element name");
    return in_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (pos_ >= in_.size() || in_[pos_] != c) fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string parse_entity() {
    static constexpr std::pair<std::string_view, char> kEntities[] = {
        {"&lt;", '<'}, {"&gt;", '>'}, {"&amp;", '&'}};
    for (auto [name, ch] : kEntities) {
      if (in_.substr(pos_).starts_with(name)) {
        pos_ += name.size();
        return std::string(1, ch);
      }
    }
    fail(pos_, "unsupported entity");
  }

  // After `<cite`: ` ref="LABEL"/>`
  std::string parse_cite_rest(std::size_t tag_at) {
    if (!in_.substr(pos_).starts_with(" ref=\"")) fail(pos_, "cite requires ref=\"LABEL\"");
    pos_ += 6;
    std::size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] != '"') ++pos_;
    if (pos_ >= in_.size()) fail(start, "unterminated attribute value");
    std::string label(in_.substr(start, pos_ - start));
    if (!is_cite_label(label)) fail(start, "invalid cite label");
    ++pos_;
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
    if (!in_.substr(pos_).starts_with("/>")) fail(tag_at, "cite must be an empty element");
    pos_ += 2;
    return label;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void serialize_nodes(std::string& out, const std::vector<InlineNode>& nodes) {
  for (const auto& node : nodes) {
    switch (node.kind) {
      case InlineKind::text:
        escape_into(out, node.text);
        break;
      case InlineKind::cite:
        out += "<cite ref=\"";
        out += node.text;
        out += "\"/>";
        break;
      default: {
        auto name = inline_kind_name(node.kind);
        out += '<';
        out += name;
        out += '>';
        serialize_nodes(out, node.children);
        out += "</";
        out += name;
        out += '>';
      }
    }
  }
}

void collect_text(std::string& out, const std::vector<InlineNode>& nodes) {
  for (const auto& node : nodes) {
    if (node.kind == InlineKind::text)
      out += node.text;
    else
      collect_text(out, node.children);
  }
}

std::vector<InlineNode> normalize_nodes(std::vector<InlineNode> nodes) {
  std::vector<InlineNode> out;
  for (auto& node : nodes) {
    if (node.kind == InlineKind::text) {
      append_text(out, node.text);
    } else {
      node.children = normalize_nodes(std::move(node.children));
      out.push_back(std::move(node));
    }
  }
  return out;
}

void validate_nodes(const std::vector<InlineNode>& nodes, std::size_t depth) {
  const InlineNode* prev = nullptr;
  for (const auto& node : nodes) {
    switch (node.kind) {
      case InlineKind::text:
        if (node.text.empty()) throw Error(Errc::malformed_markup, "empty text node");
        if (prev && prev->kind == InlineKind::text)
          throw Error(Errc::malformed_markup, "adjacent text nodes");
        if (!node.children.empty()) throw Error(Errc::malformed_markup, "text node with children");
        break;
      case InlineKind::cite:
        if (depth + 1 > kMaxInlineDepth) throw Error(Errc::malformed_markup, "depth exceeds 4");
        if (!is_cite_label(node.text)) throw Error(Errc::malformed_markup, "invalid cite label");
        if (!node.children.empty()) throw Error(Errc::malformed_markup, "cite with children");
        break;
      default:
        if (depth + 1 > kMaxInlineDepth) throw Error(Errc::malformed_markup, "depth exceeds 4");
        if (!node.text.empty()) throw Error(Errc::malformed_markup, "container with direct text field");
        validate_nodes(node.children, depth + 1);
    }
    prev = &node;
  }
}

void split_words(std::vector<InlineEvent>& out, std::string_view text, std::size_t& words) {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    bool space = is_space(text[i]);
    while (j < text.size() && is_space(text[j]) == space) ++j;
    InlineEvent ev;
    ev.text = std::string(text.substr(i, j - i));
    if (space) {
      ev.type = InlineEvent::Type::space;
    } else {
      ev.type = InlineEvent::Type::word;
      ev.word = ++words;
    }
    out.push_back(std::move(ev));
    i = j;
  }
}

void linearize_nodes(std::vector<InlineEvent>& out, const std::vector<InlineNode>& nodes,
                     std::size_t& words) {
  for (const auto& node : nodes) {
    switch (node.kind) {
      case InlineKind::text:
        split_words(out, node.text, words);
        break;
      case InlineKind::cite:
        out.push_back({InlineEvent::Type::cite, InlineKind::cite, node.text, 0});
        break;
      default:
        out.push_back({InlineEvent::Type::open, node.kind, {}, 0});
        linearize_nodes(out, node.children, words);
        out.push_back({InlineEvent::Type::close, node.kind, {}, 0});
    }
  }
}

}  // namespace

InlineTree parse_paragraph(std::string_view markup) { return ParagraphParser(markup).run(); }

std::string serialize_paragraph(const InlineTree& tree) {
  std::string out = "<p>";
  serialize_nodes(out, tree.children);
  out += "</p>";
  return out;
}

std::string plain_text(const InlineTree& tree) {
  std::string out;
  collect_text(out, tree.children);
  return out;
}

InlineTree normalize(InlineTree tree) {
  tree.children = normalize_nodes(std::move(tree.children));
  return tree;
}

void validate_tree(const InlineTree& tree) { validate_nodes(tree.children, 1); }

std::vector<InlineEvent> linearize(const InlineTree& tree) {
  std::vector<InlineEvent> out;
  std::size_t words = 0;
  linearize_nodes(out, tree.children, words);
  return out;
}

std::vector<InlineEvent> linearize_text(std::string_view text) {
  std::vector<InlineEvent> out;
  std::size_t words = 0;
  split_words(out, text, words);
  return out;
}

std::size_t word_count(const InlineTree& tree) {
  std::size_t n = 0;
  for (const auto& ev : linearize(tree))
    if (ev.type == InlineEvent::Type::word) ++n;
  return n;
}

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool word_char = !is_space(c);
    if (word_char && !in_word) ++n;
    in_word = word_char;
  }
  return n;
}

}  // namespace cellgraph
