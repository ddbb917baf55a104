#include "cellgraph/address.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

namespace {

constexpr std::string_view kScheme = "cell://";

bool unreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
         c == '_' || c == '~';
}

bool sub_delim(char c) {
  return c == '!' || c == '$' || c == '&' || c == '\'' || c == '(' || c == ')' || c == '*' || c == '+' ||
         c == ',' || c == ';' || c == '=' || c == ':' || c == '@';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

// Decodes `text` (starting at absolute offset `base`), allowing raw
// characters accepted by `raw_ok`.
template <class Pred>
std::string decode(std::string_view text, std::size_t base, Pred raw_ok) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '%') {
      if (i + 2 >= text.size()) throw Error(Errc::bad_segment, "truncated percent escape", base + i);
      int hi = hex_value(text[i + 1]);
      int lo = hex_value(text[i + 2]);
      if (hi < 0 || lo < 0) throw Error(Errc::bad_segment, "invalid percent escape", base + i);
      out += static_cast<char>(hi * 16 + lo);
      i += 2;
    } else if (raw_ok(c)) {
      out += c;
    } else {
      throw Error(Errc::bad_segment, std::string("character not allowed here: '") + c + "'", base + i);
    }
  }
  return out;
}

}  // namespace

std::string percent_encode(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : raw) {
    if (unreserved(c)) {
      out += c;
    } else {
      auto b = static_cast<unsigned char>(c);
      out += '%';
      out += kHex[b >> 4];
      out += kHex[b & 0xF];
    }
  }
  return out;
}

Address parse_uri(std::string_view uri) {
  if (!uri.starts_with(kScheme)) throw Error(Errc::bad_scheme, "address must start with cell://", 0);
  Address addr;
  std::size_t pos = kScheme.size();
  auto stop = [&](std::size_t from, std::string_view set) {
    auto at = uri.find_first_of(set, from);
    return at == std::string_view::npos ? uri.size() : at;
  };

  std::size_t host_end = stop(pos, "/#?");
  if (host_end == pos) throw Error(Errc::empty_host, "address has no host", pos);
  for (std::size_t i = pos; i < host_end; ++i)
    if (!unreserved(uri[i])) throw Error(Errc::bad_segment, "invalid host character", i);
  addr.host = std::string(uri.substr(pos, host_end - pos));
  pos = host_end;

  if (pos < uri.size() && uri[pos] == '/') {
    std::size_t end = stop(pos, "#?");
    std::vector<std::string> segments;
    if (end > pos + 1) {
      std::size_t seg_start = pos + 1;
      while (true) {
        std::size_t seg_end = uri.find('/', seg_start);
        if (seg_end == std::string_view::npos || seg_end > end) seg_end = end;
        if (seg_end == seg_start) throw Error(Errc::bad_segment, "empty path segment", seg_start);
        segments.push_back(decode(uri.substr(seg_start, seg_end - seg_start), seg_start,
                                  [](char c) { return unreserved(c) || sub_delim(c); }));
        if (seg_end == end) break;
        seg_start = seg_end + 1;
      }
    }
    addr.hier_path = std::move(segments);
    pos = end;
  }

  if (pos < uri.size() && uri[pos] == '#') {
    std::size_t start = pos + 1;
    std::size_t end = stop(start, "?");
    auto text = decode(uri.substr(start, end - start), start,
                       [](char c) { return unreserved(c) || sub_delim(c) || c == '/' || c == '[' || c == ']'; });
    try {
      addr.context_path = SemanticPath::parse(text);
    } catch (const Error& e) {
      throw Error(Errc::bad_segment, "context path: " + e.detail(), start + e.offset().value_or(0));
    }
    pos = end;
  }

  if (pos < uri.size() && uri[pos] == '?') {
    std::size_t start = pos + 1;
    try {
      addr.fragment = parse_selector(uri.substr(start));
    } catch (const Error& e) {
      throw Error(Errc::bad_fragment, e.detail(), start + e.offset().value_or(0));
    }
    pos = uri.size();
  }

  if (!addr.hier_path && !addr.context_path)
    throw Error(Errc::bad_segment, "address needs a hierarchical or a context path", pos);
  return addr;
}

std::string format_uri(const Address& address) {
  std::string out(kScheme);
  out += address.host;
  if (address.hier_path) {
    if (address.hier_path->empty()) out += '/';
    for (const auto& seg : *address.hier_path) out += "/" + percent_encode(seg);
  }
  if (address.context_path) out += "#" + address.context_path->str();
  if (address.fragment) out += "?" + format_selector(*address.fragment);
  return out;
}

Dereferenced dereference(const StructureView& view, const Address& address) {
  if (address.host != "local") throw Error(Errc::not_local, "host '" + address.host + "' is not served here");
  Dereferenced out;
  if (address.context_path) {
    auto res = resolve_semantic(view, *address.context_path);
    out.node = std::move(res.node);
    out.context = std::move(res.context);
  } else {
    out.node = resolve_hierarchical(view, *address.hier_path);
  }
  if (address.fragment) {
    if (out.node.is_composite())
      throw Error(Errc::fragment_on_composite, "'" + out.node.str() + "' is a composite; fragments address cells");
    out.spans = resolve_selector(*address.fragment, view.cells.get(out.node.as_cell()));
  }
  return out;
}

}  // namespace cellgraph
