#include "cellgraph/error.hpp"

namespace cellgraph {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_markup: return "MalformedMarkup";
    case Errc::invalid_cell: return "InvalidCell";
    case Errc::invalid_id: return "InvalidId";
    case Errc::not_found: return "NotFound";
    case Errc::still_referenced: return "StillReferenced";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::position_out_of_range: return "PositionOutOfRange";
    case Errc::hierarchical_conflict: return "HierarchicalConflict";
    case Errc::self_loop: return "SelfLoop";
    case Errc::bad_path: return "BadPath";
    case Errc::no_such_segment: return "NoSuchSegment";
    case Errc::ambiguous: return "Ambiguous";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_composite: return "NotComposite";
    case Errc::bad_scheme: return "BadScheme";
    case Errc::empty_host: return "EmptyHost";
    case Errc::bad_segment: return "BadSegment";
    case Errc::bad_fragment: return "BadFragment";
    case Errc::fragment_on_composite: return "FragmentOnComposite";
    case Errc::not_local: return "NotLocal";
    case Errc::bad_selector: return "BadSelector";
    case Errc::bad_node_path: return "BadNodePath";
    case Errc::invalid_anchor: return "InvalidAnchor";
    case Errc::invalid_link: return "InvalidLink";
    case Errc::invalid_context: return "InvalidContext";
    case Errc::unknown_context: return "UnknownContext";
    case Errc::unknown_page: return "UnknownPage";
    case Errc::not_renderable: return "NotRenderable";
    case Errc::load_error: return "LoadError";
    case Errc::write_error: return "WriteError";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& detail, std::optional<std::size_t> offset) {
  std::string msg(errc_name(code));
  if (!detail.empty()) msg += ": " + detail;
  if (offset) msg += " (at offset " + std::to_string(*offset) + ")";
  return msg;
}

}  // namespace

Error::Error(Errc code, std::string detail, std::optional<std::size_t> offset,
             std::vector<std::string> related)
    : std::runtime_error(compose(code, detail, offset)),
      code_(code),
      detail_(std::move(detail)),
      offset_(offset),
      related_(std::move(related)) {}

}  // namespace cellgraph
