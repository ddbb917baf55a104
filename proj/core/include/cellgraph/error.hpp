#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cellgraph {

enum class Errc {
  malformed_markup,
  invalid_cell,
  invalid_id,
  not_found,
  still_referenced,
  unknown_node,
  position_out_of_range,
  hierarchical_conflict,
  self_loop,
  bad_path,
  no_such_segment,
  ambiguous,
  index_out_of_range,
  not_composite,
  bad_scheme,
  empty_host,
  bad_segment,
  bad_fragment,
  fragment_on_composite,
  not_local,
  bad_selector,
  bad_node_path,
  invalid_anchor,
  invalid_link,
  invalid_context,
  unknown_context,
  unknown_page,
  not_renderable,
  load_error,
  write_error,
};

/// Taxonomy name used in error bodies, e.g. "MalformedMarkup".
std::string_view errc_name(Errc code) noexcept;

/// Every engine failure is reported as an Error. `related` carries the ids
/// an error refers to (referring relations, ambiguous candidates).
class Error : public std::runtime_error {
public:
  Error(Errc code, std::string detail, std::optional<std::size_t> offset = std::nullopt,
        std::vector<std::string> related = {});

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }
  const std::vector<std::string>& related() const noexcept { return related_; }

private:
  Errc code_;
  std::string detail_;
  std::optional<std::size_t> offset_;
  std::vector<std::string> related_;
};

}  // namespace cellgraph
