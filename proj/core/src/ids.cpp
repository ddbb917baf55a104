#include "cellgraph/ids.hpp"

#include "cellgraph/error.hpp"

namespace cellgraph {

namespace {

bool lower_alnum(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

}  // namespace

bool is_token(std::string_view s) noexcept {
  if (s.empty() || s.size() > 64 || !lower_alnum(s.front())) return false;
  for (char c : s.substr(1))
    if (!lower_alnum(c) && c != '-') return false;
  return true;
}

bool is_cell_id(std::string_view s) noexcept { return is_token(s) && !s.starts_with("x-"); }

bool is_component_id(std::string_view s) noexcept { return is_token(s) && s.starts_with("x-"); }

bool is_relation_label(std::string_view s) noexcept {
  if (s.empty() || s.size() > 32) return false;
  if (!lower_alnum(s.front()) && s.front() != '_') return false;
  for (char c : s.substr(1))
    if (!lower_alnum(c) && c != '_' && c != '-') return false;
  return true;
}

void require_token(std::string_view s, std::string_view what) {
  if (!is_token(s))
    throw Error(Errc::invalid_id, std::string(what) + " '" + std::string(s) + "' is not a valid token");
}

}  // namespace cellgraph
