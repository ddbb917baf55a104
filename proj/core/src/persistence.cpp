#include "cellgraph/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cellgraph/error.hpp"
#include "cellgraph/json_codec.hpp"

namespace cellgraph {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void load_failure(const fs::path& file, const std::string& reason) {
  throw Error(Errc::load_error, file.string() + ": " + reason);
}

json read_json(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) load_failure(file, "cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    load_failure(file, e.what());
  }
}

const json& array_field(const json& j, const char* key, const fs::path& file) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    load_failure(file, std::string("expected array field '") + key + "'");
  return j.at(key);
}

void write_atomically(const fs::path& file, const std::string& bytes) {
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::write_error, tmp.string() + ": cannot open for writing");
    out << bytes;
    out.flush();
    if (!out) throw Error(Errc::write_error, tmp.string() + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) throw Error(Errc::write_error, file.string() + ": " + ec.message());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class Fn>
void with_file(const fs::path& file, Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == Errc::load_error) throw;
    load_failure(file, e.what());
  } catch (const json::exception& e) {
    load_failure(file, e.what());
  }
}

}  // namespace

Repository import_repo(const fs::path& dir) {
  if (!fs::is_directory(dir)) load_failure(dir, "not a directory");
  Repository repo;
  std::uint64_t revision = 0;

  const auto repo_file = dir / "repo.json";
  auto repo_json = read_json(repo_file);
  with_file(repo_file, [&] {
    repo.set_config(RepoConfig{ComponentId(repo_json.at("root").get<std::string>()),
                               repo_json.value("name", std::string())});
    revision = repo_json.value("revision", std::uint64_t{0});
  });

  const auto graph_file = dir / "graph.json";
  auto graph_json = read_json(graph_file);
  for (const auto& c : array_field(graph_json, "components", graph_file))
    with_file(graph_file, [&] { repo.put_component(component_from_json(c)); });

  const auto cells_dir = dir / "cells";
  if (fs::is_directory(cells_dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cells_dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      auto j = read_json(file);
      with_file(file, [&] {
        auto cell = cell_from_json(j);
        if (file.stem().string() != cell.id.str()) load_failure(file, "file name does not match cell id '" + cell.id.str() + "'");
        repo.put_cell(std::move(cell));
      });
    }
  }

  std::vector<Relation> relations;
  for (const auto& r : array_field(graph_json, "relations", graph_file))
    with_file(graph_file, [&] { relations.push_back(relation_from_json(r)); });
  std::sort(relations.begin(), relations.end(),
            [](const Relation& a, const Relation& b) { return std::tie(a.parent, a.position) < std::tie(b.parent, b.position); });
  for (auto& rel : relations) {
    auto id = rel.id.str();
    if (rel.position != repo.graph().relations_of(rel.parent).size() + 1)
      load_failure(graph_file, "relation '" + id + "': positions under '" + rel.parent.str() + "' are not 1..n contiguous");
    try {
      repo.mutable_graph().insert_relation(std::move(rel), repo.cells());
    } catch (const Error& e) {
      load_failure(graph_file, "relation '" + id + "': " + e.what());
    }
  }
  if (graph_json.contains("next_relation") && graph_json.at("next_relation").is_number_unsigned())
    repo.mutable_graph().set_next_relation_seq(
        std::max(repo.graph().next_relation_seq(), graph_json.at("next_relation").get<std::size_t>()));
  if (!repo.graph().has_component(repo.config().root))
    load_failure(repo_file, "root component '" + repo.config().root.str() + "' does not exist");

  const auto linkbase_file = dir / "linkbase.json";
  if (fs::exists(linkbase_file)) {
    auto j = read_json(linkbase_file);
    for (const auto& a : array_field(j, "anchors", linkbase_file))
      with_file(linkbase_file, [&] { repo.put_anchor(anchor_from_json(a)); });
    for (const auto& l : array_field(j, "links", linkbase_file))
      with_file(linkbase_file, [&] { repo.put_link(link_from_json(l)); });
  }

  const auto contexts_file = dir / "contexts.json";
  if (fs::exists(contexts_file)) {
    auto j = read_json(contexts_file);
    for (const auto& c : array_field(j, "contexts", contexts_file))
      with_file(contexts_file, [&] { repo.put_context(context_from_json(c)); });
  }

  repo.restore_revision(revision);
  return repo;
}

void export_repo(const Repository& repo, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "cells", ec);
  if (ec) throw Error(Errc::write_error, (dir / "cells").string() + ": " + ec.message());

  write_atomically(dir / "repo.json", dump({{"v", kFormatVersion},
                                            {"root", repo.config().root.str()},
                                            {"name", repo.config().name},
                                            {"revision", repo.revision()}}));

  json components = json::array();
  for (const auto& [id, c] : repo.graph().components()) components.push_back(component_to_json(c));
  json relations = json::array();
  for (const auto& [id, c] : repo.graph().components())
    for (const auto& rid : repo.graph().relations_of(id)) relations.push_back(relation_to_json(repo.graph().relation(rid)));
  write_atomically(dir / "graph.json", dump({{"v", kFormatVersion},
                                             {"components", components},
                                             {"relations", relations},
                                             {"next_relation", repo.graph().next_relation_seq()}}));

  json anchors = json::array();
  for (const auto& [id, a] : repo.linkbase().anchors) anchors.push_back(anchor_to_json(a));
  json links = json::array();
  for (const auto& [id, l] : repo.linkbase().links) links.push_back(link_to_json(l));
  write_atomically(dir / "linkbase.json", dump({{"v", kFormatVersion}, {"anchors", anchors}, {"links", links}}));

  json contexts = json::array();
  for (const auto& [id, c] : repo.contexts()) contexts.push_back(context_to_json(c));
  write_atomically(dir / "contexts.json", dump({{"v", kFormatVersion}, {"contexts", contexts}}));

  std::set<std::string> keep;
  for (const auto& [id, cell] : repo.cells().all()) {
    keep.insert(id.str() + ".json");
    write_atomically(dir / "cells" / (id.str() + ".json"), dump(cell_to_json(cell)));
  }
  for (const auto& entry : fs::directory_iterator(dir / "cells")) {
    auto name = entry.path().filename().string();
    if (!keep.contains(name) && (entry.path().extension() == ".json" || entry.path().extension() == ".tmp"))
      fs::remove(entry.path(), ec);
  }
}

}  // namespace cellgraph
