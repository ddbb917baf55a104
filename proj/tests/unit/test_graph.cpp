#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "cellgraph/error.hpp"
#include "cellgraph/persistence.hpp"
#include "cellgraph/repository.hpp"
#include "oracles.hpp"

using namespace cellgraph;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::load_error;
}

struct Small {
  Repository repo{RepoConfig{ComponentId("x-root"), "t"}};
  Small() {
    for (auto id : {"x-root", "x-page1", "x-page2", "x-a", "x-b"})
      repo.put_component(Component{ComponentId(id), ComponentKind::page, {}});
    for (auto id : {"c-intro", "c-one", "c-two"}) repo.put_cell(make_cell(CellId(id), CellKind::paragraph, "<p>x</p>"));
  }
  const Graph& g() const { return repo.graph(); }
};

std::vector<NodeId> child_nodes(const Graph& g, const char* parent) {
  std::vector<NodeId> out;
  for (const auto& e : g.children(ComponentId(parent))) out.push_back(e.child);
  return out;
}

// Checks transpose equality, forest shape and contiguous positions against a direct scan.
void check_invariants(const Repository& repo) {
  const auto& g = repo.graph();
  std::set<std::tuple<std::string, std::string, std::string, std::string>> down, up;
  for (const auto& [pid, comp] : g.components()) {
    auto kids = g.children(pid);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      down.insert({pid.str(), kids[i].name, kids[i].child.str(), kids[i].relation.str()});
      CHECK(g.relation(kids[i].relation).position == i + 1);
    }
  }
  std::vector<NodeId> nodes;
  for (const auto& [id, c] : g.components()) nodes.emplace_back(id);
  for (const auto& [id, c] : repo.cells().all()) nodes.emplace_back(id);
  for (const auto& n : nodes) {
    auto refs = g.referrers(n, repo.cells());
    for (std::size_t i = 0; i < refs.size(); ++i) {
      up.insert({refs[i].parent.str(), refs[i].name, n.str(), refs[i].relation.str()});
      if (i) {
        const auto& a = g.relation(refs[i - 1].relation);
        const auto& b = g.relation(refs[i].relation);
        CHECK(std::tie(a.parent, a.position) < std::tie(b.parent, b.position));
      }
    }
  }
  CHECK(down == up);
  CHECK(down.size() == g.relations().size());

  std::map<std::string, std::string> hier_parent;
  for (const auto& [id, r] : g.relations())
    if (r.hierarchical) CHECK(hier_parent.emplace(r.child.str(), r.parent.str()).second);
  for (const auto& [child, parent] : hier_parent) {
    std::set<std::string> seen{child};
    for (auto at = parent;; ) {
      REQUIRE(seen.insert(at).second);
      auto it = hier_parent.find(at);
      if (it == hier_parent.end()) break;
      at = it->second;
    }
  }
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("add and children") {
  Small s;
  auto id = s.repo.add_relation(ComponentId("x-page1"), "paragraph", CellId("c-intro"), 1);
  CHECK_FALSE(id.empty());
  CHECK(child_nodes(s.g(), "x-page1") == std::vector<NodeId>{CellId("c-intro")});
  CHECK(s.g().children(ComponentId("x-page2")).empty());
}

TEST_CASE("reuse under two parents") {
  Small s;
  s.repo.add_relation(ComponentId("x-page1"), "paragraph", CellId("c-intro"), 1);
  s.repo.add_relation(ComponentId("x-page2"), "paragraph", CellId("c-intro"), 1);
  auto refs = s.g().referrers(CellId("c-intro"), s.repo.cells());
  REQUIRE(refs.size() == 2);
  CHECK(refs[0].parent == ComponentId("x-page1"));
  CHECK(refs[1].parent == ComponentId("x-page2"));
  CHECK(s.g().referrers(CellId("c-one"), s.repo.cells()).empty());
}

TEST_CASE("insert at front reverses order") {
  Small s;
  for (auto id : {"c-intro", "c-one", "c-two"}) s.repo.add_relation(ComponentId("x-page1"), "p", CellId(id), 1);
  CHECK(child_nodes(s.g(), "x-page1") == std::vector<NodeId>{CellId("c-two"), CellId("c-one"), CellId("c-intro")});
}

TEST_CASE("relation errors") {
  Small s;
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-nope"), "p", CellId("c-one"), 1); }) == Errc::unknown_node);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page1"), "p", CellId("c-nope"), 1); }) == Errc::unknown_node);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page1"), "p", CellId("c-one"), 2); }) == Errc::position_out_of_range);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page1"), "p", CellId("c-one"), 0); }) == Errc::position_out_of_range);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page1"), "p", ComponentId("x-page1"), 1); }) == Errc::self_loop);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page1"), "Bad Name", CellId("c-one"), 1); }) == Errc::invalid_id);
  s.repo.add_relation(ComponentId("x-page1"), "p", CellId("c-one"), 1, true);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-page2"), "p", CellId("c-one"), 1, true); }) ==
        Errc::hierarchical_conflict);
}

TEST_CASE("hierarchical names are unique per parent and acyclic") {
  Small s;
  s.repo.add_relation(ComponentId("x-root"), "a", ComponentId("x-a"), 1, true);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-root"), "a", ComponentId("x-b"), 1, true); }) ==
        Errc::hierarchical_conflict);
  s.repo.add_relation(ComponentId("x-a"), "b", ComponentId("x-b"), 1, true);
  CHECK(code_of([&] { s.repo.add_relation(ComponentId("x-b"), "r", ComponentId("x-root"), 1, true); }) ==
        Errc::hierarchical_conflict);
  CHECK_NOTHROW(s.repo.add_relation(ComponentId("x-b"), "r", ComponentId("x-root"), 1, false));
}

TEST_CASE("remove compacts and keeps the child") {
  Small s;
  auto r1 = s.repo.append_relation(ComponentId("x-page1"), "p", CellId("c-intro"));
  auto r2 = s.repo.append_relation(ComponentId("x-page1"), "p", CellId("c-one"));
  auto r3 = s.repo.append_relation(ComponentId("x-page1"), "p", CellId("c-two"));
  s.repo.remove_relation(r2);
  CHECK(s.g().relation(r1).position == 1);
  CHECK(s.g().relation(r3).position == 2);
  CHECK(code_of([&] { s.repo.remove_relation(r2); }) == Errc::not_found);
  s.repo.remove_relation(r1);
  CHECK(s.repo.cells().contains(CellId("c-intro")));
}

TEST_CASE("component kind is fixed and referenced components stay") {
  Small s;
  CHECK_THROWS_AS(s.repo.put_component(Component{ComponentId("x-a"), ComponentKind::site, {}}), Error);
  CHECK_NOTHROW(s.repo.put_component(Component{ComponentId("x-a"), ComponentKind::page, {{"title", "A"}}}));
  s.repo.append_relation(ComponentId("x-root"), "a", ComponentId("x-a"));
  CHECK(code_of([&] { s.repo.delete_component(ComponentId("x-a")); }) == Errc::still_referenced);
}

TEST_CASE("cycles") {
  Small s;
  CHECK(s.g().find_cycles().empty());
  auto ab = s.repo.append_relation(ComponentId("x-a"), "b", ComponentId("x-b"));
  auto ba = s.repo.append_relation(ComponentId("x-b"), "a", ComponentId("x-a"));
  auto cycles = s.g().find_cycles();
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == Cycle{ab, ba});
  s.repo.append_relation(ComponentId("x-a"), "again", ComponentId("x-b"));
  CHECK(s.g().find_cycles().size() == 2);
}

TEST_CASE("random cycles match brute force") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto repo = oracle::random_repository(rng, {.max_nodes = 12, .max_fanout = 5, .cyclic_probability = 0.5});
    CHECK(repo.graph().find_cycles() == oracle::cycles(repo.graph()));
  }
}

TEST_CASE("random mutation sequences keep invariants") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    auto repo = oracle::random_repository(rng, {.max_nodes = 30});
    for (int step = 0; step < 20; ++step) {
      const auto& rels = repo.graph().relations();
      if (!rels.empty() && std::bernoulli_distribution(0.3)(rng)) {
        auto it = std::next(rels.begin(), std::uniform_int_distribution<std::size_t>(0, rels.size() - 1)(rng));
        repo.remove_relation(it->first);
      } else {
        std::vector<ComponentId> comps;
        for (const auto& [id, c] : repo.graph().components()) comps.push_back(id);
        std::vector<NodeId> nodes(comps.begin(), comps.end());
        for (const auto& [id, c] : repo.cells().all()) nodes.emplace_back(id);
        auto parent = comps[std::uniform_int_distribution<std::size_t>(0, comps.size() - 1)(rng)];
        auto child = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
        auto n = repo.graph().relations_of(parent).size();
        try {
          repo.add_relation(parent, "m", child, std::uniform_int_distribution<std::size_t>(1, n + 1)(rng),
                            std::bernoulli_distribution(0.5)(rng));
        } catch (const Error& e) {
          CHECK((e.code() == Errc::self_loop || e.code() == Errc::hierarchical_conflict));
        }
      }
      check_invariants(repo);
    }
  }
}

TEST_CASE("children survive an export/import round trip") {
  std::mt19937_64 rng(13);
  auto repo = oracle::random_repository(rng);
  auto dir = std::filesystem::temp_directory_path() / "cellgraph-graph-roundtrip";
  std::filesystem::remove_all(dir);
  export_repo(repo, dir);
  auto back = import_repo(dir);
  for (const auto& [id, c] : repo.graph().components()) CHECK(back.graph().children(id) == repo.graph().children(id));
  CHECK(back == repo);
  std::filesystem::remove_all(dir);
}

}
