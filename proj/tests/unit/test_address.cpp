#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "cellgraph/address.hpp"
#include "cellgraph/error.hpp"
#include "cellgraph/repository.hpp"

using namespace cellgraph;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(Errc::load_error, "");
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

}  // namespace

TEST_SUITE("address") {

TEST_CASE("documented examples") {
  auto a = parse_uri("cell://local/site/page1");
  CHECK(a.host == "local");
  CHECK(a.hier_path == std::vector<std::string>{"site", "page1"});
  CHECK_FALSE(a.context_path);
  CHECK_FALSE(a.fragment);

  auto b = parse_uri("cell://local#/course/intro/paragraph[2]?all(kw)");
  CHECK_FALSE(b.hier_path);
  REQUIRE(b.context_path);
  CHECK(b.context_path->segments.size() == 3);
  CHECK(b.fragment == FragmentSelector{SelectAll{InlineKind::kw}});

  CHECK(error_of([] { parse_uri("http://x/y"); }).code() == Errc::bad_scheme);
  CHECK(format_uri(Address{"local", std::vector<std::string>{}, std::nullopt, std::nullopt}) == "cell://local/");
  CHECK(format_uri(Address{"local", std::vector<std::string>{"a b"}, std::nullopt, std::nullopt}) == "cell://local/a%20b");
}

TEST_CASE("offsets") {
  CHECK(error_of([] { parse_uri("cell://local/a b"); }).offset() == std::optional<std::size_t>(14));
  CHECK(error_of([] { parse_uri("cell://local/a//b"); }).offset() == std::optional<std::size_t>(15));
  CHECK(error_of([] { parse_uri("cell://local/x?words(5..2)"); }).offset() == std::optional<std::size_t>(21));
}

TEST_CASE("uri corpus") {
  std::ifstream in(CELLGRAPH_TEST_DATA "/uris.txt");
  REQUIRE(in);
  std::string line;
  int entries = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++entries;
    auto f = split_tabs(line);
    CAPTURE(line);
    if (f.size() == 2) {
      REQUIRE(f[1][0] == '!');
      auto e = error_of([&] { parse_uri(f[0]); });
      CHECK(errc_name(e.code()) == f[1].substr(1));
      CHECK(e.offset().has_value());
      continue;
    }
    REQUIRE(f.size() == 5);
    auto a = parse_uri(f[0]);
    CHECK(a.host == f[1]);
    if (f[2] == "-")
      CHECK_FALSE(a.hier_path);
    else
      CHECK(a.hier_path == nlohmann::json::parse(f[2]).get<std::vector<std::string>>());
    if (f[3] == "-")
      CHECK_FALSE(a.context_path);
    else
      CHECK((a.context_path && a.context_path->str() == f[3]));
    if (f[4] == "-")
      CHECK_FALSE(a.fragment);
    else
      CHECK((a.fragment && format_selector(*a.fragment) == f[4]));
    CHECK(parse_uri(format_uri(a)) == a);
  }
  CHECK(entries >= 50);
}

TEST_CASE("generated addresses round trip") {
  std::mt19937_64 rng(31);
  auto n = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::string label_chars = "abcdefghijklmnopqrstuvwxyz0123456789_-";
  const std::vector<InlineKind> kinds = {InlineKind::em, InlineKind::kw, InlineKind::term, InlineKind::cite};
  for (int i = 0; i < 1000; ++i) {
    Address a;
    a.host = n(0, 3) ? "local" : "host" + std::to_string(n(0, 99));
    bool hier = n(0, 1), ctx = n(0, 1);
    if (!hier && !ctx) hier = true;
    if (hier) {
      std::vector<std::string> segs(n(0, 4));
      for (auto& s : segs) {
        s.resize(n(1, 8));
        for (auto& c : s) c = static_cast<char>(n(0, 255));
      }
      a.hier_path = segs;
    }
    if (ctx) {
      SemanticPath p;
      p.segments.resize(n(0, 4));
      for (auto& seg : p.segments) {
        seg.name = std::string(1, label_chars[n(0, 35)]);
        for (std::size_t k = n(0, 6); k > 0; --k) seg.name += label_chars[n(0, label_chars.size() - 1)];
        if (n(0, 1)) seg.index = n(1, 20);
      }
      a.context_path = p;
    }
    switch (n(0, 3)) {
      case 0: break;
      case 1: a.fragment = SelectAll{kinds[n(0, 3)]}; break;
      case 2: {
        auto s = n(1, 50);
        a.fragment = SelectWords{s, s + n(0, 10)};
        break;
      }
      default: {
        SelectNode node;
        for (std::size_t k = n(1, 3); k > 0; --k) node.steps.push_back({kinds[n(0, 2)], n(1, 5)});
        a.fragment = node;
      }
    }
    auto text = format_uri(a);
    CAPTURE(text);
    REQUIRE(parse_uri(text) == a);
    CHECK(format_uri(parse_uri(text)) == text);
  }
}

TEST_CASE("dereference") {
  Repository repo(RepoConfig{ComponentId("x-site"), "s"});
  repo.put_component(Component{ComponentId("x-site"), ComponentKind::site, {}});
  repo.put_component(Component{ComponentId("x-page"), ComponentKind::page, {}});
  repo.put_cell(make_cell(CellId("c-intro"), CellKind::paragraph, "<p>a <kw>wet-tail</kw> case of <kw>enteritis</kw></p>"));
  repo.append_relation(ComponentId("x-site"), "page", ComponentId("x-page"), true);
  repo.append_relation(ComponentId("x-page"), "intro", CellId("c-intro"), true);
  auto view = repo.structure();

  auto both = dereference(view, parse_uri("cell://local/page/intro#/page/intro?all(kw)"));
  auto ctx_only = dereference(view, parse_uri("cell://local#/page/intro?all(kw)"));
  CHECK(both == ctx_only);
  CHECK(both.context.size() == 2);
  REQUIRE(both.spans);
  CHECK(both.spans->size() == 2);

  auto hier = dereference(view, parse_uri("cell://local/page/intro"));
  CHECK(hier.node == NodeId(CellId("c-intro")));
  CHECK(hier.context.empty());
  CHECK_FALSE(hier.spans);

  CHECK(error_of([&] { dereference(view, parse_uri("cell://local#/page?all(kw)")); }).code() == Errc::fragment_on_composite);
  CHECK(error_of([&] { dereference(view, parse_uri("cell://other/page")); }).code() == Errc::not_local);
  CHECK(error_of([&] { dereference(view, parse_uri("cell://local#/nope")); }).code() == Errc::no_such_segment);
  CHECK(dereference(view, parse_uri("cell://local/")).node == NodeId(ComponentId("x-site")));
}

}
