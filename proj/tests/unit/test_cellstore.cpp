#include <random>

#include "doctest.h"
#include "cellgraph/cellstore.hpp"
#include "cellgraph/error.hpp"
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

std::size_t offset_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    REQUIRE(e.offset().has_value());
    return *e.offset();
  }
  FAIL("expected an Error");
  return 0;
}

}  // namespace

TEST_SUITE("cellstore") {

TEST_CASE("parse plain paragraph") {
  auto t = parse_paragraph("<p>hello world</p>");
  CHECK(t == InlineTree{{text_node("hello world")}});
}

TEST_CASE("parse keyword paragraph") {
  auto t = parse_paragraph("<p>a <kw>wet-tail</kw> case</p>");
  CHECK(t == InlineTree{{text_node("a "), element_node(InlineKind::kw, {text_node("wet-tail")}), text_node(" case")}});
}

TEST_CASE("depth bound counts the root") {
  CHECK(code_of([] { parse_paragraph("<p><em><em><em><em>x</em></em></em></em></p>"); }) == Errc::malformed_markup);
  CHECK_NOTHROW(parse_paragraph("<p><em><em><em>x</em></em></em></p>"));
}

TEST_CASE("malformed markup reports offsets") {
  CHECK(offset_of([] { parse_paragraph("<p>a <b>x</b></p>"); }) == 5);
  CHECK(offset_of([] { parse_paragraph("<p>a <kw>x</em></p>"); }) == 10);
  CHECK(code_of([] { parse_paragraph("<p>a"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("x<p>a</p>"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p>a</p>trailing"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p>&quot;</p>"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p>a > b</p>"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p><cite ref=\"a b\"/></p>"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p><cite ref=\"x\"></cite></p>"); }) == Errc::malformed_markup);
  CHECK(code_of([] { parse_paragraph("<p><kw class=\"x\">a</kw></p>"); }) == Errc::malformed_markup);
}

TEST_CASE("entities and cite") {
  auto t = parse_paragraph("<p>a&lt;b &amp; c<cite ref=\"smith-2001\"/></p>");
  CHECK(t == InlineTree{{text_node("a<b & c"), cite_node("smith-2001")}});
  CHECK(serialize_paragraph(t) == "<p>a&lt;b &amp; c<cite ref=\"smith-2001\"/></p>");
}

TEST_CASE("parse normalizes adjacent and empty text") {
  auto t = parse_paragraph("<p><em></em>a<kw>b</kw></p>");
  CHECK(t.children.size() == 3);
  InlineTree raw{{text_node("a"), text_node(""), text_node("b")}};
  CHECK(normalize(raw) == InlineTree{{text_node("ab")}});
  CHECK_THROWS_AS(validate_tree(raw), Error);
}

TEST_CASE("serialize canonical forms") {
  CHECK(serialize_paragraph(InlineTree{{text_node("x")}}) == "<p>x</p>");
  CHECK(serialize_paragraph(InlineTree{{element_node(InlineKind::kw, {text_node("a<b")})}}) == "<p><kw>a&lt;b</kw></p>");
  CHECK(serialize_paragraph(InlineTree{}) == "<p></p>");
}

TEST_CASE("plain text") {
  CHECK(plain_text(InlineTree{{text_node("a "), element_node(InlineKind::kw, {text_node("b")})}}) == "a b");
  CHECK(plain_text(InlineTree{}) == "");
}

TEST_CASE("random trees round trip") {
  std::mt19937_64 rng(20261015);
  for (int i = 0; i < 1000; ++i) {
    auto tree = oracle::random_tree(rng);
    auto once = serialize_paragraph(tree);
    auto parsed = parse_paragraph(once);
    REQUIRE(parsed == tree);
    CHECK(serialize_paragraph(parsed) == once);
    CHECK(plain_text(parsed) == plain_text(tree));
    CHECK(word_count(parsed) == oracle::markup_words(once).size());
  }
}

TEST_CASE("wrapping text in markup keeps plain text") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto tree = oracle::random_tree(rng, 3);
    InlineTree wrapped{{element_node(InlineKind::term, tree.children)}};
    CHECK(plain_text(wrapped) == plain_text(tree));
  }
}

TEST_CASE("put get overwrite") {
  CellStore store;
  auto a = make_cell(CellId("c-a"), CellKind::paragraph, "<p>one</p>");
  store.put(a);
  CHECK(store.get(CellId("c-a")) == a);
  store.put(make_cell(CellId("c-a"), CellKind::paragraph, "<p>two</p>"));
  CHECK(content_string(store.get(CellId("c-a"))) == "<p>two</p>");
  CHECK(code_of([&] { store.get(CellId("c-zz")); }) == Errc::not_found);
  store.erase(CellId("c-a"));
  CHECK(code_of([&] { store.get(CellId("c-a")); }) == Errc::not_found);
  CHECK(code_of([&] { store.erase(CellId("c-a")); }) == Errc::not_found);
}

TEST_CASE("no-link invariant") {
  CellStore store;
  CHECK_NOTHROW(store.put(make_cell(CellId("c-h"), CellKind::paragraph, "<p>the href attribute</p>")));
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::paragraph, "<p>see cell://local/x</p>")); }) == Errc::invalid_cell);
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::paragraph, "<p>&lt;a href=\"x\"&gt;</p>")); }) == Errc::invalid_cell);
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::title, "href = x")); }) == Errc::invalid_cell);
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::title, "a <b>")); }) == Errc::invalid_cell);
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::title, "")); }) == Errc::invalid_cell);
  CHECK(code_of([&] { store.put(make_cell(CellId("c-h"), CellKind::paragraph, "<p>a <x>b</x></p>")); }) == Errc::malformed_markup);
  CHECK(code_of([&] { store.put(make_cell(CellId("x-h"), CellKind::title, "t")); }) == Errc::invalid_cell);
  CHECK(contains_link_markup("<a>"));
  CHECK_FALSE(contains_link_markup("a href here"));
}

TEST_CASE("repository revision and delete rules") {
  Repository repo(RepoConfig{ComponentId("x-root"), "t"});
  repo.put_component(Component{ComponentId("x-root"), ComponentKind::site, {}});
  auto r0 = repo.revision();
  repo.put_cell(make_cell(CellId("c-a"), CellKind::paragraph, "<p>a</p>"));
  CHECK(repo.revision() == r0 + 1);
  auto rel = repo.append_relation(ComponentId("x-root"), "para", CellId("c-a"));
  try {
    repo.delete_cell(CellId("c-a"));
    FAIL("delete of a referenced cell succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::still_referenced);
    CHECK(e.related() == std::vector<std::string>{rel.str()});
  }
  auto before = repo.revision();
  CHECK_THROWS_AS(repo.put_cell(make_cell(CellId("c-b"), CellKind::paragraph, "<p>b</p>", {{"", "x"}})), Error);
  CHECK(repo.revision() == before);
  repo.remove_relation(rel);
  repo.delete_cell(CellId("c-a"));
  CHECK(code_of([&] { repo.get_cell(CellId("c-a")); }) == Errc::not_found);
  repo.put_cell(make_cell(CellId("c-a"), CellKind::title, "fresh"));
  CHECK(repo.get_cell(CellId("c-a")).meta.empty());
  CHECK(content_string(repo.get_cell(CellId("c-a"))) == "fresh");
}

}
