#include <atomic>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "cellgraph/persistence.hpp"
#include "cellgraph/service.hpp"
#include "httplib.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace cellgraph;
using nlohmann::json;

namespace {

struct Server {
  std::shared_ptr<RepositoryHandle> handle;
  HttpService service;
  int port;
  std::thread thread;
  httplib::Client client;

  explicit Server(Repository repo, std::optional<std::filesystem::path> dir = std::nullopt)
      : handle(std::make_shared<RepositoryHandle>(std::move(repo), std::move(dir))),
        service(handle),
        port(service.bind_any_port("127.0.0.1")),
        thread([this] { service.run(); }),
        client("127.0.0.1", port) {
    service.wait_until_ready();
  }
  ~Server() {
    service.stop();
    thread.join();
  }

  std::uint64_t revision(const httplib::Result& r) { return std::stoull(r->get_header_value("X-Repository-Revision")); }
};

json body(const httplib::Result& r) { return json::parse(r->body); }

}  // namespace

TEST_SUITE("service") {

TEST_CASE("status mapping") {
  CHECK(http_status(Errc::unknown_node) == 404);
  CHECK(http_status(Errc::no_such_segment) == 404);
  CHECK(http_status(Errc::unknown_context) == 404);
  CHECK(http_status(Errc::ambiguous) == 409);
  CHECK(http_status(Errc::still_referenced) == 409);
  CHECK(http_status(Errc::hierarchical_conflict) == 409);
  CHECK(http_status(Errc::not_local) == 400);
  CHECK(http_status(Errc::fragment_on_composite) == 400);
  CHECK(http_status(Errc::malformed_markup) == 422);
  CHECK(http_status(Errc::bad_scheme) == 422);
  CHECK(http_status(Errc::write_error) == 500);
}

TEST_CASE("read endpoints") {
  Server s(import_repo(CELLGRAPH_FIXTURE_DIR));

  auto page = s.client.Get("/api/page?path=/course/intro&context=farmer");
  REQUIRE(page);
  CHECK(page->status == 200);
  auto tree = body(page);
  CHECK(tree["page"] == "x-intro");
  CHECK(tree["context"]["id"] == "farmer");
  bool glossary = false;
  for (const auto& b : tree["blocks"])
    for (const auto& d : b["decorations"]) glossary |= d["group"] == "glossary";
  CHECK(glossary);
  CHECK(page->get_header_value("Access-Control-Allow-Origin") == "*");

  auto html = s.client.Get("/api/page?path=/course/intro&context=learner&format=html");
  REQUIRE(html);
  CHECK(html->get_header_value("Content-Type").starts_with("text/html"));
  CHECK(oracle::html_problems(html->body) == "");

  auto back = s.client.Get("/api/backrefs/c-symptoms");
  REQUIRE(back);
  auto refs = body(back)["referrers"];
  CHECK(refs.size() == 2);
  CHECK(refs[0]["parent"] == "x-care");
  CHECK(refs[1]["parent"] == "x-intro");
  CHECK(body(s.client.Get("/api/backrefs/c-intro"))["referrers"].size() == 1);
  CHECK(s.client.Get("/api/backrefs/c-nothing")->status == 404);

  auto res = s.client.Get("/api/resolve?uri=cell%3A%2F%2Flocal%23%2Fcourse%2Fintro%2Fsymptoms%3Fwords(1..2)");
  REQUIRE(res);
  CHECK(res->status == 200);
  auto rj = body(res);
  CHECK(rj["node"] == "c-symptoms");
  CHECK(rj["spans"][0]["end"] == 2);
  CHECK(rj["context"].size() == 3);

  CHECK(s.client.Get("/api/resolve?uri=cell%3A%2F%2Fremote%2Fcourse")->status == 400);
  auto bad_uri = s.client.Get("/api/resolve?uri=http%3A%2F%2Fx");
  CHECK(bad_uri->status == 422);
  CHECK(body(bad_uri)["error"] == "BadScheme");
  CHECK(s.client.Get("/api/resolve?uri=cell%3A%2F%2Flocal%23%2Fnowhere")->status == 404);
  CHECK(s.client.Get("/api/resolve?uri=cell%3A%2F%2Flocal%2Fcourse%3Fwords(1..1)")->status == 400);

  auto ls = body(s.client.Get("/api/tree?path=/course"));
  REQUIRE(ls["entries"].size() == 2);
  CHECK(ls["entries"][0]["segment"] == "intro");

  auto ctx = body(s.client.Get("/api/contexts"))["contexts"];
  CHECK(ctx.size() == 3);

  auto cell = s.client.Get("/api/cells/c-intro-title");
  CHECK(body(cell)["kind"] == "title");
  CHECK(s.client.Get("/api/cells/c-none")->status == 404);

  auto lint = body(s.client.Get("/api/lint"));
  CHECK(lint["findings"].empty());
  CHECK(lint["errors"] == false);

  auto nav = body(s.client.Get("/api/overview?depth=2"));
  CHECK(nav["kind"] == "overview");
  CHECK(s.client.Get("/api/page?path=/course")->status == 200);
  CHECK(s.client.Get("/api/page?path=/course/intro&context=nobody")->status == 404);
  CHECK(s.client.Get("/api/page?path=/course/intro/intro")->status == 400);
}

TEST_CASE("mutations bump the revision once") {
  Server s(import_repo(CELLGRAPH_FIXTURE_DIR));
  auto r0 = s.revision(s.client.Get("/api/contexts"));
  CHECK(s.revision(s.client.Get("/api/page?path=/course/intro")) == r0);
  CHECK(s.revision(s.client.Get("/api/lint")) == r0);

  auto put = s.client.Put("/api/cells/c-new", R"({"kind":"paragraph","content":"<p>new <kw>word</kw></p>"})",
                          "application/json");
  REQUIRE(put);
  CHECK(put->status == 200);
  CHECK(s.revision(put) == r0 + 1);
  CHECK(body(put)["revision"] == r0 + 1);

  auto bad = s.client.Put("/api/cells/c-new", R"({"kind":"paragraph","content":"<p>a <b>x</b></p>"})",
                          "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 422);
  CHECK(body(bad)["error"] == "MalformedMarkup");
  CHECK(body(bad)["offset"] == 5);
  CHECK(s.revision(bad) == r0 + 1);

  auto linky = s.client.Put("/api/cells/c-new", R"({"kind":"paragraph","content":"<p>see cell://local/x</p>"})",
                            "application/json");
  CHECK(linky->status == 422);

  auto rel = s.client.Post("/api/relations", R"({"parent":"x-intro","name":"extra","child":"c-new"})",
                           "application/json");
  REQUIRE(rel);
  CHECK(rel->status == 201);
  CHECK(s.revision(rel) == r0 + 2);
  auto rid = body(rel)["id"].get<std::string>();
  auto page = body(s.client.Get("/api/page?path=/course/intro"));
  CHECK(page["blocks"].back()["cell"] == "c-new");

  auto still = s.client.Delete("/api/cells/c-new");
  CHECK(still->status == 409);
  CHECK(body(still)["related"][0] == rid);
  CHECK(s.client.Delete(("/api/relations/" + rid).c_str())->status == 200);
  auto del = s.client.Delete("/api/cells/c-new");
  CHECK(del->status == 200);
  CHECK(s.revision(del) == r0 + 4);

  auto hier = s.client.Post("/api/relations", R"({"parent":"x-site","name":"course","child":"x-glossary","hierarchical":true})",
                            "application/json");
  CHECK(hier->status == 409);

  CHECK(s.client.Put("/api/components/x-extra", R"({"kind":"page"})", "application/json")->status == 200);
  CHECK(s.client.Put("/api/anchors/a-new", R"j({"target":{"cell":"c-intro"},"selector":"words(1..1)"})j", "application/json")->status == 200);
  CHECK(s.client.Put("/api/links/l-new", R"({"group":"g","endpoints":[{"anchor":"a-new","role":"source"},{"anchor":"gloss-casad","role":"destination"}]})",
                     "application/json")->status == 200);
  CHECK(s.client.Put("/api/contexts/c2", R"({"name":"two","rules":[{"op":"include_group","group":"g"}]})",
                     "application/json")->status == 200);
  auto ctx = body(s.client.Get("/api/page?path=/course/intro&context=c2"));
  bool found = false;
  for (const auto& b : ctx["blocks"])
    for (const auto& d : b["decorations"]) found |= d["link"] == "l-new";
  CHECK(found);
  CHECK(s.revision(s.client.Get("/api/contexts")) == r0 + 8);

  auto garbage = s.client.Put("/api/cells/c-x", "{nope", "application/json");
  CHECK(garbage->status == 422);
  CHECK(s.revision(garbage) == r0 + 8);
}

TEST_CASE("mutations are persisted") {
  auto dir = std::filesystem::temp_directory_path() / "cellgraph-service-persist";
  std::filesystem::remove_all(dir);
  auto repo = import_repo(CELLGRAPH_FIXTURE_DIR);
  export_repo(repo, dir);
  {
    Server s(repo, dir);
    s.client.Put("/api/cells/c-intro", R"({"kind":"paragraph","content":"<p>changed</p>"})", "application/json");
  }
  auto back = import_repo(dir);
  CHECK(content_string(back.get_cell(CellId("c-intro"))) == "<p>changed</p>");
  CHECK(back.revision() == repo.revision() + 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("readers never see partial writes") {
  Server s(import_repo(CELLGRAPH_FIXTURE_DIR));
  std::string original;
  auto before = body(s.client.Get("/api/page?path=/course/care"));
  for (const auto& b : before["blocks"])
    if (b["cell"] == "c-care") original = b["text"];
  REQUIRE_FALSE(original.empty());
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    httplib::Client c("127.0.0.1", s.port);
    std::uint64_t last = 0;
    while (!done) {
      auto r = c.Get("/api/page?path=/course/care");
      if (!r || r->status != 200) {
        ++bad;
        continue;
      }
      auto rev = std::stoull(r->get_header_value("X-Repository-Revision"));
      if (rev < last) ++bad;
      last = rev;
      auto j = json::parse(r->body);
      // The care page shows one version of c-care, tagged with its revision.
      for (const auto& b : j["blocks"])
        if (b["cell"] == "c-care" && b["text"] != original && b["text"] != "care " + std::to_string(rev)) ++bad;
    }
  });
  for (int i = 0; i < 40; ++i) {
    auto rev = s.handle->snapshot()->revision() + 1;
    s.client.Put("/api/cells/c-care", json{{"kind", "paragraph"}, {"content", "<p>care " + std::to_string(rev) + "</p>"}}.dump(),
                 "application/json");
  }
  done = true;
  reader.join();
  CHECK(bad == 0);
}

}
