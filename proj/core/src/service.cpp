#include "cellgraph/service.hpp"

#include "cellgraph/address.hpp"
#include "cellgraph/json_codec.hpp"
#include "cellgraph/lint.hpp"
#include "cellgraph/persistence.hpp"
#include "cellgraph/render.hpp"

#include "httplib.h"
#include "json.hpp"

namespace cellgraph {

using nlohmann::json;

RepositoryHandle::RepositoryHandle(Repository repo, std::optional<std::filesystem::path> persist_dir)
    : current_(std::make_shared<const Repository>(std::move(repo))), persist_dir_(std::move(persist_dir)) {}

std::shared_ptr<const Repository> RepositoryHandle::snapshot() const {
  std::lock_guard lock(read_mutex_);
  return current_;
}

std::uint64_t RepositoryHandle::mutate(const std::function<void(Repository&)>& change) {
  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<Repository>(*snapshot());
  change(*next);
  if (persist_dir_) export_repo(*next, *persist_dir_);
  auto revision = next->revision();
  std::lock_guard lock(read_mutex_);
  current_ = std::move(next);
  return revision;
}

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::not_found:
    case Errc::unknown_node:
    case Errc::no_such_segment:
    case Errc::index_out_of_range:
    case Errc::unknown_context:
    case Errc::unknown_page:
      return 404;
    case Errc::still_referenced:
    case Errc::hierarchical_conflict:
    case Errc::ambiguous:
      return 409;
    case Errc::not_composite:
    case Errc::not_renderable:
    case Errc::fragment_on_composite:
    case Errc::not_local:
      return 400;
    case Errc::load_error:
    case Errc::write_error:
      return 500;
    default:
      return 422;
  }
}

namespace {

json spans_json(const std::vector<FragmentSpan>& spans) {
  json out = json::array();
  for (const auto& s : spans) {
    json j = {{"cell", s.cell.str()}, {"start", s.start_word}, {"end", s.end_word}};
    if (s.node_path) j["node_path"] = format_steps(*s.node_path);
    out.push_back(std::move(j));
  }
  return out;
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_id, std::string("request body is not JSON: ") + e.what());
  }
}

}  // namespace

json error_json(const Error& e) {
  json body = {{"error", errc_name(e.code())}, {"detail", e.detail()}};
  if (e.offset()) body["offset"] = *e.offset();
  if (!e.related().empty()) body["related"] = e.related();
  return body;
}

json resolve_json(const Repository& repo, std::string_view uri) {
  auto addr = parse_uri(uri);
  auto view = repo.structure();
  auto deref = dereference(view, addr);
  return {{"uri", format_uri(addr)},
          {"node", deref.node.str()},
          {"kind", node_kind(view, deref.node)},
          {"context", chain_to_json(repo.graph(), deref.context)},
          {"spans", deref.spans ? spans_json(*deref.spans) : json(nullptr)}};
}

json tree_json(const Repository& repo, std::string_view path) {
  auto parsed = SemanticPath::parse(path);
  json entries = json::array();
  for (const auto& e : list_directory(repo.structure(), parsed))
    entries.push_back({{"segment", e.segment}, {"kind", e.kind}, {"node", e.node.str()}});
  return {{"path", parsed.str()}, {"entries", entries}};
}

json backrefs_json(const Repository& repo, const NodeId& node) {
  if (!repo.graph().node_exists(node, repo.cells())) throw Error(Errc::unknown_node, node.str());
  json refs = json::array();
  for (const auto& e : repo.graph().referrers(node, repo.cells()))
    refs.push_back({{"parent", e.parent.str()}, {"name", e.name}, {"relation", e.relation.str()}});
  return {{"node", node.str()}, {"referrers", refs}};
}

json contexts_json(const Repository& repo) {
  json list = json::array();
  for (const auto& [id, c] : repo.contexts()) list.push_back(context_to_json(c));
  return {{"contexts", list}};
}

json lint_json(const Repository& repo) {
  auto report = lint(repo);
  json findings = json::array();
  for (const auto& f : report.findings)
    findings.push_back({{"severity", severity_name(f.severity)}, {"code", f.code}, {"detail", f.detail}, {"subjects", f.subjects}});
  return {{"findings", findings}, {"errors", report.has_errors()}};
}

struct HttpService::Impl {
  std::shared_ptr<RepositoryHandle> repo;
  httplib::Server server;

  void reply(httplib::Response& res, int status, const json& body, std::uint64_t revision) {
    res.status = status;
    res.set_header("X-Repository-Revision", std::to_string(revision));
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Expose-Headers", "X-Repository-Revision");
    res.set_content(body.dump(), "application/json");
  }

  // Read handler over one snapshot.
  template <class Fn>
  httplib::Server::Handler read(Fn fn) {
    return [this, fn](const httplib::Request& req, httplib::Response& res) {
      auto snap = repo->snapshot();
      try {
        fn(*snap, req, res);
        res.set_header("X-Repository-Revision", std::to_string(snap->revision()));
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Expose-Headers", "X-Repository-Revision");
      } catch (const Error& e) {
        reply(res, http_status(e.code()), error_json(e), snap->revision());
      }
    };
  }

  // Mutation handler; `fn` returns the response body after applying its change.
  template <class Fn>
  httplib::Server::Handler write(int ok_status, Fn fn) {
    return [this, ok_status, fn](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        auto revision = repo->mutate([&](Repository& r) { body = fn(r, req); });
        body["revision"] = revision;
        reply(res, ok_status, body, revision);
      } catch (const Error& e) {
        reply(res, http_status(e.code()), error_json(e), repo->snapshot()->revision());
      }
    };
  }

  void routes() {
    server.Get("/api/resolve", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      res.set_content(resolve_json(r, req.get_param_value("uri")).dump(), "application/json");
    }));

    server.Get("/api/page", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      auto path = SemanticPath::parse(req.has_param("path") ? req.get_param_value("path") : "/");
      auto tree = assemble_page(r, path);
      if (req.has_param("context") && !req.get_param_value("context").empty())
        tree = inject_links(r, std::move(tree), ContextId(req.get_param_value("context")));
      if (req.has_param("format") && req.get_param_value("format") == "html")
        res.set_content(emit_html(tree), "text/html; charset=utf-8");
      else
        res.set_content(render_tree_json(tree).dump(), "application/json");
    }));

    server.Get("/api/overview", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      ComponentId root(req.has_param("root") ? req.get_param_value("root") : r.config().root.str());
      std::size_t depth = req.has_param("depth") ? std::stoul(req.get_param_value("depth")) : 2;
      res.set_content(render_tree_json(generate_overview(r, root, depth)).dump(), "application/json");
    }));

    server.Get("/api/tree", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      res.set_content(tree_json(r, req.has_param("path") ? req.get_param_value("path") : "/").dump(), "application/json");
    }));

    server.Get(R"(/api/backrefs/([^/]+))", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      res.set_content(backrefs_json(r, NodeId(req.matches[1].str())).dump(), "application/json");
    }));

    server.Get("/api/contexts", read([](const Repository& r, const httplib::Request&, httplib::Response& res) {
      res.set_content(contexts_json(r).dump(), "application/json");
    }));

    server.Get(R"(/api/cells/([^/]+))", read([](const Repository& r, const httplib::Request& req, httplib::Response& res) {
      res.set_content(cell_to_json(r.get_cell(CellId(req.matches[1].str()))).dump(), "application/json");
    }));

    server.Get("/api/lint", read([](const Repository& r, const httplib::Request&, httplib::Response& res) {
      res.set_content(lint_json(r).dump(), "application/json");
    }));

    server.Put(R"(/api/cells/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      auto cell = cell_from_json(parse_body(req), req.matches[1].str());
      auto id = cell.id.str();
      r.put_cell(std::move(cell));
      return json{{"id", id}};
    }));

    server.Delete(R"(/api/cells/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      r.delete_cell(CellId(req.matches[1].str()));
      return json{{"id", req.matches[1].str()}};
    }));

    server.Put(R"(/api/components/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      auto c = component_from_json(parse_body(req), req.matches[1].str());
      auto id = c.id.str();
      r.put_component(std::move(c));
      return json{{"id", id}};
    }));

    server.Post("/api/relations", write(201, [](Repository& r, const httplib::Request& req) {
      auto body = parse_body(req);
      if (!body.is_object() || !body.contains("parent") || !body.contains("name") || !body.contains("child"))
        throw Error(Errc::invalid_id, "relation needs parent, name and child");
      ComponentId parent(body.at("parent").get<std::string>());
      NodeId child(body.at("child").get<std::string>());
      std::size_t position = body.contains("position") ? body.at("position").get<std::size_t>()
                                                       : r.graph().relations_of(parent).size() + 1;
      auto id = r.add_relation(parent, body.at("name").get<std::string>(), child, position,
                               body.value("hierarchical", false));
      return json{{"id", id.str()}};
    }));

    server.Delete(R"(/api/relations/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      r.remove_relation(RelationId(req.matches[1].str()));
      return json{{"id", req.matches[1].str()}};
    }));

    server.Put(R"(/api/anchors/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      auto a = anchor_from_json(parse_body(req), req.matches[1].str());
      auto id = a.id.str();
      r.put_anchor(std::move(a));
      return json{{"id", id}};
    }));

    server.Put(R"(/api/links/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      auto l = link_from_json(parse_body(req), req.matches[1].str());
      auto id = l.id.str();
      r.put_link(std::move(l));
      return json{{"id", id}};
    }));

    server.Put(R"(/api/contexts/([^/]+))", write(200, [](Repository& r, const httplib::Request& req) {
      auto c = context_from_json(parse_body(req), req.matches[1].str());
      auto id = c.id.str();
      r.put_context(std::move(c));
      return json{{"id", id}};
    }));

    server.set_exception_handler([this](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      json body = {{"error", "BadRequest"}, {"detail", "unexpected failure"}};
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        body["detail"] = e.what();
      } catch (...) {
      }
      reply(res, 400, body, repo->snapshot()->revision());
    });
  }
};

HttpService::HttpService(std::shared_ptr<RepositoryHandle> repo) : impl_(std::make_unique<Impl>()) {
  impl_->repo = std::move(repo);
  impl_->routes();
}

HttpService::~HttpService() = default;

bool HttpService::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpService::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpService::run() { return impl_->server.listen_after_bind(); }
void HttpService::stop() { impl_->server.stop(); }
void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cellgraph
