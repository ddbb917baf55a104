// cellgraph: command-line front end for a repository directory.
#include <csignal>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cellgraph/lint.hpp"
#include "cellgraph/persistence.hpp"
#include "cellgraph/render.hpp"
#include "cellgraph/service.hpp"

namespace {

cellgraph::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cellgraph;

  CLI::App app{"Cell/graph hypertext repository tool"};
  app.require_subcommand(1);
  std::string repo_dir = ".";
  app.add_option("--repo", repo_dir, "Repository directory")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->fallthrough();
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  auto* resolve = app.add_subcommand("resolve", "Dereference a cell:// URI");
  resolve->fallthrough();
  std::string uri;
  resolve->add_option("uri", uri)->required();

  auto* render = app.add_subcommand("render", "Render a page");
  render->fallthrough();
  std::string page_path;
  std::string context;
  std::string format = "json";
  render->add_option("path", page_path)->required();
  render->add_option("--context", context, "Link context id");
  render->add_option("--format", format)->check(CLI::IsMember({"json", "html", "text"}))->capture_default_str();

  auto* ls = app.add_subcommand("ls", "List a composite's children");
  ls->fallthrough();
  std::string ls_path = "/";
  ls->add_option("path", ls_path)->capture_default_str();

  auto* backrefs = app.add_subcommand("backrefs", "Relations pointing at a node");
  backrefs->fallthrough();
  std::string node;
  backrefs->add_option("id", node)->required();

  auto* lint_cmd = app.add_subcommand("lint", "Check repository hygiene");
  lint_cmd->fallthrough();

  auto* export_cmd = app.add_subcommand("export", "Write the repository to DIR");
  export_cmd->fallthrough();
  std::string out_dir;
  export_cmd->add_option("dir", out_dir)->required();

  auto* import_cmd = app.add_subcommand("import", "Load DIR and store it as the repository");
  import_cmd->fallthrough();
  std::string in_dir;
  import_cmd->add_option("dir", in_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*import_cmd) {
      auto repo = import_repo(in_dir);
      export_repo(repo, repo_dir);
      std::cout << "imported revision " << repo.revision() << " into " << repo_dir << "\n";
      return 0;
    }

    auto repo = import_repo(repo_dir);

    if (*serve) {
      auto handle = std::make_shared<RepositoryHandle>(std::move(repo), repo_dir);
      HttpService service(handle);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      if (!service.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
    if (*resolve) {
      std::cout << resolve_json(repo, uri).dump(2) << "\n";
    } else if (*render) {
      auto tree = assemble_page(repo, SemanticPath::parse(page_path));
      if (!context.empty()) tree = inject_links(repo, std::move(tree), ContextId(context));
      if (format == "html")
        std::cout << emit_html(tree);
      else if (format == "text")
        std::cout << render_plain_text(tree);
      else
        std::cout << render_tree_json(tree).dump(2) << "\n";
    } else if (*ls) {
      auto listing = tree_json(repo, ls_path);
      for (const auto& e : listing.at("entries"))
        std::cout << e.at("segment").get<std::string>() << "\t" << e.at("kind").get<std::string>() << "\t"
                  << e.at("node").get<std::string>() << "\n";
    } else if (*backrefs) {
      auto refs = backrefs_json(repo, NodeId(node));
      for (const auto& e : refs.at("referrers"))
        std::cout << e.at("parent").get<std::string>() << "\t" << e.at("name").get<std::string>() << "\t"
                  << e.at("relation").get<std::string>() << "\n";
    } else if (*lint_cmd) {
      auto report = lint(repo);
      std::cout << format_report(report);
      return report.has_errors() ? 1 : 0;
    } else if (*export_cmd) {
      export_repo(repo, out_dir);
    }
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return 2;
  }
  return 0;
}
