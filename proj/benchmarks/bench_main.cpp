#include <benchmark/benchmark.h>

#include <random>

#include "cellgraph/address.hpp"
#include "cellgraph/inline_tree.hpp"
#include "cellgraph/miracle.hpp"
#include "cellgraph/persistence.hpp"
#include "cellgraph/render.hpp"
#include "oracles.hpp"

using namespace cellgraph;

namespace {

const Repository& fixture() {
  static const Repository repo = import_repo(CELLGRAPH_FIXTURE_DIR);
  return repo;
}

void BM_ParseParagraph(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::string> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(oracle::random_markup(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(parse_paragraph(inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_ParseParagraph);

void BM_ParseUri(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_uri("cell://local/course/intro#/course/intro/symptoms[2]?node(/kw[1]/em[2])"));
}
BENCHMARK(BM_ParseUri);

void BM_EnumeratePaths(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto repo = oracle::random_repository(rng, {.max_nodes = static_cast<std::size_t>(state.range(0)),
                                              .cyclic_probability = 1.0});
  std::vector<NodeId> cells;
  for (const auto& [id, c] : repo.cells().all()) cells.emplace_back(id);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(repo.structure(), cells[i++ % cells.size()]));
}
BENCHMARK(BM_EnumeratePaths)->Arg(12)->Arg(50);

void BM_ActiveLinks(benchmark::State& state) {
  const auto& repo = fixture();
  ContextId ctx(state.range(0) == 0 ? "learner" : state.range(0) == 1 ? "farmer" : "student");
  for (auto _ : state) benchmark::DoNotOptimize(active_links(repo, ctx, ComponentId("x-intro")));
}
BENCHMARK(BM_ActiveLinks)->DenseRange(0, 2);

void BM_RenderPage(benchmark::State& state) {
  const auto& repo = fixture();
  for (auto _ : state) {
    auto tree = inject_links(repo, assemble_page(repo, SemanticPath::parse("/course/intro")), ContextId("learner"));
    benchmark::DoNotOptimize(emit_html(tree));
  }
}
BENCHMARK(BM_RenderPage);

void BM_Overview(benchmark::State& state) {
  const auto& repo = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(emit_html(generate_overview(repo, repo.config().root, 3)));
}
BENCHMARK(BM_Overview);

}  // namespace

BENCHMARK_MAIN();
