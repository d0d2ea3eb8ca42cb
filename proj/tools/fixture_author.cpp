// Records replay fixtures for a benchmark directory. Each table may carry a
// responses.json script; the pipeline runs in record mode against it, so the
// stored fixtures are exactly the requests the pipeline makes.
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "scripted_transport.hpp"
#include "xform/pipeline/benchmark.hpp"
#include "xform/pipeline/report.hpp"

namespace fs = std::filesystem;
using namespace xform;

int main(int argc, char** argv) {
  CLI::App app{"Record replay fixtures from scripted responses"};
  std::string dataset;
  std::string fixtures;
  std::uint64_t seed = 0;
  std::size_t n_examples = 5;
  bool clean = false;
  app.add_option("--dataset", dataset, "benchmark directory")->required();
  app.add_option("--fixtures", fixtures, "fixture output directory")->required();
  app.add_option("--seed", seed, "example sampling seed");
  app.add_option("--n-examples", n_examples, "examples per table");
  app.add_flag("--clean", clean, "remove existing fixtures first");
  CLI11_PARSE(app, argc, argv);

  if (clean && fs::exists(fixtures)) {
    for (const auto& e : fs::directory_iterator(fixtures)) {
      if (e.path().extension() == ".json") fs::remove(e.path());
    }
  }
  ::setenv("XFORM_SCRIPTED_KEY", "scripted", 1);

  RunConfig cfg;
  cfg.backend.mode = BackendMode::Record;
  cfg.backend.model_name = "scripted";
  cfg.backend.api_key_env = "XFORM_SCRIPTED_KEY";
  cfg.backend.fixture_dir = fixtures;
  cfg.backend.max_retries = 0;
  cfg.seed = seed;
  cfg.n_examples = n_examples;

  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(dataset)) {
    if (e.is_directory() && fs::exists(e.path() / "source.csv")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());

  int failures = 0;
  for (const auto& dir : dirs) {
    std::shared_ptr<Transport> transport;
    if (fs::exists(dir / "responses.json")) {
      transport = testing::ScriptedTransport::load(dir / "responses.json");
    } else {
      transport = std::make_shared<testing::ScriptedTransport>();
    }
    const TableResult r = run_table(load_table_dir(dir), cfg, transport, PromptCatalog::builtin());
    std::cout << r.name << ": " << (r.ok ? "ok" : "failed: " + r.error) << "  f1 " << r.report.f1 << "\n";
    if (!r.ok) ++failures;
  }
  return failures == 0 ? 0 : 2;
}
