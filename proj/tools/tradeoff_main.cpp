// tradeoff <subcommand> [--config file.json] [--out dir] [--seed n] [--parallel k]

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tradeoff/error.hpp"
#include "tradeoff/experiments.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 0;
  unsigned parallel = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file with parameter overrides")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--parallel", c.parallel, "worker threads for grid evaluations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

nlohmann::json load(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream is(path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw tradeoff::Error(tradeoff::ErrorCode::ConfigError, path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power Functions, Lagrangian norms and trade-off identities"};
  app.require_subcommand(1);
  Common common;

  auto* fig1 = app.add_subcommand("fig1", "Chebyshev-expansion Lagrangian vs. bump function curves");
  auto* kansa = app.add_subcommand("kansa", "Poisson problem: unsymmetric vs. symmetric collocation");
  auto* identities = app.add_subcommand("identities", "check the trade-off identities on seeded instances");
  auto* greedy = app.add_subcommand("greedy", "P-greedy point selection on a grid");
  auto* audit = app.add_subcommand("audit", "trade-off report for a JSON problem {kernel, lambda, eval}");
  for (auto* sub : {fig1, kansa, identities, greedy, audit}) add_common(sub, common);

  std::string suite;
  bool perturb = false;
  identities->add_option("--suite", suite, "all, poly, ctd, taylor, ortho, kernel or svd");
  identities->add_flag("--perturb", perturb, "scale one Gram entry by 1.01 (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    tradeoff::ExperimentConfig config;
    config.name = app.get_subcommands().front()->get_name();
    config.params = load(common.config);
    config.out_dir = common.out;
    config.seed = common.seed;
    config.parallel = common.parallel;
    if (config.name == "identities") {
      if (!suite.empty()) config.params["suite"] = suite;
      if (perturb) config.params["perturb"] = true;
    }
    if (config.name == "audit" && common.config.empty()) {
      std::cerr << "audit needs --config problem.json\n";
      return 2;
    }
    const tradeoff::RunResult result = tradeoff::run_experiment(config);
    std::cout << result.summary.dump(2) << '\n';
    for (const auto& f : result.files) std::cerr << "wrote " << f.string() << '\n';
    return result.ok ? 0 : 1;
  } catch (const tradeoff::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
