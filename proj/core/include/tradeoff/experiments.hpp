#pragma once

// Experiment drivers behind the CLI subcommands. Each driver computes
// everything in memory first and writes its files once at the end.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tradeoff/basis.hpp"
#include "tradeoff/greedy.hpp"
#include "tradeoff/unsymmetric.hpp"

namespace tradeoff {

struct ExperimentConfig {
  std::string name;
  nlohmann::json params = nlohmann::json::object();  // overrides of the defaults
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  unsigned parallel = 1;
};

const std::vector<std::string>& experiment_names();

// Throws ConfigError for an unknown name or a non-object params value.
void validate(const ExperimentConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
  bool ok = true;
};

// --- chebyshev expansion figure ---

struct Fig1Params {
  std::size_t nodes = 11;
  double mu = -0.9056;
  std::size_t tail_order = 121;
  std::string weights = "(j+1)^2";
  std::size_t samples = 401;
};

struct Fig1Family {
  std::string name;
  std::vector<double> nodes;
  ExpansionFunction lagrangian;  // add-one-in, degree nodes
  ExpansionFunction bump;        // norm-minimal up to tail_order
  double lagr_norm = 0.0;
  double bump_norm = 0.0;
  double power = 0.0;        // add-one-in power summed up to tail_order
  double product = 0.0;      // power * bump_norm
  double power_low = 0.0;    // single tail term, k = nodes
  double product_low = 0.0;  // power_low * lagr_norm
};

Fig1Params fig1_params(const nlohmann::json& params);
// equidistant, cheb_extrema, cheb_zeros
std::vector<Fig1Family> fig1_families(const Fig1Params& p);

// --- Kansa collocation for the Poisson problem ---

struct KansaParams {
  PoissonLayout layout;
  int m = 5;
  double c = 1.0;
  std::optional<double> rtol;
  std::size_t eval_per_side = 21;  // Laplacian evaluation grid k/(n+1)
  std::size_t boundary_eval = 64;  // point evaluations along the boundary
};

struct KansaSite {
  Functional lambda;
  double recip_pseudo_norm2 = 0.0;  // 1 / |a_k|^2
  double p2_opt = 0.0;              // symmetric P^2 of lambda_k w.r.t. the other data
  double factor = 0.0;              // recip_pseudo_norm2 / p2_opt
};

struct KansaEval {
  Functional mu;
  double p2_unsym = 0.0;
  double p2_sym = 0.0;
};

struct KansaResult {
  std::size_t m_data = 0;
  std::size_t n_trial = 0;
  Eigen::Index rank = 0;
  double rtol = 0.0;
  std::vector<KansaEval> interior;
  std::vector<KansaEval> boundary;
  std::vector<KansaSite> sites;
  double interior_ratio = 0.0;  // max p2_unsym / max p2_sym over the interior grid
  double boundary_ratio = 0.0;
  double median_factor = 0.0;   // over all data sites
  double min_gap = 0.0;         // min of p2_unsym - p2_sym over both grids
};

KansaParams kansa_params(const nlohmann::json& params);
KansaResult kansa_experiment(const KansaParams& p, unsigned parallel = 1);

// --- trade-off identities ---

struct IdentityOptions {
  std::uint64_t seed = 0;
  bool perturb = false;  // scale Gram entry (0,1) by 1.01 in the kernel suite
  unsigned parallel = 1;
  std::size_t poly_cases = 200;
  std::size_t ctd_cases = 10000;
  std::size_t taylor_cases = 100;
  std::size_t ortho_cases = 100;
  std::size_t kernel_sets = 8;  // per (m, d)
  std::size_t svd_cases = 100;
  double kernel_scale = 0.05;
};

struct IdentityCheck {
  std::string suite;
  std::string name;
  std::size_t cases = 0;
  std::size_t excluded = 0;
  double worst = 0.0;  // largest deviation seen
  double tolerance = 0.0;
  bool passed = false;
};

const std::vector<std::string>& identity_suites();  // poly, ctd, taylor, ortho, kernel, svd

IdentityOptions identity_options(const nlohmann::json& params, std::uint64_t seed, unsigned parallel);
std::vector<IdentityCheck> run_identity_suite(const std::string& suite, const IdentityOptions& options);
std::string format_identity_report(const std::vector<IdentityCheck>& checks);

// --- P-greedy on a grid ---

struct GreedyParams {
  std::size_t grid_per_side = 10;  // candidates (i/(n-1), j/(n-1))
  std::size_t steps = 25;
  double tolerance = 0.0;
  int m = 5;
  double c = 1.0;
};

GreedyParams greedy_params(const nlohmann::json& params);
FunctionalSet greedy_candidates(const GreedyParams& p);
GreedyTrace greedy_experiment(const GreedyParams& p, unsigned parallel = 1);

// --- drivers ---

RunResult run_fig1(const ExperimentConfig& config);
RunResult run_kansa(const ExperimentConfig& config);
// config.params may carry "suite" (all|poly|...) and "perturb".
RunResult run_identities(const ExperimentConfig& config);
RunResult run_greedy(const ExperimentConfig& config);
// config.params is the problem: {"kernel": ..., "lambda": [...], "eval": [...]}.
RunResult run_audit(const ExperimentConfig& config);

RunResult run_experiment(const ExperimentConfig& config);

}  // namespace tradeoff
