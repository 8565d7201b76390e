#include "tradeoff/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tradeoff/csv.hpp"
#include "tradeoff/detail/parallel.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/expansion_models.hpp"
#include "tradeoff/kernel_recovery.hpp"

namespace tradeoff {

namespace {

using nlohmann::json;

// Reads overrides and rejects keys nobody asked for.
class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_null() && !j_.is_object()) {
      throw Error(ErrorCode::ConfigError, where_ + ": parameters must be a JSON object");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!j_.is_object() || !j_.contains(key) || j_.at(key).is_null()) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ConfigError, where_ + ": bad value for '" + key + "': " + e.what());
    }
  }

  template <class T>
  std::optional<T> maybe(const std::string& key) {
    used_.insert(key);
    if (!j_.is_object() || !j_.contains(key) || j_.at(key).is_null()) return std::nullopt;
    return get<T>(key, T{});
  }

  void finish() const {
    if (!j_.is_object()) return;
    for (const auto& item : j_.items()) {
      if (!used_.count(item.key())) {
        throw Error(ErrorCode::ConfigError, where_ + ": unknown parameter '" + item.key() + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

// Files are buffered and written together at the end of a run.
class Output {
 public:
  explicit Output(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::ostringstream& open(const std::string& name) {
    files_.emplace_back(name, std::ostringstream{});
    return files_.back().second;
  }

  std::vector<std::filesystem::path> flush() {
    std::filesystem::create_directories(dir_);
    std::vector<std::filesystem::path> written;
    for (auto& [name, buffer] : files_) {
      const auto path = dir_ / name;
      std::ofstream os(path, std::ios::binary);
      if (!os) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
      os << buffer.str();
      written.push_back(path);
    }
    return written;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::ostringstream>> files_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double max_of(const std::vector<KansaEval>& rows, double KansaEval::*field) {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.*field);
  return m;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"fig1", "kansa", "identities", "greedy", "audit"};
  return names;
}

void validate(const ExperimentConfig& config) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), config.name) == names.end()) {
    throw Error(ErrorCode::ConfigError, "unknown experiment '" + config.name + "'");
  }
  if (!config.params.is_null() && !config.params.is_object()) {
    throw Error(ErrorCode::ConfigError, "experiment parameters must be a JSON object");
  }
}

// ---------------------------------------------------------------- fig1

Fig1Params fig1_params(const nlohmann::json& params) {
  Params in(params, "fig1");
  Fig1Params p;
  p.nodes = in.get("nodes", p.nodes);
  p.mu = in.get("mu", p.mu);
  p.tail_order = in.get("K", p.tail_order);
  p.weights = in.get("weights", p.weights);
  p.samples = in.get("samples", p.samples);
  in.finish();
  if (p.nodes < 2) throw Error(ErrorCode::ConfigError, "fig1: need at least 2 nodes");
  if (p.tail_order < p.nodes) throw Error(ErrorCode::ConfigError, "fig1: K must be at least the node count");
  if (p.samples < 2) throw Error(ErrorCode::ConfigError, "fig1: need at least 2 samples");
  return p;
}

std::vector<Fig1Family> fig1_families(const Fig1Params& p) {
  const WeightRule w = WeightRule::parse(p.weights);
  const Functional mu = Functional::point(p.mu);
  const std::size_t n = p.nodes - 1;
  const std::vector<std::pair<std::string, std::vector<double>>> node_sets{
      {"equidistant", equidistant_nodes(p.nodes)},
      {"cheb_extrema", chebyshev_extrema(p.nodes)},
      {"cheb_zeros", chebyshev_zeros(p.nodes)},
  };
  std::vector<Fig1Family> out;
  for (const auto& [name, nodes] : node_sets) {
    const FunctionalSet lambdas = point_set(nodes);
    Fig1Family f{name, nodes, cheb_addone_lagrangian(lambdas, w, n, mu), cheb_bump_min(lambdas, w, p.tail_order, mu)};
    f.lagr_norm = f.lagrangian.norm();
    f.bump_norm = f.bump.norm();
    f.power = cheb_power_addone(lambdas, w, n, p.tail_order, mu);
    f.product = f.power * f.bump_norm;
    f.power_low = cheb_power_addone(lambdas, w, n, n + 1, mu);
    f.product_low = f.power_low * f.lagr_norm;
    out.push_back(std::move(f));
  }
  return out;
}

RunResult run_fig1(const ExperimentConfig& config) {
  const Fig1Params p = fig1_params(config.params);
  const auto families = fig1_families(p);
  Output out(config.out_dir);
  RunResult result;
  json summary = {{"mu", p.mu}, {"K", p.tail_order}, {"nodes", p.nodes}, {"weights", p.weights}};
  for (const auto& f : families) {
    auto& os = out.open("fig1_" + f.name + ".csv");
    csv::write_row(os, {"x", "lagrangian", "bump"});
    for (std::size_t i = 0; i < p.samples; ++i) {
      const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(p.samples - 1);
      csv::write_row(os, {csv::format(x), csv::format(evaluate(f.lagrangian, x)), csv::format(evaluate(f.bump, x))});
    }
    summary["families"][f.name] = {{"lagr_norm", f.lagr_norm},     {"bump_norm", f.bump_norm},
                                   {"power", f.power},             {"product", f.product},
                                   {"power_low", f.power_low},     {"product_low", f.product_low}};
  }
  out.open("fig1_summary.json") << dump(summary);
  result.files = out.flush();
  result.summary = std::move(summary);
  return result;
}

// ---------------------------------------------------------------- kansa

KansaParams kansa_params(const nlohmann::json& params) {
  Params in(params, "kansa");
  KansaParams p;
  p.layout.interior_per_side = in.get("interior_per_side", p.layout.interior_per_side);
  p.layout.boundary_count = in.get("boundary_count", p.layout.boundary_count);
  p.layout.boundary_offset = in.get("boundary_offset", p.layout.boundary_offset);
  p.layout.trial_per_side = in.maybe<std::size_t>("trial_per_side");
  p.m = in.get("m", p.m);
  p.c = in.get("c", p.c);
  p.rtol = in.maybe<double>("rtol");
  p.eval_per_side = in.get("eval_per_side", p.eval_per_side);
  p.boundary_eval = in.get("boundary_eval", p.boundary_eval);
  in.finish();
  return p;
}

KansaResult kansa_experiment(const KansaParams& p, unsigned parallel) {
  const MaternSobolevKernel kernel(p.m, 2, p.c);
  const PoissonSetup setup = make_poisson_setup(p.layout, kernel);
  const KansaBuild build = build_kansa(setup, p.rtol);
  const UnsymmetricRecovery& rec = build.recovery;
  const PowerEvaluator sym(kernel, rec.functionals());

  KansaResult r;
  r.m_data = rec.functionals().size();
  r.n_trial = rec.trial_points().size();
  r.rank = build.rank;
  r.rtol = rec.rtol();

  for (const auto& x : interior_grid(p.eval_per_side)) r.interior.push_back({Functional::laplacian(x)});
  for (const auto& x : perimeter_points(p.boundary_eval)) r.boundary.push_back({Functional::point(x)});
  for (auto* rows : {&r.interior, &r.boundary}) {
    detail::parallel_for(rows->size(), parallel, [&](std::size_t i) {
      auto& row = (*rows)[i];
      row.p2_unsym = kansa_power_squared(rec, row.mu);
      row.p2_sym = sym.evaluate(row.mu).power_squared;
    });
  }

  // P^2 of lambda_k against the remaining data is 1 / (G^-1)_kk.
  const linalg::SpdFactorization factor(rec.data_gram());
  const Matrix identity = Matrix::Identity(rec.data_gram().rows(), rec.data_gram().cols());
  const Matrix inverse = factor.solve(identity);
  const Vector norms = pseudo_lagrangian_norms(rec);
  std::vector<double> factors;
  for (std::size_t k = 0; k < r.m_data; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    KansaSite s{rec.functionals()[k]};
    s.recip_pseudo_norm2 = 1.0 / norms(kk);
    s.p2_opt = 1.0 / inverse(kk, kk);
    s.factor = s.recip_pseudo_norm2 / s.p2_opt;
    factors.push_back(s.factor);
    r.sites.push_back(std::move(s));
  }
  std::sort(factors.begin(), factors.end());
  const std::size_t mid = factors.size() / 2;
  r.median_factor = factors.size() % 2 ? factors[mid] : 0.5 * (factors[mid - 1] + factors[mid]);

  r.interior_ratio = max_of(r.interior, &KansaEval::p2_unsym) / max_of(r.interior, &KansaEval::p2_sym);
  r.boundary_ratio = max_of(r.boundary, &KansaEval::p2_unsym) / max_of(r.boundary, &KansaEval::p2_sym);
  r.min_gap = INFINITY;
  for (const auto* rows : {&r.interior, &r.boundary}) {
    for (const auto& row : *rows) r.min_gap = std::min(r.min_gap, row.p2_unsym - row.p2_sym);
  }
  return r;
}

RunResult run_kansa(const ExperimentConfig& config) {
  const KansaParams p = kansa_params(config.params);
  const KansaResult r = kansa_experiment(p, config.parallel);
  Output out(config.out_dir);

  auto write_evals = [&](const std::string& stem, const std::vector<KansaEval>& rows, std::size_t row_length) {
    auto& os = out.open(stem + ".csv");
    csv::write_row(os, {"x", "y", "p2_unsym", "p2_sym"});
    std::vector<std::vector<double>> grid;
    for (const auto& row : rows) {
      const Point x = row.mu.location();
      csv::write_row(os, {csv::format(x[0]), csv::format(x[1]), csv::format(row.p2_unsym), csv::format(row.p2_sym)});
      grid.push_back({x[0], x[1], row.p2_unsym, row.p2_sym});
    }
    csv::write_gnuplot_grid(out.open(stem + ".dat"), grid, row_length);
  };
  write_evals("kansa_interior", r.interior, p.eval_per_side);
  write_evals("kansa_boundary", r.boundary, r.boundary.size());

  auto& sites = out.open("kansa_sites.csv");
  csv::write_row(sites, {"kind", "x", "y", "recip_pseudo_norm2", "p2_opt", "factor"});
  std::vector<std::vector<double>> site_grid;
  for (const auto& s : r.sites) {
    const Point x = s.lambda.location();
    csv::write_row(sites, {s.lambda.kind_name(), csv::format(x[0]), csv::format(x[1]),
                           csv::format(s.recip_pseudo_norm2), csv::format(s.p2_opt), csv::format(s.factor)});
    site_grid.push_back({x[0], x[1], s.recip_pseudo_norm2, s.p2_opt});
  }
  csv::write_gnuplot_grid(out.open("kansa_sites.dat"), site_grid, site_grid.size());

  json summary = {{"data_functionals", r.m_data},   {"trial_points", r.n_trial},
                  {"rank", r.rank},                 {"rtol", r.rtol},
                  {"interior_ratio", r.interior_ratio}, {"boundary_ratio", r.boundary_ratio},
                  {"median_factor", r.median_factor}, {"min_gap", r.min_gap}};
  out.open("kansa_summary.json") << dump(summary);
  RunResult result;
  result.files = out.flush();
  result.summary = std::move(summary);
  return result;
}

// ---------------------------------------------------------------- identities

const std::vector<std::string>& identity_suites() {
  static const std::vector<std::string> suites{"poly", "ctd", "taylor", "ortho", "kernel", "svd"};
  return suites;
}

IdentityOptions identity_options(const nlohmann::json& params, std::uint64_t seed, unsigned parallel) {
  Params in(params, "identities");
  IdentityOptions o;
  o.seed = seed;
  o.parallel = parallel;
  in.get<std::string>("suite", "all");
  o.perturb = in.get("perturb", o.perturb);
  o.poly_cases = in.get("poly_cases", o.poly_cases);
  o.ctd_cases = in.get("ctd_cases", o.ctd_cases);
  o.taylor_cases = in.get("taylor_cases", o.taylor_cases);
  o.ortho_cases = in.get("ortho_cases", o.ortho_cases);
  o.kernel_sets = in.get("kernel_sets", o.kernel_sets);
  o.svd_cases = in.get("svd_cases", o.svd_cases);
  o.kernel_scale = in.get("kernel_scale", o.kernel_scale);
  in.finish();
  return o;
}

namespace {

void note(IdentityCheck& c, double deviation) {
  // NaN counts as a failure
  if (!(deviation <= c.worst)) c.worst = std::isnan(deviation) ? INFINITY : std::max(c.worst, deviation);
  ++c.cases;
}

IdentityCheck make_check(std::string suite, std::string name, double tolerance) {
  IdentityCheck c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  c.tolerance = tolerance;
  return c;
}

void settle(IdentityCheck& c) { c.passed = c.worst <= c.tolerance; }

std::vector<IdentityCheck> poly_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> count(2, 11);
  IdentityCheck c = make_check("poly", "identity", 1e-11);
  for (std::size_t i = 0; i < o.poly_cases; ++i) {
    std::vector<double> nodes(count(rng));
    for (auto& x : nodes) x = unit(rng);
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) continue;
    double x = unit(rng);
    auto near = [&](double t) {
      return std::any_of(nodes.begin(), nodes.end(), [&](double xj) { return std::abs(t - xj) < 1e-9; });
    };
    while (near(x)) x = unit(rng);
    note(c, std::abs(poly_power(nodes, x) * poly_lagrangian_seminorm(nodes, x) - 1.0));
  }
  settle(c);
  return {c};
}

std::vector<IdentityCheck> ctd_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 2);
  std::uniform_real_distribution<double> left(-1.0, 1.0);
  std::uniform_real_distribution<double> width(1e-3, 1.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  IdentityCheck band = make_check("ctd", "band", 1e-12);
  IdentityCheck mid = make_check("ctd", "midpoint", 1e-12);
  for (std::size_t i = 0; i < o.ctd_cases; ++i) {
    const double a = left(rng);
    const double b = a + width(rng);
    double x = a + frac(rng) * (b - a);
    while (!(x > a && x < b)) x = a + frac(rng) * (b - a);
    const double p = ctd_power(a, b, x) * ctd_lagrangian_norm(a, b, x);
    note(band, std::max({0.0, 1.0 - p, p - 2.0}));
    const double m = 0.5 * (a + b);
    note(mid, std::abs(ctd_power(a, b, m) * ctd_lagrangian_norm(a, b, m) - 1.0));
  }
  settle(band);
  settle(mid);
  return {band, mid};
}

std::vector<IdentityCheck> taylor_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 3);
  std::uniform_real_distribution<double> base(0.5, 4.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::uniform_real_distribution<double> wiggle(0.5, 2.0);
  std::uniform_int_distribution<std::size_t> index(0, 30);
  IdentityCheck c = make_check("taylor", "identity", 1e-12);
  for (std::size_t i = 0; i < o.taylor_cases; ++i) {
    const double b = base(rng);
    const double a = scale(rng);
    std::vector<double> factors(31);
    for (auto& f : factors) f = wiggle(rng);
    const WeightRule rho = WeightRule::custom(
        "random", [a, b, factors](std::size_t j) { return a * std::pow(b, static_cast<double>(j)) * factors[j % factors.size()]; });
    const std::size_t k = index(rng);
    note(c, std::abs(taylor_power(rho, k) * taylor_monomial_norm(rho, k) - 1.0));
  }
  settle(c);
  return {c};
}

std::vector<IdentityCheck> ortho_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 4);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<std::size_t> length(1, 50);
  std::uniform_real_distribution<double> decade(-3.0, 3.0);
  IdentityCheck c = make_check("ortho", "identity", 1e-12);
  for (std::size_t i = 0; i < o.ortho_cases; ++i) {
    std::vector<double> tail(length(rng));
    const double s = std::pow(10.0, decade(rng));
    for (auto& t : tail) t = s * normal(rng);
    const OrthoResult r = ortho_power_and_bump(tail);
    note(c, std::abs(r.power * r.bump_norm - 1.0));
  }
  settle(c);
  return {c};
}

// Uniform points in [0,1]^d, pairwise at least min_gap apart and at least
// avoid_gap away from every point in `avoid`.
std::vector<Point> separated_points(std::mt19937_64& rng, std::size_t count, int d, double min_gap,
                                    const std::vector<Point>& avoid, double avoid_gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto far = [d](const Point& p, const std::vector<Point>& others, double gap) {
    return std::all_of(others.begin(), others.end(), [&](const Point& q) {
      double r2 = 0.0;
      for (int k = 0; k < d; ++k) r2 += (p[k] - q[k]) * (p[k] - q[k]);
      return r2 >= gap * gap;
    });
  };
  std::vector<Point> pts;
  for (std::size_t tries = 0; pts.size() < count; ++tries) {
    if (tries > 1000000) throw Error(ErrorCode::InvalidArgument, "cannot place separated random points");
    Point p(static_cast<std::size_t>(d));
    for (auto& x : p) x = unit(rng);
    if (far(p, pts, min_gap) && far(p, avoid, avoid_gap)) pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Point> evaluation_grid(int d) {
  std::vector<Point> pts;
  if (d == 1) {
    for (int i = 0; i < 50; ++i) pts.push_back({(i + 0.5) / 50.0});
  } else {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 5; ++j) pts.push_back({(i + 0.5) / 10.0, (j + 0.5) / 5.0});
    }
  }
  return pts;
}

std::vector<IdentityCheck> kernel_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 5);
  std::uniform_int_distribution<std::size_t> count(5, 30);
  IdentityCheck identity = make_check("kernel", "identity", 1e-5);
  IdentityCheck agree = make_check("kernel", "schur_bordered", PowerEvaluator::kAgreementTolerance);
  for (int m : {3, 4, 5}) {
    for (int d : {1, 2}) {
      const Kernel kernel = MaternSobolevKernel(m, d, o.kernel_scale);
      const std::vector<Point> grid = evaluation_grid(d);
      const FunctionalSet evals = point_set(grid);
      for (std::size_t s = 0; s < o.kernel_sets; ++s) {
        const std::size_t n = count(rng);
        const double gap = 0.25 / std::pow(static_cast<double>(n), 1.0 / d);
        const FunctionalSet lambdas = point_set(separated_points(rng, n, d, gap, grid, d == 1 ? 0.005 : 0.025));
        DualGram gram = dual_gram(kernel, lambdas);
        if (o.perturb) {
          gram.matrix(0, 1) *= 1.01;
          gram.matrix(1, 0) *= 1.01;
        }
        std::vector<double> dev_identity(evals.size(), 0.0);
        std::vector<double> dev_agree(evals.size(), 0.0);
        std::vector<char> excluded(evals.size(), 0);
        try {
          const PowerEvaluator evaluator(kernel, gram);
          detail::parallel_for(evals.size(), o.parallel, [&](std::size_t i) {
            const PowerEvaluation ev = evaluator.evaluate(evals[i]);
            dev_agree[i] = std::abs(ev.power_squared - ev.bordered) / ev.kernel_diagonal;
            try {
              const Vector c = evaluator.lagrangian_coefficients(evals[i]);
              // norm of the computed Lagrangian, measured with the true kernel
              FunctionalSet extended = lambdas;
              extended.push_back(evals[i]);
              const Matrix g = dual_gram(kernel, extended).matrix;
              dev_identity[i] = std::abs(ev.power_squared * c.dot(g * c) - 1.0);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::ExcludedCase) throw;
              excluded[i] = 1;
            }
          });
        } catch (const Error&) {
          // a broken Gram matrix fails the whole set
          std::fill(dev_identity.begin(), dev_identity.end(), INFINITY);
          std::fill(dev_agree.begin(), dev_agree.end(), INFINITY);
          std::fill(excluded.begin(), excluded.end(), 0);
        }
        for (std::size_t i = 0; i < evals.size(); ++i) {
          note(agree, dev_agree[i]);
          if (excluded[i]) {
            ++identity.excluded;
          } else {
            note(identity, dev_identity[i]);
          }
        }
      }
    }
  }
  settle(identity);
  settle(agree);
  return {identity, agree};
}

std::vector<IdentityCheck> svd_suite(const IdentityOptions& o) {
  auto rng = make_rng(o.seed, 6);
  std::uniform_int_distribution<std::size_t> size(2, 20);
  std::uniform_real_distribution<double> value(0.1, 10.0);
  std::normal_distribution<double> normal;
  IdentityCheck product = make_check("svd", "product", 1e-12);
  IdentityCheck monotone = make_check("svd", "tikhonov_monotone", 0.0);
  for (std::size_t i = 0; i < o.svd_cases; ++i) {
    const std::size_t m = size(rng);
    const std::size_t zeros = std::uniform_int_distribution<std::size_t>(1, m - 1)(rng);
    Vector sigma(static_cast<Eigen::Index>(m - zeros));
    for (auto& s : sigma) s = value(rng);
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    Vector mu(static_cast<Eigen::Index>(m));
    for (auto& x : mu) x = normal(rng);

    const SvdRecovery exact = SvdRecovery::from_singular_values(sigma, m);
    const double p2 = svd_power_squared(exact, mu);
    const SvdBump bump = svd_bump_min(exact, mu);
    note(product, std::abs(p2 * bump.norm * bump.norm - 1.0));

    double previous = p2;
    double worst_drop = 0.0;
    for (int t = 0; t < 19; ++t) {
      const double tau = std::pow(10.0, -6.0 + 8.0 * t / 18.0);
      const double current = svd_power_squared(SvdRecovery::from_singular_values(sigma, m, tau), mu);
      worst_drop = std::max(worst_drop, previous - current);
      previous = current;
    }
    note(monotone, worst_drop);
  }
  settle(product);
  settle(monotone);
  return {product, monotone};
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const std::string& suite, const IdentityOptions& options) {
  if (suite == "poly") return poly_suite(options);
  if (suite == "ctd") return ctd_suite(options);
  if (suite == "taylor") return taylor_suite(options);
  if (suite == "ortho") return ortho_suite(options);
  if (suite == "kernel") return kernel_suite(options);
  if (suite == "svd") return svd_suite(options);
  if (suite == "all") {
    std::vector<IdentityCheck> all;
    for (const auto& s : identity_suites()) {
      auto part = run_identity_suite(s, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw Error(ErrorCode::ConfigError, "unknown identity suite '" + suite + "'");
}

std::string format_identity_report(const std::vector<IdentityCheck>& checks) {
  std::ostringstream os;
  bool all = true;
  for (const auto& c : checks) {
    os << c.suite << ' ' << c.name << " cases=" << c.cases << " excluded=" << c.excluded
       << " worst=" << csv::format(c.worst) << " tol=" << csv::format(c.tolerance) << ' '
       << (c.passed ? "PASS" : "FAIL") << '\n';
    all = all && c.passed;
  }
  os << (all ? "ALL PASS" : "FAILED") << '\n';
  return os.str();
}

RunResult run_identities(const ExperimentConfig& config) {
  const IdentityOptions o = identity_options(config.params, config.seed, config.parallel);
  const std::string suite = config.params.is_object() ? config.params.value("suite", std::string("all")) : "all";
  const auto checks = run_identity_suite(suite, o);
  RunResult result;
  json rows = json::array();
  for (const auto& c : checks) {
    rows.push_back({{"suite", c.suite}, {"check", c.name}, {"cases", c.cases}, {"excluded", c.excluded},
                    {"worst", c.worst}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    result.ok = result.ok && c.passed;
  }
  result.summary = {{"seed", config.seed}, {"suite", suite}, {"perturb", o.perturb}, {"checks", rows},
                    {"passed", result.ok}};
  Output out(config.out_dir);
  out.open("identities_report.txt") << format_identity_report(checks);
  out.open("identities.json") << dump(result.summary);
  result.files = out.flush();
  return result;
}

// ---------------------------------------------------------------- greedy

GreedyParams greedy_params(const nlohmann::json& params) {
  Params in(params, "greedy");
  GreedyParams p;
  p.grid_per_side = in.get("grid_per_side", p.grid_per_side);
  p.steps = in.get("steps", p.steps);
  p.tolerance = in.get("tolerance", p.tolerance);
  p.m = in.get("m", p.m);
  p.c = in.get("c", p.c);
  in.finish();
  if (p.grid_per_side < 2) throw Error(ErrorCode::ConfigError, "greedy: grid_per_side must be >= 2");
  return p;
}

FunctionalSet greedy_candidates(const GreedyParams& p) {
  std::vector<Point> pts;
  const double h = 1.0 / static_cast<double>(p.grid_per_side - 1);
  for (std::size_t i = 0; i < p.grid_per_side; ++i) {
    for (std::size_t j = 0; j < p.grid_per_side; ++j) {
      pts.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h});
    }
  }
  return point_set(pts);
}

GreedyTrace greedy_experiment(const GreedyParams& p, unsigned parallel) {
  return p_greedy(MaternSobolevKernel(p.m, 2, p.c), greedy_candidates(p), p.steps, p.tolerance, parallel);
}

RunResult run_greedy(const ExperimentConfig& config) {
  const GreedyParams p = greedy_params(config.params);
  const GreedyTrace trace = greedy_experiment(p, config.parallel);
  Output out(config.out_dir);
  write_trace_csv(out.open("greedy_trace.csv"), trace);
  auto& pts = out.open("greedy_points.csv");
  csv::write_row(pts, {"x", "y"});
  for (const auto& f : trace.selected) {
    const Point x = f.location();
    csv::write_row(pts, {csv::format(x[0]), csv::format(x[1])});
  }
  RunResult result;
  result.summary = {{"steps", trace.steps()},
                    {"stop", to_string(trace.stop)},
                    {"final_max_power", trace.max_power.empty() ? 0.0 : trace.max_power.back()}};
  out.open("greedy_summary.json") << dump(result.summary);
  result.files = out.flush();
  return result;
}

// ---------------------------------------------------------------- audit

RunResult run_audit(const ExperimentConfig& config) {
  const json& problem = config.params;
  if (!problem.is_object() || !problem.contains("kernel") || !problem.contains("lambda") ||
      !problem.contains("eval")) {
    throw Error(ErrorCode::ConfigError, "audit needs a problem with 'kernel', 'lambda' and 'eval'");
  }
  const Kernel kernel = kernel_from_json(problem.at("kernel"));
  const FunctionalSet lambdas = functional_set_from_json(problem.at("lambda"));
  const FunctionalSet evals = functional_set_from_json(problem.at("eval"));
  const auto reports = tradeoff_report(kernel, lambdas, evals, config.parallel);

  RunResult result;
  std::size_t excluded = 0;
  std::size_t clamped = 0;
  double min_product = INFINITY;
  for (const auto& r : reports) {
    if (r.excluded) {
      ++excluded;
      continue;
    }
    clamped += r.clamped ? 1 : 0;
    min_product = std::min(min_product, r.product);
    result.ok = result.ok && r.product >= 1.0 - 1e-8;
  }
  Output out(config.out_dir);
  write_report_csv(out.open("audit_report.csv"), reports);
  result.summary = {{"rows", reports.size()}, {"excluded", excluded}, {"clamped", clamped},
                    {"min_product", std::isfinite(min_product) ? json(min_product) : json(nullptr)},
                    {"passed", result.ok}};
  out.open("audit_summary.json") << dump(result.summary);
  result.files = out.flush();
  return result;
}

RunResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.name == "fig1") return run_fig1(config);
  if (config.name == "kansa") return run_kansa(config);
  if (config.name == "identities") return run_identities(config);
  if (config.name == "greedy") return run_greedy(config);
  return run_audit(config);
}

}  // namespace tradeoff
