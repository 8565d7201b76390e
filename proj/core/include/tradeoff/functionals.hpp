#pragma once

// Data and evaluation functionals: point values, derivatives, Laplacians
// and expansion-coefficient extraction.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tradeoff/basis.hpp"
#include "tradeoff/linalg.hpp"

namespace tradeoff {

using Point = std::vector<double>;

struct PointEval {
  Point x;
  bool operator==(const PointEval&) const = default;
};

// d^order/dx^order f(x), univariate.
struct DerivEval {
  double x = 0.0;
  int order = 0;
  bool operator==(const DerivEval&) const = default;
};

struct LaplacianEval {
  Point x;
  bool operator==(const LaplacianEval&) const = default;
};

// j-th expansion coefficient.
struct CoeffEval {
  std::size_t j = 0;
  bool operator==(const CoeffEval&) const = default;
};

class Functional {
 public:
  using Kind = std::variant<PointEval, DerivEval, LaplacianEval, CoeffEval>;

  Functional(PointEval f);
  Functional(DerivEval f);
  Functional(LaplacianEval f);
  Functional(CoeffEval f);

  static Functional point(Point x) { return PointEval{std::move(x)}; }
  static Functional point(double x) { return PointEval{{x}}; }
  static Functional deriv(double x, int order) { return DerivEval{x, order}; }
  static Functional laplacian(Point x) { return LaplacianEval{std::move(x)}; }
  static Functional coeff(std::size_t j) { return CoeffEval{j}; }

  const Kind& kind() const noexcept { return kind_; }

  // Spatial dimension of the evaluation point; 0 for CoeffEval.
  std::size_t dimension() const noexcept;

  // Evaluation point, empty for CoeffEval.
  Point location() const;

  std::string kind_name() const;

  bool operator==(const Functional&) const = default;

 private:
  void validate() const;
  Kind kind_;
};

// Ordered, pairwise distinct list of functionals with optional labels.
class FunctionalSet {
 public:
  FunctionalSet() = default;
  explicit FunctionalSet(std::vector<Functional> items, std::vector<std::string> labels = {});

  void push_back(Functional f, std::string label = {});

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Functional& operator[](std::size_t i) const { return items_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  bool contains(const Functional& f) const;

  // Copy without entry i.
  FunctionalSet without(std::size_t i) const;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Functional>& items() const noexcept { return items_; }

 private:
  std::vector<Functional> items_;
  std::vector<std::string> labels_;
};

FunctionalSet point_set(const std::vector<double>& nodes);
FunctionalSet point_set(const std::vector<Point>& points);

double apply(const Functional& lambda, const ExpansionFunction& f);

// lambda(b_0..b_n) for one functional.
Vector apply_to_basis(const Functional& lambda, BasisKind basis, std::size_t n_max);

// M x (n_max+1) matrix with entry (j,k) = lambda_j(b_k).
Matrix vandermonde(const FunctionalSet& lambdas, BasisKind basis, std::size_t n_max);

void to_json(nlohmann::json& j, const Functional& f);
Functional functional_from_json(const nlohmann::json& j);
FunctionalSet functional_set_from_json(const nlohmann::json& j);

}  // namespace tradeoff
