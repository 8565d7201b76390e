#include "tradeoff/functionals.hpp"

#include <cmath>
#include <sstream>

#include "tradeoff/detail/overloaded.hpp"
#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

using detail::overloaded;

void require_finite_point(const Point& x) {
  if (x.empty()) {
    throw Error(ErrorCode::InvalidArgument, "functional needs a nonempty point");
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "functional point has a non-finite coordinate");
    }
  }
}

}  // namespace

Functional::Functional(PointEval f) : kind_(std::move(f)) { validate(); }
Functional::Functional(DerivEval f) : kind_(f) { validate(); }
Functional::Functional(LaplacianEval f) : kind_(std::move(f)) { validate(); }
Functional::Functional(CoeffEval f) : kind_(f) {}

void Functional::validate() const {
  std::visit(overloaded{
                 [](const PointEval& p) { require_finite_point(p.x); },
                 [](const DerivEval& d) {
                   if (!std::isfinite(d.x)) {
                     throw Error(ErrorCode::InvalidArgument, "derivative point is not finite");
                   }
                   if (d.order < 0) {
                     throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
                   }
                 },
                 [](const LaplacianEval& l) { require_finite_point(l.x); },
                 [](const CoeffEval&) {},
             },
             kind_);
}

std::size_t Functional::dimension() const noexcept {
  return std::visit(overloaded{
                        [](const PointEval& p) { return p.x.size(); },
                        [](const DerivEval&) { return std::size_t{1}; },
                        [](const LaplacianEval& l) { return l.x.size(); },
                        [](const CoeffEval&) { return std::size_t{0}; },
                    },
                    kind_);
}

Point Functional::location() const {
  return std::visit(overloaded{
                        [](const PointEval& p) { return p.x; },
                        [](const DerivEval& d) { return Point{d.x}; },
                        [](const LaplacianEval& l) { return l.x; },
                        [](const CoeffEval&) { return Point{}; },
                    },
                    kind_);
}

std::string Functional::kind_name() const {
  return std::visit(overloaded{
                        [](const PointEval&) { return std::string("point"); },
                        [](const DerivEval&) { return std::string("deriv"); },
                        [](const LaplacianEval&) { return std::string("laplacian"); },
                        [](const CoeffEval&) { return std::string("coeff"); },
                    },
                    kind_);
}

FunctionalSet::FunctionalSet(std::vector<Functional> items, std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != items.size()) {
    throw Error(ErrorCode::DimensionMismatch, "label count differs from functional count");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    push_back(std::move(items[i]), labels.empty() ? std::string{} : std::move(labels[i]));
  }
}

void FunctionalSet::push_back(Functional f, std::string label) {
  if (contains(f)) {
    throw Error(ErrorCode::InvalidArgument, "duplicate functional in set");
  }
  items_.push_back(std::move(f));
  labels_.push_back(std::move(label));
}

bool FunctionalSet::contains(const Functional& f) const {
  for (const auto& g : items_) {
    if (g == f) return true;
  }
  return false;
}

FunctionalSet FunctionalSet::without(std::size_t i) const {
  FunctionalSet out;
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (k != i) out.push_back(items_[k], labels_[k]);
  }
  return out;
}

FunctionalSet point_set(const std::vector<double>& nodes) {
  FunctionalSet set;
  for (double x : nodes) set.push_back(Functional::point(x));
  return set;
}

FunctionalSet point_set(const std::vector<Point>& points) {
  FunctionalSet set;
  for (const auto& p : points) set.push_back(Functional::point(p));
  return set;
}

Vector apply_to_basis(const Functional& lambda, BasisKind basis, std::size_t n_max) {
  const auto n = static_cast<Eigen::Index>(n_max + 1);
  return std::visit(
      overloaded{
          [&](const CoeffEval& c) -> Vector {
            Vector row = Vector::Zero(n);
            if (static_cast<Eigen::Index>(c.j) < n) row(static_cast<Eigen::Index>(c.j)) = 1.0;
            return row;
          },
          [&](const PointEval& p) -> Vector {
            if (p.x.size() != 1) {
              throw Error(ErrorCode::UnsupportedPair, "univariate basis needs a 1-D point functional");
            }
            return basis::derivative_table(basis, p.x[0], n_max, 0).row(0).transpose();
          },
          [&](const DerivEval& d) -> Vector {
            return basis::derivative_table(basis, d.x, n_max, static_cast<std::size_t>(d.order))
                .row(d.order)
                .transpose();
          },
          [&](const LaplacianEval&) -> Vector {
            throw Error(ErrorCode::UnsupportedPair,
                        "Laplacian functional cannot act on a univariate " + to_string(basis) + " expansion");
          },
      },
      lambda.kind());
}

double apply(const Functional& lambda, const ExpansionFunction& f) {
  if (const auto* c = std::get_if<CoeffEval>(&lambda.kind())) {
    const auto j = static_cast<Eigen::Index>(c->j);
    return j < f.coefficients.size() ? f.coefficients(j) : 0.0;
  }
  if (f.coefficients.size() == 0) {
    return 0.0;
  }
  const Vector row = apply_to_basis(lambda, f.basis, static_cast<std::size_t>(f.coefficients.size() - 1));
  return row.dot(f.coefficients);
}

Matrix vandermonde(const FunctionalSet& lambdas, BasisKind basis, std::size_t n_max) {
  Matrix a(static_cast<Eigen::Index>(lambdas.size()), static_cast<Eigen::Index>(n_max + 1));
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    a.row(static_cast<Eigen::Index>(j)) = apply_to_basis(lambdas[j], basis, n_max).transpose();
  }
  return a;
}

void to_json(nlohmann::json& j, const Functional& f) {
  std::visit(overloaded{
                 [&](const PointEval& p) { j = {{"kind", "point"}, {"x", p.x}}; },
                 [&](const DerivEval& d) { j = {{"kind", "deriv"}, {"x", nlohmann::json::array({d.x})}, {"order", d.order}}; },
                 [&](const LaplacianEval& l) { j = {{"kind", "laplacian"}, {"x", l.x}}; },
                 [&](const CoeffEval& c) { j = {{"kind", "coeff"}, {"j", c.j}}; },
             },
             f.kind());
}

Functional functional_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return Functional::point(j.at("x").get<Point>());
    if (kind == "laplacian") return Functional::laplacian(j.at("x").get<Point>());
    if (kind == "coeff") return Functional::coeff(j.at("j").get<std::size_t>());
    if (kind == "deriv") {
      const auto& x = j.at("x");
      const double xv = x.is_array() ? x.at(0).get<double>() : x.get<double>();
      return Functional::deriv(xv, j.at("order").get<int>());
    }
    throw Error(ErrorCode::ConfigError, "unknown functional kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad functional JSON: ") + e.what());
  }
}

FunctionalSet functional_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::ConfigError, "functional set must be a JSON array");
  }
  FunctionalSet set;
  for (const auto& item : j) {
    std::string label = item.contains("label") ? item.at("label").get<std::string>() : std::string{};
    set.push_back(functional_from_json(item), std::move(label));
  }
  return set;
}

}  // namespace tradeoff
