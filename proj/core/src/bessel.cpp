#include "tradeoff/bessel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tradeoff/error.hpp"

namespace tradeoff::bessel {

bool is_half_integer_order(double nu) noexcept {
  const double twice = 2.0 * nu;
  return twice == std::round(twice);
}

double k(double nu, double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Bessel K needs x > 0");
  }
  nu = std::abs(nu);
  if (!is_half_integer_order(nu)) {
    std::ostringstream os;
    os << "Bessel K order " << nu << " is not a multiple of 1/2";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (x > 700.0) {
    return 0.0;
  }
  const bool integer_order = nu == std::round(nu);
  double order = integer_order ? 0.0 : 0.5;
  double k_lo;
  double k_hi;
  if (integer_order) {
    k_lo = std::cyl_bessel_k(0.0, x);
    k_hi = std::cyl_bessel_k(1.0, x);
  } else {
    k_lo = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    k_hi = k_lo * (1.0 + 1.0 / x);
  }
  if (nu == order) {
    return k_lo;
  }
  order += 1.0;
  while (order < nu) {
    const double next = k_lo + (2.0 * order / x) * k_hi;
    k_lo = k_hi;
    k_hi = next;
    order += 1.0;
  }
  return k_hi;
}

double h(double alpha, double s) { return std::pow(s, alpha) * k(alpha, s); }

double h_at_zero(double alpha) {
  return std::pow(2.0, alpha - 1.0) * std::tgamma(alpha);
}

double scaled_h(double alpha, double s, int p, double small_s) {
  if (s >= small_s) {
    return std::pow(s, p) * h(alpha, s);
  }
  // s^p h_alpha(s) ~ c * s^(p + alpha - |alpha|) (log s for alpha == 0).
  if (alpha > 0.0) {
    return p == 0 ? h_at_zero(alpha) : 0.0;
  }
  const double exponent = static_cast<double>(p) + 2.0 * alpha;
  if (alpha < 0.0 && exponent == 0.0) {
    return h_at_zero(-alpha);
  }
  if (exponent > 0.0) {
    return 0.0;
  }
  std::ostringstream os;
  os << "s^" << p << " h_" << alpha << "(s) diverges at s = 0";
  throw Error(ErrorCode::UnsupportedPair, os.str());
}

}  // namespace tradeoff::bessel
