#pragma once

namespace tradeoff::bessel {

// Modified Bessel function of the second kind K_nu(x) for x > 0 and
// nu >= 0 with 2*nu integral. Integer orders start from K_0, K_1 and half
// orders from the closed form of K_{1/2}, K_{3/2}; both then recur upward
// via K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu.
double k(double nu, double x);

// h_alpha(s) = s^alpha K_{|alpha|}(s), alpha may be negative.
double h(double alpha, double s);

// s^p h_alpha(s), replaced by its s -> 0 limit below small_s. Throws
// UnsupportedPair when the limit diverges.
double scaled_h(double alpha, double s, int p, double small_s = 1e-6);

// h_alpha(0) = 2^(alpha-1) Gamma(alpha), alpha > 0.
double h_at_zero(double alpha);

bool is_half_integer_order(double nu) noexcept;

}  // namespace tradeoff::bessel
