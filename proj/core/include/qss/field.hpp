#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qss/rng.hpp"

namespace qss {

// Residue modulo the scheme prime d, always kept reduced.
using Fe = std::uint32_t;

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

inline Fe add_mod(Fe a, Fe b, Fe d) { return (a + b) % d; }
inline Fe sub_mod(Fe a, Fe b, Fe d) { return (a + d - b % d) % d; }
inline Fe mul_mod(Fe a, Fe b, Fe d) {
  return static_cast<Fe>(std::uint64_t{a} * b % d);
}
Fe pow_mod(Fe base, std::uint64_t exp, Fe d);
// d prime, a != 0 mod d.
Fe inv_mod(Fe a, Fe d);

// Public scheme parameters: prime dimension d, threshold t, participant
// count n, and the participants' public points x_1..x_n.
struct SchemeParams {
  Fe d = 0;
  int t = 0;
  int n = 0;
  std::vector<Fe> public_points;  // x_i at index i-1

  // Validates all invariants; empty points defaults to x_i = i.
  static SchemeParams make(Fe d, int t, int n, std::vector<Fe> points = {});

  Fe point(int i) const { return public_points.at(static_cast<size_t>(i) - 1); }
};

// Coefficient matrix of F(x,y) = sum a_ij x^i y^j mod d, both degrees t-1.
struct BivariatePolynomial {
  Fe d = 0;
  int t = 0;
  std::vector<Fe> coeffs;  // row-major t*t, coeffs[i*t + j] = a_ij

  Fe at(int i, int j) const {
    return coeffs[static_cast<size_t>(i) * static_cast<size_t>(t) + static_cast<size_t>(j)];
  }
};

// A participant's pair of univariate restrictions of F.
struct Share {
  int owner = 0;
  std::vector<Fe> row_poly;  // F(x_owner, y) as coefficients in y
  std::vector<Fe> col_poly;  // F(x, x_owner) as coefficients in x
};

struct PairwiseKey {
  int from = 0;
  int to = 0;
  Fe key = 0;  // F(x_from, x_to)
};

BivariatePolynomial poly_random(const SchemeParams& params, Rng& rng);

Fe poly_eval(const BivariatePolynomial& f, Fe x, Fe y);

// Horner evaluation of a univariate coefficient vector (c0 + c1 x + ...).
Fe poly_eval_univar(std::span<const Fe> coeffs, Fe x, Fe d);

Share share_generate(const BivariatePolynomial& f, const SchemeParams& params, int i);

// Key for traffic from share.owner toward `other`: F(x_owner, x_other),
// computed from the row restriction.
PairwiseKey pairwise_key(const Share& share, const SchemeParams& params, int other);

// Key for traffic arriving from `other`: F(x_other, x_owner), computed
// from the column restriction.
Fe receiving_key(const Share& share, const SchemeParams& params, int other);

// Degree-(size-1) interpolant through the points, evaluated at 0.
// Points must have distinct nonzero abscissas.
Fe lagrange_at_zero(std::span<const std::pair<Fe, Fe>> points, Fe d);

inline Fe otp_encrypt(Fe m, Fe k, Fe d) { return add_mod(m, k, d); }
inline Fe otp_decrypt(Fe c, Fe k, Fe d) { return sub_mod(c, k, d); }

}  // namespace qss
