#include "qss/field.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qss {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

Fe pow_mod(Fe base, std::uint64_t exp, Fe d) {
  std::uint64_t result = 1;
  std::uint64_t b = base % d;
  while (exp > 0) {
    if (exp & 1) result = result * b % d;
    b = b * b % d;
    exp >>= 1;
  }
  return static_cast<Fe>(result);
}

Fe inv_mod(Fe a, Fe d) {
  if (a % d == 0) throw ParamError("inv_mod: zero has no inverse");
  // d prime, so a^(d-2) is the inverse.
  return pow_mod(a, d - 2, d);
}

SchemeParams SchemeParams::make(Fe d, int t, int n, std::vector<Fe> points) {
  if (!is_prime(d) || d < 3) throw ParamError("d must be an odd prime >= 3");
  if (t < 2) throw ParamError("t must be >= 2");
  if (n < t) throw ParamError("n must be >= t");
  if (static_cast<Fe>(n) > d - 1) throw ParamError("n must be <= d - 1");
  if (points.empty()) {
    points.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) points[static_cast<size_t>(i)] = static_cast<Fe>(i + 1);
  }
  if (points.size() != static_cast<size_t>(n)) {
    throw ParamError("public_points must have exactly n entries");
  }
  std::set<Fe> seen;
  for (Fe x : points) {
    if (x == 0 || x >= d) throw ParamError("public points must be nonzero and < d");
    if (!seen.insert(x).second) throw ParamError("public points must be distinct");
  }
  SchemeParams p;
  p.d = d;
  p.t = t;
  p.n = n;
  p.public_points = std::move(points);
  return p;
}

BivariatePolynomial poly_random(const SchemeParams& params, Rng& rng) {
  BivariatePolynomial f;
  f.d = params.d;
  f.t = params.t;
  f.coeffs.resize(static_cast<size_t>(params.t) * static_cast<size_t>(params.t));
  for (Fe& c : f.coeffs) c = static_cast<Fe>(uniform_below(rng, params.d));
  return f;
}

Fe poly_eval(const BivariatePolynomial& f, Fe x, Fe y) {
  // Horner in x over inner Horner evaluations in y.
  const Fe d = f.d;
  Fe acc = 0;
  for (int i = f.t - 1; i >= 0; --i) {
    Fe row = 0;
    for (int j = f.t - 1; j >= 0; --j) {
      row = add_mod(mul_mod(row, y, d), f.at(i, j), d);
    }
    acc = add_mod(mul_mod(acc, x, d), row, d);
  }
  return acc;
}

Fe poly_eval_univar(std::span<const Fe> coeffs, Fe x, Fe d) {
  Fe acc = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = add_mod(mul_mod(acc, x, d), coeffs[i], d);
  }
  return acc;
}

Share share_generate(const BivariatePolynomial& f, const SchemeParams& params, int i) {
  if (i < 1 || i > params.n) throw ParamError("participant index out of range");
  const Fe xi = params.point(i);
  const Fe d = f.d;
  Share s;
  s.owner = i;
  s.row_poly.resize(static_cast<size_t>(f.t));
  s.col_poly.resize(static_cast<size_t>(f.t));
  // row_poly[j] = sum_i a_ij xi^i, col_poly[i] = sum_j a_ij xi^j
  for (int j = 0; j < f.t; ++j) {
    Fe acc = 0;
    for (int k = f.t - 1; k >= 0; --k) {
      acc = add_mod(mul_mod(acc, xi, d), f.at(k, j), d);
    }
    s.row_poly[static_cast<size_t>(j)] = acc;
  }
  for (int k = 0; k < f.t; ++k) {
    Fe acc = 0;
    for (int j = f.t - 1; j >= 0; --j) {
      acc = add_mod(mul_mod(acc, xi, d), f.at(k, j), d);
    }
    s.col_poly[static_cast<size_t>(k)] = acc;
  }
  return s;
}

PairwiseKey pairwise_key(const Share& share, const SchemeParams& params, int other) {
  if (other == share.owner) throw ParamError("pairwise key requires distinct participants");
  if (other < 1 || other > params.n) throw ParamError("participant index out of range");
  PairwiseKey k;
  k.from = share.owner;
  k.to = other;
  k.key = poly_eval_univar(share.row_poly, params.point(other), params.d);
  return k;
}

Fe receiving_key(const Share& share, const SchemeParams& params, int other) {
  if (other == share.owner) throw ParamError("pairwise key requires distinct participants");
  if (other < 1 || other > params.n) throw ParamError("participant index out of range");
  return poly_eval_univar(share.col_poly, params.point(other), params.d);
}

Fe lagrange_at_zero(std::span<const std::pair<Fe, Fe>> points, Fe d) {
  if (points.empty()) throw ParamError("lagrange_at_zero: need at least one point");
  std::set<Fe> seen;
  for (const auto& [x, q] : points) {
    if (x == 0 || x >= d) throw ParamError("lagrange_at_zero: abscissas must be nonzero and < d");
    if (!seen.insert(x).second) throw ParamError("lagrange_at_zero: duplicate abscissa");
  }
  Fe acc = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto [xi, qi] = points[i];
    Fe coeff = 1;
    for (size_t k = 0; k < points.size(); ++k) {
      if (k == i) continue;
      const Fe xk = points[k].first;
      coeff = mul_mod(coeff, mul_mod(xk, inv_mod(sub_mod(xk, xi, d), d), d), d);
    }
    acc = add_mod(acc, mul_mod(qi, coeff, d), d);
  }
  return acc;
}

}  // namespace qss
