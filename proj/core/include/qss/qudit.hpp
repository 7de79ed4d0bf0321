#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qss/field.hpp"
#include "qss/rng.hpp"

namespace qss {

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kNormTol = 1e-9;

// Pure state of one d-level system.
struct QuditState {
  Fe dim = 0;
  std::vector<std::complex<double>> amp;
};

// Basis number j and vector number l, both in Z_d.
struct MubLabel {
  Fe j = 0;
  Fe l = 0;
};

// System tensor ancilla, amplitude of |k>|a> at index k*dim + a.
struct BipartiteState {
  Fe dim = 0;
  std::vector<std::complex<double>> amp;
};

struct MeasureResult {
  Fe outcome = 0;
  QuditState post;
};

struct BipartiteMeasureResult {
  Fe outcome = 0;
  BipartiteState post;
};

double norm(const QuditState& s);
double norm(const BipartiteState& s);

// |v_l^(j)> with amplitude w^{k(l+jk)}/sqrt(d) on |k>, w = exp(2*pi*i/d).
QuditState mub_vector(Fe d, MubLabel label);

// <a|b>, conjugate-linear in the first argument.
std::complex<double> inner_product(const QuditState& a, const QuditState& b);

// U_{x,y} = X_d^x Y_d^y: multiplies amplitude k by w^{xk + yk^2}.
// On MUB vectors: |v_l^(j)> -> |v_{l+x}^(j+y)>, phase-exact.
QuditState apply_xy(const QuditState& state, Fe x, Fe y);

// Projective measurement in basis {|v_l^(j)>}; collapses onto the outcome.
MeasureResult measure_mub(const QuditState& state, Fe j, Rng& rng);

// Attach an ancilla |0> and apply the generalized controlled shift
// |k>|a> -> |k>|a+k mod d>.
BipartiteState csum_entangle(const QuditState& state);

// U_{x,y} on the system register only.
BipartiteState apply_xy_system(const BipartiteState& state, Fe x, Fe y);

// MUB measurement of the system register; the ancilla is untouched.
BipartiteMeasureResult measure_mub_system(const BipartiteState& state, Fe j, Rng& rng);

// Computational-basis measurement of the ancilla register.
BipartiteMeasureResult measure_ancilla(const BipartiteState& state, Rng& rng);

}  // namespace qss
