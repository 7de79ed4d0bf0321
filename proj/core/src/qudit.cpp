#include "qss/qudit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qss {

namespace {

// w^e for w = exp(2*pi*i/d); exponent reduced mod d before the trig call
// so algebraically equal phases are bit-identical.
std::complex<double> omega_pow(Fe d, std::uint64_t e) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e % d) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

void require_normalized(double n2, const char* what) {
  if (std::abs(n2 - 1.0) > kNormTol) throw StateError(std::string(what) + ": state not normalized");
}

}  // namespace

double norm(const QuditState& s) {
  double n2 = 0;
  for (const auto& a : s.amp) n2 += std::norm(a);
  return std::sqrt(n2);
}

double norm(const BipartiteState& s) {
  double n2 = 0;
  for (const auto& a : s.amp) n2 += std::norm(a);
  return std::sqrt(n2);
}

QuditState mub_vector(Fe d, MubLabel label) {
  if (!is_prime(d)) throw ParamError("mub_vector: d must be prime");
  const Fe j = label.j % d;
  const Fe l = label.l % d;
  QuditState s;
  s.dim = d;
  s.amp.resize(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Fe k = 0; k < d; ++k) {
    const std::uint64_t e = std::uint64_t{k} * (l + std::uint64_t{j} * k);
    s.amp[k] = scale * omega_pow(d, e);
  }
  return s;
}

std::complex<double> inner_product(const QuditState& a, const QuditState& b) {
  if (a.dim != b.dim) throw ParamError("inner_product: dimension mismatch");
  std::complex<double> acc = 0;
  for (Fe k = 0; k < a.dim; ++k) acc += std::conj(a.amp[k]) * b.amp[k];
  return acc;
}

QuditState apply_xy(const QuditState& state, Fe x, Fe y) {
  const Fe d = state.dim;
  QuditState out = state;
  for (Fe k = 0; k < d; ++k) {
    const std::uint64_t e = std::uint64_t{x} * k + std::uint64_t{y} * k * k;
    out.amp[k] *= omega_pow(d, e);
  }
  return out;
}

MeasureResult measure_mub(const QuditState& state, Fe j, Rng& rng) {
  const Fe d = state.dim;
  if (!is_prime(d)) throw ParamError("measure_mub: d must be prime");
  require_normalized(norm(state) * norm(state), "measure_mub");
  std::vector<double> weights(d);
  for (Fe l = 0; l < d; ++l) {
    weights[l] = std::norm(inner_product(mub_vector(d, {j, l}), state));
  }
  const double u = uniform_unit(rng);
  double cum = 0;
  Fe outcome = d - 1;  // guard against rounding at the top of the CDF
  for (Fe l = 0; l < d; ++l) {
    cum += weights[l];
    if (u < cum) {
      outcome = l;
      break;
    }
  }
  return {outcome, mub_vector(d, {j, outcome})};
}

BipartiteState csum_entangle(const QuditState& state) {
  const Fe d = state.dim;
  BipartiteState out;
  out.dim = d;
  out.amp.assign(static_cast<size_t>(d) * d, 0.0);
  // ancilla starts in |0>; CSUM maps |k>|0> -> |k>|k>
  for (Fe k = 0; k < d; ++k) {
    out.amp[static_cast<size_t>(k) * d + k] = state.amp[k];
  }
  return out;
}

BipartiteState apply_xy_system(const BipartiteState& state, Fe x, Fe y) {
  const Fe d = state.dim;
  BipartiteState out = state;
  for (Fe k = 0; k < d; ++k) {
    const std::complex<double> phase = omega_pow(d, std::uint64_t{x} * k + std::uint64_t{y} * k * k);
    for (Fe a = 0; a < d; ++a) out.amp[static_cast<size_t>(k) * d + a] *= phase;
  }
  return out;
}

BipartiteMeasureResult measure_mub_system(const BipartiteState& state, Fe j, Rng& rng) {
  const Fe d = state.dim;
  if (!is_prime(d)) throw ParamError("measure_mub_system: d must be prime");
  require_normalized(norm(state) * norm(state), "measure_mub_system");
  // overlap[l][a] = <v_l^(j), a | state>
  std::vector<std::vector<std::complex<double>>> overlap(d);
  std::vector<double> weights(d, 0.0);
  for (Fe l = 0; l < d; ++l) {
    const QuditState v = mub_vector(d, {j, l});
    overlap[l].resize(d);
    for (Fe a = 0; a < d; ++a) {
      std::complex<double> acc = 0;
      for (Fe k = 0; k < d; ++k) acc += std::conj(v.amp[k]) * state.amp[static_cast<size_t>(k) * d + a];
      overlap[l][a] = acc;
      weights[l] += std::norm(acc);
    }
  }
  const double u = uniform_unit(rng);
  double cum = 0;
  Fe outcome = d - 1;
  for (Fe l = 0; l < d; ++l) {
    cum += weights[l];
    if (u < cum) {
      outcome = l;
      break;
    }
  }
  const QuditState v = mub_vector(d, {j, outcome});
  BipartiteMeasureResult res;
  res.outcome = outcome;
  res.post.dim = d;
  res.post.amp.assign(static_cast<size_t>(d) * d, 0.0);
  const double scale = 1.0 / std::sqrt(weights[outcome]);
  for (Fe k = 0; k < d; ++k) {
    for (Fe a = 0; a < d; ++a) {
      res.post.amp[static_cast<size_t>(k) * d + a] = v.amp[k] * overlap[outcome][a] * scale;
    }
  }
  return res;
}

BipartiteMeasureResult measure_ancilla(const BipartiteState& state, Rng& rng) {
  const Fe d = state.dim;
  require_normalized(norm(state) * norm(state), "measure_ancilla");
  std::vector<double> weights(d, 0.0);
  for (Fe a = 0; a < d; ++a) {
    for (Fe k = 0; k < d; ++k) weights[a] += std::norm(state.amp[static_cast<size_t>(k) * d + a]);
  }
  const double u = uniform_unit(rng);
  double cum = 0;
  Fe outcome = d - 1;
  for (Fe a = 0; a < d; ++a) {
    cum += weights[a];
    if (u < cum) {
      outcome = a;
      break;
    }
  }
  BipartiteMeasureResult res;
  res.outcome = outcome;
  res.post.dim = d;
  res.post.amp.assign(static_cast<size_t>(d) * d, 0.0);
  const double scale = 1.0 / std::sqrt(weights[outcome]);
  for (Fe k = 0; k < d; ++k) {
    res.post.amp[static_cast<size_t>(k) * d + outcome] =
        state.amp[static_cast<size_t>(k) * d + outcome] * scale;
  }
  return res;
}

}  // namespace qss
