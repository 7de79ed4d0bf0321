#include "qss/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qss {

namespace {

std::vector<int> default_recovery_set(const SchemeParams& params) {
  std::vector<int> rs(static_cast<size_t>(params.t));
  std::iota(rs.begin(), rs.end(), 1);
  return rs;
}

}  // namespace

const char* to_string(AttackConfig::Kind kind) {
  switch (kind) {
    case AttackConfig::Kind::Dishonest: return "dishonest";
    case AttackConfig::Kind::InterceptResend: return "intercept-resend";
    case AttackConfig::Kind::EntangleMeasure: return "entangle-measure";
    case AttackConfig::Kind::Collusion: return "collusion";
  }
  return "?";
}

AttackStats attack_dishonest(const SchemeParams& params, Fe secret, int cheater,
                             std::uint64_t seed, int trials) {
  AttackStats stats;
  stats.kind = AttackConfig::Kind::Dishonest;
  stats.trials = trials;
  stats.seed = seed;
  const std::vector<int> rs = default_recovery_set(params);
  BehaviorConfig behavior;
  behavior.dishonest = cheater;
  int detected = 0;
  int identified = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ProtocolTranscript tr =
        run_session(params, secret, rs, behavior, mix_seed(seed, static_cast<std::uint64_t>(trial)));
    if (!tr.verdicts.all_pass()) ++detected;
    if (tr.verdicts.p_crosscheck == std::vector<int>{cheater}) ++identified;
  }
  stats.detection_rate = static_cast<double>(detected) / trials;
  stats.cheater_identified_rate = static_cast<double>(identified) / trials;
  return stats;
}

AttackStats attack_intercept_resend(const SchemeParams& params, Fe secret, int hop,
                                    std::uint64_t seed, int trials) {
  AttackStats stats;
  stats.kind = AttackConfig::Kind::InterceptResend;
  stats.trials = trials;
  stats.seed = seed;
  const std::vector<int> rs = default_recovery_set(params);
  BehaviorConfig behavior;
  behavior.channel = BehaviorConfig::Channel::InterceptResend;
  behavior.hop = hop;
  int basis_matched = 0;
  int guessed = 0;
  int detected = 0;
  Rng eve_rng(mix_seed(seed, 0x657665));  // Eve's own guesses of the p-sum
  for (int trial = 0; trial < trials; ++trial) {
    const ProtocolTranscript tr =
        run_session(params, secret, rs, behavior, mix_seed(seed, static_cast<std::uint64_t>(trial)));
    if (tr.eve.basis_matched) ++basis_matched;
    // Eve's best guess of S: her measured index minus the cumulative p-sum
    // up to the hop, which she must guess uniformly unless the hop is the
    // dealer's own segment (empty sum).
    Fe partial_guess = 0;
    if (hop > 0) partial_guess = static_cast<Fe>(uniform_below(eve_rng, params.d));
    const Fe guess = sub_mod(*tr.eve.outcome, partial_guess, params.d);
    if (guess == secret % params.d) ++guessed;
    if (!tr.verdicts.all_pass()) ++detected;
  }
  stats.eve_basis_match_rate = static_cast<double>(basis_matched) / trials;
  stats.eve_secret_guess_rate = static_cast<double>(guessed) / trials;
  stats.detection_rate = static_cast<double>(detected) / trials;
  return stats;
}

AttackStats attack_entangle_measure(const SchemeParams& params, Fe secret, int hop,
                                    std::uint64_t seed, int trials) {
  AttackStats stats;
  stats.kind = AttackConfig::Kind::EntangleMeasure;
  stats.trials = trials;
  stats.seed = seed;
  const std::vector<int> rs = default_recovery_set(params);
  BehaviorConfig behavior;
  behavior.channel = BehaviorConfig::Channel::EntangleMeasure;
  behavior.hop = hop;
  int guessed = 0;
  int detected = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ProtocolTranscript tr =
        run_session(params, secret, rs, behavior, mix_seed(seed, static_cast<std::uint64_t>(trial)));
    if (*tr.eve.ancilla_outcome == secret % params.d) ++guessed;
    if (!tr.verdicts.all_pass()) ++detected;
  }
  stats.eve_secret_guess_rate = static_cast<double>(guessed) / trials;
  stats.detection_rate = static_cast<double>(detected) / trials;
  return stats;
}

AttackStats attack_collusion(const SchemeParams& params, Fe secret,
                             const std::vector<int>& colluders, std::uint64_t seed,
                             std::uint64_t enumeration_cap) {
  if (colluders.size() != static_cast<size_t>(params.t) - 1) {
    throw ParamError("collusion requires exactly t-1 colluders");
  }
  std::set<int> cset(colluders.begin(), colluders.end());
  if (cset.size() != colluders.size()) throw ParamError("colluders must be distinct");
  int honest = 0;
  for (int i = 1; i <= params.n; ++i) {
    if (!cset.count(i)) {
      honest = i;
      break;
    }
  }
  if (honest == 0) throw ParamError("no honest participant left");

  const int ncoeff = params.t * params.t;
  double space = 1.0;
  for (int i = 0; i < ncoeff; ++i) space *= static_cast<double>(params.d);
  if (space > static_cast<double>(enumeration_cap)) {
    throw ParamError("collusion enumeration exceeds the configured cap");
  }

  // One honest session; the honest participant measures and broadcasts R'.
  std::vector<int> rs = colluders;
  rs.push_back(honest);
  Rng rng(seed);
  const BivariatePolynomial poly = poly_random(params, rng);
  const ProtocolTranscript tr = run_session_with_poly(params, poly, secret, rs, {}, seed);

  AttackStats stats;
  stats.kind = AttackConfig::Kind::Collusion;
  stats.trials = 1;
  stats.seed = seed;

  // Colluders' view: their shares, each other's (p, q), and R'. Enumerate
  // every coefficient matrix consistent with the shares; each candidate
  // implies a secret R' - sum(colluder p) - F~(x_h, x_h).
  std::vector<Share> shares;
  Fe colluder_p_sum = 0;
  for (int c : colluders) {
    shares.push_back(share_generate(poly, params, c));
    colluder_p_sum = add_mod(colluder_p_sum, poly_eval(poly, params.point(c), params.point(c)), params.d);
  }
  const Fe r_prime = *tr.r_prime;
  const Fe xh = params.point(honest);

  BivariatePolynomial cand;
  cand.d = params.d;
  cand.t = params.t;
  cand.coeffs.assign(static_cast<size_t>(ncoeff), 0);
  while (true) {
    bool consistent = true;
    for (size_t ci = 0; ci < shares.size(); ++ci) {
      const Share cs = share_generate(cand, params, colluders[ci]);
      if (cs.row_poly != shares[ci].row_poly || cs.col_poly != shares[ci].col_poly) {
        consistent = false;
        break;
      }
    }
    if (consistent) {
      const Fe ph = poly_eval(cand, xh, xh);
      const Fe implied = sub_mod(r_prime, add_mod(colluder_p_sum, ph, params.d), params.d);
      ++stats.posterior[implied];
    }
    // odometer over the coefficient matrix
    int pos = 0;
    while (pos < ncoeff && ++cand.coeffs[static_cast<size_t>(pos)] == params.d) {
      cand.coeffs[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == ncoeff) break;
  }

  std::uint64_t total = 0;
  std::uint64_t best = 0;
  for (const auto& [cand_secret, count] : stats.posterior) {
    total += count;
    best = std::max(best, count);
  }
  stats.eve_secret_guess_rate = total ? static_cast<double>(best) / static_cast<double>(total) : 0.0;
  stats.detection_rate = 0.0;  // colluders follow the protocol
  return stats;
}

AttackStats run_attack(const SchemeParams& params, Fe secret, const AttackConfig& config) {
  switch (config.kind) {
    case AttackConfig::Kind::Dishonest:
      return attack_dishonest(params, secret, config.position, config.seed, config.trials);
    case AttackConfig::Kind::InterceptResend:
      return attack_intercept_resend(params, secret, config.position, config.seed, config.trials);
    case AttackConfig::Kind::EntangleMeasure:
      return attack_entangle_measure(params, secret, config.position, config.seed, config.trials);
    case AttackConfig::Kind::Collusion: {
      std::vector<int> colluders(static_cast<size_t>(params.t) - 1);
      std::iota(colluders.begin(), colluders.end(), 1);
      return attack_collusion(params, secret, colluders, config.seed);
    }
  }
  throw ParamError("unknown attack kind");
}

}  // namespace qss
