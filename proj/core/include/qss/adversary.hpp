#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qss/field.hpp"
#include "qss/protocol.hpp"

namespace qss {

struct AttackConfig {
  enum class Kind { Dishonest, InterceptResend, EntangleMeasure, Collusion };

  Kind kind = Kind::Dishonest;
  int position = 1;  // cheater index, channel hop, or honest-participant count offset
  int trials = 1000;
  std::uint64_t seed = 0;
};

const char* to_string(AttackConfig::Kind kind);

struct AttackStats {
  AttackConfig::Kind kind = AttackConfig::Kind::Dishonest;
  int trials = 0;
  std::uint64_t seed = 0;
  double eve_basis_match_rate = 0.0;
  double eve_secret_guess_rate = 0.0;
  double detection_rate = 0.0;
  double cheater_identified_rate = 0.0;
  std::map<Fe, std::uint64_t> posterior;  // collusion only: secret candidate -> count
};

// A recovery-set member substitutes random (p, q) != the real values in both
// the unitary and the classical exchange.
AttackStats attack_dishonest(const SchemeParams& params, Fe secret, int cheater,
                             std::uint64_t seed, int trials);

// Eve measures the in-flight state on channel segment `hop` in a uniformly
// random MUB basis and resends the collapsed state.
AttackStats attack_intercept_resend(const SchemeParams& params, Fe secret, int hop,
                                    std::uint64_t seed, int trials);

// Eve couples an ancilla to the in-flight state with a controlled shift and
// measures it after the protocol's own measurement.
AttackStats attack_entangle_measure(const SchemeParams& params, Fe secret, int hop,
                                    std::uint64_t seed, int trials);

// t-1 protocol-following colluders pool their shares and exchanged values;
// the posterior over secret candidates comes from exhaustive enumeration of
// all polynomials consistent with their view.
AttackStats attack_collusion(const SchemeParams& params, Fe secret,
                             const std::vector<int>& colluders, std::uint64_t seed,
                             std::uint64_t enumeration_cap = 100'000'000);

// Dispatch on config.kind with default target choices (colluders 1..t-1).
AttackStats run_attack(const SchemeParams& params, Fe secret, const AttackConfig& config);

}  // namespace qss
