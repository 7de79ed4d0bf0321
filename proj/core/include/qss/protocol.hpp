#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qss/field.hpp"
#include "qss/qudit.hpp"
#include "qss/rng.hpp"

namespace qss {

struct ProtocolOrderError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DealerState {
  SchemeParams params;
  BivariatePolynomial poly;
  std::vector<int> recovery_set;  // ordered participant indices, size t
  Fe secret = 0;                  // S
  Fe s = 0;                       // F(0,0)
  Fe p0 = 0;                      // = S
  Fe q0 = 0;                      // s - sum of F(x_i, 0) over the recovery set
};

struct ParticipantState {
  int index = 0;
  Fe x = 0;
  Share share;
  Fe p = 0;  // F(x_i, x_i)
  Fe q = 0;  // F(x_i, 0)
  std::map<int, Fe> send_keys;  // toward other recovery members, F(x_i, x_j)
  std::map<int, Fe> recv_keys;  // from other recovery members, F(x_j, x_i)
  std::map<int, Fe> received_p;
  std::map<int, Fe> received_q;
  std::optional<Fe> received_R;
  bool honest = true;
  std::optional<Fe> fake_p;  // substituted values when dishonest
  std::optional<Fe> fake_q;

  Fe effective_p() const { return fake_p ? *fake_p : p; }
  Fe effective_q() const { return fake_q ? *fake_q : q; }
};

enum class MessageKind { PCipher, QCipher, RCipher, SReport };

const char* to_string(MessageKind kind);

struct ClassicalMessage {
  int from = 0;  // 0 = dealer
  int to = 0;
  MessageKind kind = MessageKind::PCipher;
  Fe payload = 0;
};

struct TestVerdicts {
  std::map<int, bool> s_check;    // participant -> reported s' == s
  std::vector<int> p_crosscheck;  // accused participants
  bool r_check = true;

  bool all_pass() const;
};

struct StateCheckpoint {
  std::string label;
  std::variant<QuditState, BipartiteState> state;
};

struct PhaseLog {
  std::string name;
  std::vector<ClassicalMessage> messages;
  std::vector<StateCheckpoint> states;
};

// Eve's observations during a channel attack.
struct EveRecord {
  std::optional<Fe> basis_guess;
  std::optional<Fe> outcome;
  std::optional<Fe> ancilla_outcome;
  bool basis_matched = false;
};

struct ProtocolTranscript {
  SchemeParams params;
  std::vector<int> recovery_set;
  Fe secret = 0;
  std::uint64_t seed = 0;
  std::vector<PhaseLog> phases;
  std::optional<Fe> s_prime;
  std::optional<Fe> r_prime;
  TestVerdicts verdicts;
  std::map<int, Fe> recovered;
  std::optional<std::string> aborted;
  EveRecord eve;
  bool dump_states = false;
};

struct BehaviorConfig {
  enum class Channel { None, InterceptResend, EntangleMeasure };

  std::optional<int> dishonest;  // participant index substituting random (p,q)
  Channel channel = Channel::None;
  int hop = 1;  // channel attacks act on the state leaving party `hop` (0 = dealer)
  bool dump_states = false;
};

struct PreparedSession {
  DealerState dealer;
  std::vector<ParticipantState> participants;  // all n, index i at position i-1
  QuditState initial_state;                    // |v_{p0}^{(q0)}>, already in flight
};

// Samples F and prepares shares, keys, and the travelling state.
PreparedSession prepare(const SchemeParams& params, Fe secret,
                        const std::vector<int>& recovery_set, Rng& rng);

// Same, with a caller-supplied polynomial.
PreparedSession prepare_with_poly(const SchemeParams& params, const BivariatePolynomial& poly,
                                  Fe secret, const std::vector<int>& recovery_set);

// One participant's unitary pass over the travelling state (Eq-style shift
// by (p_i, q_i), or the substituted values when dishonest).
QuditState distribution_step(const ParticipantState& participant, const QuditState& incoming);

// Every recovery member OTP-encrypts (p_i, q_i) to every other member;
// receivers decrypt and store. Returns the on-wire ciphertext messages.
std::vector<ClassicalMessage> classical_exchange(std::vector<ParticipantState*>& recovery,
                                                 const SchemeParams& params);

struct MeasurementOutcome {
  Fe s_prime = 0;
  Fe r_prime = 0;
  std::vector<ClassicalMessage> messages;
};

// Last participant interpolates s', measures in that basis, and broadcasts
// the encrypted result to the other recovery members.
MeasurementOutcome measurement_phase(std::vector<ParticipantState*>& recovery,
                                     const SchemeParams& params, const QuditState& state,
                                     Rng& rng);

// Dealer-side checks: the s' reports, the p/q cross-check against F on any
// failure, and the R' consistency check.
TestVerdicts testing_phase(const DealerState& dealer, std::vector<ParticipantState*>& recovery,
                           Fe measured_r);

// Each recovery member computes R' - sum p_i from its own view.
std::map<int, Fe> recovery_phase(const std::vector<ParticipantState*>& recovery,
                                 const SchemeParams& params, const TestVerdicts& verdicts);

// Full session: prepare, distribute (with optional channel tap), exchange,
// measure, test, recover. Pure function of its arguments.
ProtocolTranscript run_session(const SchemeParams& params, Fe secret,
                               const std::vector<int>& recovery_set,
                               const BehaviorConfig& behavior, std::uint64_t seed);

ProtocolTranscript run_session_with_poly(const SchemeParams& params,
                                         const BivariatePolynomial& poly, Fe secret,
                                         const std::vector<int>& recovery_set,
                                         const BehaviorConfig& behavior, std::uint64_t seed);

}  // namespace qss
