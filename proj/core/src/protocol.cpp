#include "qss/protocol.hpp"

#include <algorithm>
#include <set>

namespace qss {

namespace {

void validate_recovery_set(const SchemeParams& params, const std::vector<int>& recovery_set) {
  if (recovery_set.size() != static_cast<size_t>(params.t)) {
    throw ParamError("recovery set must contain exactly t participants");
  }
  std::set<int> seen;
  for (int i : recovery_set) {
    if (i < 1 || i > params.n) throw ParamError("recovery set index out of range");
    if (!seen.insert(i).second) throw ParamError("recovery set indices must be distinct");
  }
}

ParticipantState* find_member(std::vector<ParticipantState*>& recovery, int index) {
  for (ParticipantState* m : recovery) {
    if (m->index == index) return m;
  }
  return nullptr;
}

// s' as computed by `member` from its own q and the decrypted q values.
Fe interpolate_s_prime(const ParticipantState& member,
                       const std::vector<ParticipantState*>& recovery,
                       const SchemeParams& params) {
  std::vector<std::pair<Fe, Fe>> points;
  points.reserve(recovery.size());
  for (const ParticipantState* other : recovery) {
    if (other->index == member.index) {
      points.emplace_back(member.x, member.q);
    } else {
      auto it = member.received_q.find(other->index);
      if (it == member.received_q.end()) {
        throw ProtocolOrderError("measurement before classical exchange completed");
      }
      points.emplace_back(other->x, it->second);
    }
  }
  return lagrange_at_zero(points, params.d);
}

}  // namespace

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::PCipher: return "p-cipher";
    case MessageKind::QCipher: return "q-cipher";
    case MessageKind::RCipher: return "R-cipher";
    case MessageKind::SReport: return "s-report";
  }
  return "?";
}

bool TestVerdicts::all_pass() const {
  if (!r_check || !p_crosscheck.empty()) return false;
  return std::all_of(s_check.begin(), s_check.end(), [](const auto& kv) { return kv.second; });
}

PreparedSession prepare_with_poly(const SchemeParams& params, const BivariatePolynomial& poly,
                                  Fe secret, const std::vector<int>& recovery_set) {
  validate_recovery_set(params, recovery_set);
  if (poly.d != params.d || poly.t != params.t) {
    throw ParamError("polynomial does not match scheme parameters");
  }
  const Fe d = params.d;

  PreparedSession sess;
  sess.dealer.params = params;
  sess.dealer.poly = poly;
  sess.dealer.recovery_set = recovery_set;
  sess.dealer.secret = secret % d;
  sess.dealer.s = poly_eval(poly, 0, 0);
  sess.dealer.p0 = sess.dealer.secret;
  Fe q_sum = 0;
  for (int i : recovery_set) q_sum = add_mod(q_sum, poly_eval(poly, params.point(i), 0), d);
  sess.dealer.q0 = sub_mod(sess.dealer.s, q_sum, d);

  sess.participants.resize(static_cast<size_t>(params.n));
  for (int i = 1; i <= params.n; ++i) {
    ParticipantState& ps = sess.participants[static_cast<size_t>(i) - 1];
    ps.index = i;
    ps.x = params.point(i);
    ps.share = share_generate(poly, params, i);
    ps.p = poly_eval_univar(ps.share.row_poly, ps.x, d);
    ps.q = ps.share.row_poly.front();  // F(x_i, 0)
  }
  // Pairwise keys among the recovery members only.
  for (int i : recovery_set) {
    ParticipantState& ps = sess.participants[static_cast<size_t>(i) - 1];
    for (int j : recovery_set) {
      if (j == i) continue;
      ps.send_keys[j] = pairwise_key(ps.share, params, j).key;
      ps.recv_keys[j] = receiving_key(ps.share, params, j);
    }
  }

  sess.initial_state = apply_xy(mub_vector(d, {0, 0}), sess.dealer.p0, sess.dealer.q0);
  return sess;
}

PreparedSession prepare(const SchemeParams& params, Fe secret,
                        const std::vector<int>& recovery_set, Rng& rng) {
  return prepare_with_poly(params, poly_random(params, rng), secret, recovery_set);
}

QuditState distribution_step(const ParticipantState& participant, const QuditState& incoming) {
  return apply_xy(incoming, participant.effective_p(), participant.effective_q());
}

std::vector<ClassicalMessage> classical_exchange(std::vector<ParticipantState*>& recovery,
                                                 const SchemeParams& params) {
  std::vector<ClassicalMessage> messages;
  for (ParticipantState* sender : recovery) {
    for (ParticipantState* receiver : recovery) {
      if (receiver == sender) continue;
      const Fe key = sender->send_keys.at(receiver->index);
      const Fe cp = otp_encrypt(sender->effective_p(), key, params.d);
      const Fe cq = otp_encrypt(sender->effective_q(), key, params.d);
      messages.push_back({sender->index, receiver->index, MessageKind::PCipher, cp});
      messages.push_back({sender->index, receiver->index, MessageKind::QCipher, cq});
      const Fe rkey = receiver->recv_keys.at(sender->index);
      receiver->received_p[sender->index] = otp_decrypt(cp, rkey, params.d);
      receiver->received_q[sender->index] = otp_decrypt(cq, rkey, params.d);
    }
  }
  return messages;
}

MeasurementOutcome measurement_phase(std::vector<ParticipantState*>& recovery,
                                     const SchemeParams& params, const QuditState& state,
                                     Rng& rng) {
  ParticipantState* last = recovery.back();
  MeasurementOutcome out;
  out.s_prime = interpolate_s_prime(*last, recovery, params);
  const MeasureResult res = measure_mub(state, out.s_prime, rng);
  out.r_prime = res.outcome;
  last->received_R = out.r_prime;
  for (ParticipantState* other : recovery) {
    if (other == last) continue;
    const Fe c = otp_encrypt(out.r_prime, last->send_keys.at(other->index), params.d);
    out.messages.push_back({last->index, other->index, MessageKind::RCipher, c});
    other->received_R = otp_decrypt(c, other->recv_keys.at(last->index), params.d);
  }
  return out;
}

TestVerdicts testing_phase(const DealerState& dealer, std::vector<ParticipantState*>& recovery,
                           Fe measured_r) {
  const SchemeParams& params = dealer.params;
  TestVerdicts verdicts;
  for (ParticipantState* member : recovery) {
    const Fe s_prime = interpolate_s_prime(*member, recovery, params);
    verdicts.s_check[member->index] = (s_prime == dealer.s);
  }

  Fe r_true = dealer.p0;
  for (ParticipantState* member : recovery) {
    r_true = add_mod(r_true, poly_eval(dealer.poly, member->x, member->x), params.d);
  }
  verdicts.r_check = (measured_r == r_true);
  for (const ParticipantState* member : recovery) {
    if (!member->received_R || *member->received_R != r_true) verdicts.r_check = false;
  }

  const bool any_s_fail = std::any_of(verdicts.s_check.begin(), verdicts.s_check.end(),
                                      [](const auto& kv) { return !kv.second; });
  if (any_s_fail || !verdicts.r_check) {
    // Cross-check every sent (p_i, q_i) against the dealer's ground truth F.
    for (const ParticipantState* member : recovery) {
      const Fe true_p = poly_eval(dealer.poly, member->x, member->x);
      const Fe true_q = poly_eval(dealer.poly, member->x, 0);
      if (member->effective_p() != true_p || member->effective_q() != true_q) {
        verdicts.p_crosscheck.push_back(member->index);
      }
    }
  }
  return verdicts;
}

std::map<int, Fe> recovery_phase(const std::vector<ParticipantState*>& recovery,
                                 const SchemeParams& params, const TestVerdicts& verdicts) {
  if (!verdicts.all_pass()) throw ProtocolOrderError("recovery after failed verdicts");
  std::map<int, Fe> recovered;
  for (const ParticipantState* member : recovery) {
    if (!member->received_R) throw ProtocolOrderError("recovery before R' broadcast");
    Fe sum_p = member->p;
    for (const ParticipantState* other : recovery) {
      if (other == member) continue;
      sum_p = add_mod(sum_p, member->received_p.at(other->index), params.d);
    }
    recovered[member->index] = sub_mod(*member->received_R, sum_p, params.d);
  }
  return recovered;
}

namespace {

using ChannelState = std::variant<QuditState, BipartiteState>;

ChannelState step_on(const ChannelState& state, Fe p, Fe q) {
  if (std::holds_alternative<QuditState>(state)) {
    return apply_xy(std::get<QuditState>(state), p, q);
  }
  return apply_xy_system(std::get<BipartiteState>(state), p, q);
}

Fe draw_different(Rng& rng, Fe d, Fe avoid) {
  const Fe v = static_cast<Fe>(uniform_below(rng, d - 1));
  return v >= avoid ? v + 1 : v;
}

}  // namespace

ProtocolTranscript run_session_with_poly(const SchemeParams& params,
                                         const BivariatePolynomial& poly, Fe secret,
                                         const std::vector<int>& recovery_set,
                                         const BehaviorConfig& behavior, std::uint64_t seed) {
  if (behavior.channel != BehaviorConfig::Channel::None &&
      (behavior.hop < 0 || behavior.hop >= params.t)) {
    throw ParamError("channel attack hop must be in [0, t)");
  }
  Rng rng(seed);
  PreparedSession sess = prepare_with_poly(params, poly, secret, recovery_set);

  ProtocolTranscript tr;
  tr.params = params;
  tr.recovery_set = recovery_set;
  tr.secret = sess.dealer.secret;
  tr.seed = seed;
  tr.dump_states = behavior.dump_states;

  std::vector<ParticipantState*> recovery;
  for (int i : recovery_set) recovery.push_back(&sess.participants[static_cast<size_t>(i) - 1]);

  if (behavior.dishonest) {
    ParticipantState* cheater = find_member(recovery, *behavior.dishonest);
    if (cheater == nullptr) throw ParamError("dishonest participant must be in the recovery set");
    cheater->honest = false;
    cheater->fake_p = draw_different(rng, params.d, cheater->p);
    cheater->fake_q = draw_different(rng, params.d, cheater->q);
  }

  PhaseLog prep_log{"preparation", {}, {}};
  if (behavior.dump_states) prep_log.states.push_back({"initial", sess.initial_state});
  tr.phases.push_back(std::move(prep_log));

  // Distribution: the state travels dealer -> Bob_1 -> ... -> Bob_t; segment
  // h carries the state leaving party h (0 = dealer).
  PhaseLog dist_log{"distribution", {}, {}};
  ChannelState current = sess.initial_state;
  Fe cumulative_q = sess.dealer.q0;
  for (int pos = 0; pos < params.t; ++pos) {
    if (behavior.hop == pos) {
      if (behavior.channel == BehaviorConfig::Channel::InterceptResend) {
        const Fe basis_guess = static_cast<Fe>(uniform_below(rng, params.d));
        const MeasureResult res = measure_mub(std::get<QuditState>(current), basis_guess, rng);
        tr.eve.basis_guess = basis_guess;
        tr.eve.outcome = res.outcome;
        tr.eve.basis_matched = (basis_guess == cumulative_q % params.d);
        current = res.post;
        if (behavior.dump_states) dist_log.states.push_back({"after-intercept", current});
      } else if (behavior.channel == BehaviorConfig::Channel::EntangleMeasure) {
        current = csum_entangle(std::get<QuditState>(current));
        if (behavior.dump_states) dist_log.states.push_back({"after-entangle", current});
      }
    }
    ParticipantState* bob = recovery[static_cast<size_t>(pos)];
    current = step_on(current, bob->effective_p(), bob->effective_q());
    cumulative_q = add_mod(cumulative_q, bob->effective_q(), params.d);
    if (behavior.dump_states) {
      dist_log.states.push_back({"after-participant-" + std::to_string(bob->index), current});
    }
  }
  tr.phases.push_back(std::move(dist_log));

  PhaseLog exchange_log{"classical-exchange", classical_exchange(recovery, params), {}};
  tr.phases.push_back(std::move(exchange_log));

  // Measurement by the last recovery member in basis s'.
  PhaseLog meas_log{"measurement", {}, {}};
  if (behavior.dump_states) meas_log.states.push_back({"pre-measurement", current});
  ParticipantState* last = recovery.back();
  const Fe s_prime = interpolate_s_prime(*last, recovery, params);
  Fe r_prime;
  if (std::holds_alternative<QuditState>(current)) {
    const MeasureResult res = measure_mub(std::get<QuditState>(current), s_prime, rng);
    r_prime = res.outcome;
  } else {
    const BipartiteMeasureResult res =
        measure_mub_system(std::get<BipartiteState>(current), s_prime, rng);
    r_prime = res.outcome;
    // Eve measures her ancilla after the protocol's own measurement.
    tr.eve.ancilla_outcome = measure_ancilla(res.post, rng).outcome;
  }
  tr.s_prime = s_prime;
  tr.r_prime = r_prime;
  last->received_R = r_prime;
  for (ParticipantState* other : recovery) {
    if (other == last) continue;
    const Fe c = otp_encrypt(r_prime, last->send_keys.at(other->index), params.d);
    meas_log.messages.push_back({last->index, other->index, MessageKind::RCipher, c});
    other->received_R = otp_decrypt(c, other->recv_keys.at(last->index), params.d);
  }
  tr.phases.push_back(std::move(meas_log));

  // Testing: s' reports to the dealer, then the dealer's checks.
  PhaseLog test_log{"testing", {}, {}};
  for (ParticipantState* member : recovery) {
    test_log.messages.push_back(
        {member->index, 0, MessageKind::SReport, interpolate_s_prime(*member, recovery, params)});
  }
  tr.verdicts = testing_phase(sess.dealer, recovery, r_prime);
  tr.phases.push_back(std::move(test_log));

  if (tr.verdicts.all_pass()) {
    tr.recovered = recovery_phase(recovery, params, tr.verdicts);
    tr.phases.push_back({"recovery", {}, {}});
  } else {
    tr.aborted = "testing";
  }
  return tr;
}

ProtocolTranscript run_session(const SchemeParams& params, Fe secret,
                               const std::vector<int>& recovery_set,
                               const BehaviorConfig& behavior, std::uint64_t seed) {
  Rng poly_rng(mix_seed(seed, 0x706f6c79));  // "poly" stream
  const BivariatePolynomial poly = poly_random(params, poly_rng);
  return run_session_with_poly(params, poly, secret, recovery_set, behavior, seed);
}

}  // namespace qss
