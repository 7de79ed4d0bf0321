#include "qss/serialize.hpp"

#include <string>

namespace qss {

namespace {

Json amplitudes_json(const std::vector<std::complex<double>>& amp) {
  Json arr = Json::array();
  for (const auto& a : amp) arr.push_back(Json::array({a.real(), a.imag()}));
  return arr;
}

Json state_json(const StateCheckpoint& cp) {
  Json j;
  j["type"] = "state";
  j["label"] = cp.label;
  if (std::holds_alternative<QuditState>(cp.state)) {
    j["amplitudes"] = amplitudes_json(std::get<QuditState>(cp.state).amp);
  } else {
    j["amplitudes"] = amplitudes_json(std::get<BipartiteState>(cp.state).amp);
  }
  return j;
}

Json message_json(const ClassicalMessage& m) {
  Json j;
  j["type"] = "message";
  j["from"] = m.from;
  j["to"] = m.to;
  j["kind"] = to_string(m.kind);
  j["payload"] = m.payload;
  return j;
}

}  // namespace

Json transcript_to_json(const ProtocolTranscript& tr) {
  Json j;
  j["params"]["d"] = tr.params.d;
  j["params"]["t"] = tr.params.t;
  j["params"]["n"] = tr.params.n;
  j["params"]["public_points"] = tr.params.public_points;
  j["recovery_set"] = tr.recovery_set;
  j["secret_S"] = tr.secret;
  Json phases = Json::array();
  for (const PhaseLog& phase : tr.phases) {
    Json p;
    p["name"] = phase.name;
    Json events = Json::array();
    for (const ClassicalMessage& m : phase.messages) events.push_back(message_json(m));
    if (tr.dump_states) {
      for (const StateCheckpoint& cp : phase.states) events.push_back(state_json(cp));
    }
    p["events"] = std::move(events);
    phases.push_back(std::move(p));
  }
  j["phases"] = std::move(phases);
  j["measurement"]["s_prime"] = tr.s_prime ? Json(*tr.s_prime) : Json(nullptr);
  j["measurement"]["R_prime"] = tr.r_prime ? Json(*tr.r_prime) : Json(nullptr);
  Json s_check = Json::object();
  for (const auto& [index, pass] : tr.verdicts.s_check) s_check[std::to_string(index)] = pass;
  j["verdicts"]["s_check"] = std::move(s_check);
  j["verdicts"]["p_crosscheck"] = tr.verdicts.p_crosscheck;
  j["verdicts"]["R_check"] = tr.verdicts.r_check;
  Json recovered = Json::object();
  for (const auto& [index, value] : tr.recovered) recovered[std::to_string(index)] = value;
  j["recovered"] = std::move(recovered);
  j["aborted"] = tr.aborted ? Json(*tr.aborted) : Json(nullptr);
  j["seed"] = tr.seed;
  return j;
}

Json stats_to_json(const AttackStats& stats) {
  Json j;
  j["kind"] = to_string(stats.kind);
  j["trials"] = stats.trials;
  j["eve_basis_match_rate"] = stats.eve_basis_match_rate;
  j["eve_secret_guess_rate"] = stats.eve_secret_guess_rate;
  j["detection_rate"] = stats.detection_rate;
  j["cheater_identified_rate"] = stats.cheater_identified_rate;
  Json posterior = Json::object();
  for (const auto& [candidate, count] : stats.posterior) posterior[std::to_string(candidate)] = count;
  j["posterior"] = std::move(posterior);
  j["seed"] = stats.seed;
  return j;
}

}  // namespace qss
