// Command line front end: honest sessions, attack experiments, parameter
// sweeps, and MUB self-verification.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/field.hpp"
#include "qss/protocol.hpp"
#include "qss/qudit.hpp"
#include "qss/serialize.hpp"

namespace {

using namespace qss;

constexpr int kExitOk = 0;
constexpr int kExitAborted = 1;
constexpr int kExitBadParams = 2;
constexpr int kExitIo = 3;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QSS_SEED")) return std::strtoull(env, nullptr, 10);
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) | rd();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return kExitIo;
  }
  out << text;
  if (!out) {
    std::cerr << "write failed: " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int cmd_run(Fe d, int t, int n, std::optional<Fe> secret, std::optional<std::uint64_t> seed_flag,
            const std::vector<Fe>& points, const std::string& out_path, bool dump_states) {
  SchemeParams params;
  try {
    params = SchemeParams::make(d, t, n, points);
  } catch (const ParamError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParams;
  }
  const std::uint64_t seed = resolve_seed(seed_flag);
  Fe s;
  if (secret) {
    s = *secret % d;
  } else {
    Rng rng(mix_seed(seed, 0x736563));
    s = static_cast<Fe>(uniform_below(rng, d));
  }
  std::vector<int> rs(static_cast<size_t>(t));
  std::iota(rs.begin(), rs.end(), 1);
  BehaviorConfig behavior;
  behavior.dump_states = dump_states;
  const ProtocolTranscript tr = run_session(params, s, rs, behavior, seed);
  const int io = write_output(transcript_to_json(tr).dump(2) + "\n", out_path);
  if (io != kExitOk) return io;
  return tr.aborted ? kExitAborted : kExitOk;
}

int cmd_attack(const std::string& type, Fe d, int t, int n, std::optional<Fe> secret,
               std::optional<std::uint64_t> seed_flag, int trials, std::optional<int> position,
               const std::string& out_path) {
  SchemeParams params;
  try {
    params = SchemeParams::make(d, t, n);
  } catch (const ParamError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParams;
  }
  AttackConfig config;
  if (type == "dishonest") {
    config.kind = AttackConfig::Kind::Dishonest;
    config.position = position.value_or(1);
  } else if (type == "intercept-resend") {
    config.kind = AttackConfig::Kind::InterceptResend;
    config.position = position.value_or(1);
  } else if (type == "entangle-measure") {
    config.kind = AttackConfig::Kind::EntangleMeasure;
    config.position = position.value_or(1);
  } else if (type == "collusion") {
    config.kind = AttackConfig::Kind::Collusion;
  } else {
    std::cerr << "unknown attack type: " << type << "\n";
    return kExitBadParams;
  }
  config.trials = trials;
  config.seed = resolve_seed(seed_flag);
  Fe s;
  if (secret) {
    s = *secret % d;
  } else {
    Rng rng(mix_seed(config.seed, 0x736563));
    s = static_cast<Fe>(uniform_below(rng, d));
  }
  AttackStats stats;
  try {
    stats = run_attack(params, s, config);
  } catch (const ParamError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParams;
  }
  return write_output(stats_to_json(stats).dump(2) + "\n", out_path);
}

int cmd_mub_verify(Fe d, double tol) {
  if (!is_prime(d) || d < 3) {
    std::cerr << "d must be an odd prime\n";
    return kExitBadParams;
  }
  const double target = 1.0 / std::sqrt(static_cast<double>(d));
  // Orthonormality and cross-basis unbiasedness over the d bases of the
  // construction, plus unbiasedness against the computational basis.
  for (Fe j = 0; j < d; ++j) {
    for (Fe l = 0; l < d; ++l) {
      const QuditState v = mub_vector(d, {j, l});
      for (Fe jp = j; jp < d; ++jp) {
        for (Fe lp = (jp == j ? l : 0); lp < d; ++lp) {
          const double mag = std::abs(inner_product(v, mub_vector(d, {jp, lp})));
          const double want = (jp == j) ? (lp == l ? 1.0 : 0.0) : target;
          if (std::abs(mag - want) > tol) {
            std::cout << "violation: |<v_" << l << "^(" << j << ")|v_" << lp << "^(" << jp
                      << ")>| = " << mag << ", expected " << want << "\n";
            return 1;
          }
        }
      }
      for (Fe k = 0; k < d; ++k) {
        if (std::abs(std::abs(v.amp[k]) - target) > tol) {
          std::cout << "violation: |<" << k << "|v_" << l << "^(" << j << ")>| != 1/sqrt(d)\n";
          return 1;
        }
      }
    }
  }
  // Shift law, exhaustive.
  for (Fe j = 0; j < d; ++j) {
    for (Fe l = 0; l < d; ++l) {
      for (Fe x = 0; x < d; ++x) {
        for (Fe y = 0; y < d; ++y) {
          const QuditState got = apply_xy(mub_vector(d, {j, l}), x, y);
          const QuditState want = mub_vector(d, {(j + y) % d, (l + x) % d});
          for (Fe k = 0; k < d; ++k) {
            if (std::abs(got.amp[k] - want.amp[k]) > tol) {
              std::cout << "violation: shift law fails at j=" << j << " l=" << l << " x=" << x
                        << " y=" << y << "\n";
              return 1;
            }
          }
        }
      }
    }
  }
  std::cout << "d+1=" << d + 1 << " mutually unbiased bases verified (d=" << d
            << ", tol=" << tol << "): unbiasedness, orthonormality, shift law all pass\n";
  return kExitOk;
}

double half_width_3sigma(double rate, int trials) {
  return 3.0 * std::sqrt(rate * (1.0 - rate) / trials);
}

int cmd_sweep(const std::vector<Fe>& ds, const std::vector<int>& ts,
              const std::vector<std::string>& attacks, int trials,
              std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  if (ds.empty() || ts.empty() || attacks.empty()) {
    std::cerr << "sweep needs at least one d, one t, and one attack\n";
    return kExitBadParams;
  }
  const std::uint64_t master_seed = resolve_seed(seed_flag);
  std::ostringstream csv;
  csv << "d,t,attack,metric,value,ci3sigma,trials,seed\n";
  std::uint64_t counter = 0;
  for (Fe d : ds) {
    for (int t : ts) {
      SchemeParams params;
      try {
        params = SchemeParams::make(d, t, t);
      } catch (const ParamError&) {
        continue;  // infeasible (d, t) combination
      }
      for (const std::string& attack : attacks) {
        AttackConfig config;
        config.trials = trials;
        config.seed = mix_seed(master_seed, counter++);
        config.position = 1;
        std::vector<std::pair<std::string, double>> metrics;
        Rng srng(mix_seed(config.seed, 0x736563));
        const Fe secret = static_cast<Fe>(uniform_below(srng, d));
        if (attack == "dishonest") {
          config.kind = AttackConfig::Kind::Dishonest;
          const AttackStats st = run_attack(params, secret, config);
          metrics = {{"detection_rate", st.detection_rate},
                     {"cheater_identified_rate", st.cheater_identified_rate}};
        } else if (attack == "intercept-resend") {
          config.kind = AttackConfig::Kind::InterceptResend;
          const AttackStats st = run_attack(params, secret, config);
          metrics = {{"eve_basis_match_rate", st.eve_basis_match_rate},
                     {"detection_rate", st.detection_rate},
                     {"eve_secret_guess_rate", st.eve_secret_guess_rate}};
        } else if (attack == "entangle-measure") {
          config.kind = AttackConfig::Kind::EntangleMeasure;
          const AttackStats st = run_attack(params, secret, config);
          metrics = {{"detection_rate", st.detection_rate},
                     {"eve_secret_guess_rate", st.eve_secret_guess_rate}};
        } else {
          std::cerr << "unknown attack in sweep: " << attack << "\n";
          return kExitBadParams;
        }
        for (const auto& [name, value] : metrics) {
          char value_buf[32];
          char ci_buf[32];
          std::snprintf(value_buf, sizeof(value_buf), "%.10g", value);
          std::snprintf(ci_buf, sizeof(ci_buf), "%.10g", half_width_3sigma(value, trials));
          csv << d << "," << t << "," << attack << "," << name << "," << value_buf << ","
              << ci_buf << "," << trials << "," << config.seed << "\n";
        }
      }
    }
  }
  return write_output(csv.str(), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiable (t,n)-threshold quantum secret sharing simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one honest protocol session");
  Fe run_d = 5;
  int run_t = 2;
  int run_n = 3;
  std::optional<Fe> run_secret;
  std::optional<std::uint64_t> run_seed;
  std::vector<Fe> run_points;
  std::string run_out;
  bool run_dump = false;
  run->add_option("--d", run_d, "Prime dimension");
  run->add_option("--t", run_t, "Threshold");
  run->add_option("--n", run_n, "Participant count");
  run->add_option("--secret", run_secret, "Secret in [0, d); random when absent");
  run->add_option("--seed", run_seed, "RNG seed (env QSS_SEED as fallback)");
  run->add_option("--points", run_points, "Public points x_1..x_n (default 1..n)");
  run->add_option("--out", run_out, "Output file (default stdout)");
  run->add_flag("--dump-states", run_dump, "Include quantum state checkpoints");

  // attack
  auto* attack = app.add_subcommand("attack", "Run an attack experiment");
  std::string attack_type;
  Fe attack_d = 5;
  int attack_t = 3;
  std::optional<int> attack_n;
  std::optional<Fe> attack_secret;
  std::optional<std::uint64_t> attack_seed;
  int attack_trials = 1000;
  std::optional<int> attack_position;
  std::string attack_out;
  attack->add_option("--type", attack_type,
                     "dishonest | intercept-resend | entangle-measure | collusion")
      ->required();
  attack->add_option("--d", attack_d, "Prime dimension");
  attack->add_option("--t", attack_t, "Threshold");
  attack->add_option("--n", attack_n, "Participant count (default t)");
  attack->add_option("--secret", attack_secret, "Secret in [0, d); random when absent");
  attack->add_option("--seed", attack_seed, "RNG seed");
  attack->add_option("--trials", attack_trials, "Trial count");
  attack->add_option("--position", attack_position, "Cheater index or channel hop");
  attack->add_option("--out", attack_out, "Output file (default stdout)");

  // mub-verify
  auto* mub = app.add_subcommand("mub-verify", "Exhaustively verify the MUB construction");
  Fe mub_d = 5;
  double mub_tol = 1e-10;
  mub->add_option("--d", mub_d, "Prime dimension");
  mub->add_option("--tol", mub_tol, "Numeric tolerance");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Attack-rate sweep over (d, t) grids");
  std::vector<Fe> sweep_d;
  std::vector<int> sweep_t;
  std::vector<std::string> sweep_attacks = {"dishonest", "intercept-resend", "entangle-measure"};
  int sweep_trials = 1000;
  std::optional<std::uint64_t> sweep_seed;
  std::string sweep_out;
  sweep->add_option("--d", sweep_d, "Prime dimensions");
  sweep->add_option("--t", sweep_t, "Thresholds");
  sweep->add_option("--attacks", sweep_attacks, "Attack kinds");
  sweep->add_option("--trials", sweep_trials, "Trials per cell");
  sweep->add_option("--seed", sweep_seed, "Master seed");
  sweep->add_option("--out", sweep_out, "Output CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(run_d, run_t, run_n, run_secret, run_seed, run_points, run_out, run_dump);
    }
    if (attack->parsed()) {
      return cmd_attack(attack_type, attack_d, attack_t, attack_n.value_or(attack_t),
                        attack_secret, attack_seed, attack_trials, attack_position, attack_out);
    }
    if (mub->parsed()) {
      return cmd_mub_verify(mub_d, mub_tol);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_d, sweep_t, sweep_attacks, sweep_trials, sweep_seed, sweep_out);
    }
  } catch (const ParamError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadParams;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitBadParams;
}
