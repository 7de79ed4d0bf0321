// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/field.hpp"
#include "qss/protocol.hpp"
#include "qss/qudit.hpp"

using namespace qss;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string description)
      : number_(number), description_(std::move(description)),
        start_(std::chrono::steady_clock::now()) {}

  void fail(const std::string& why) {
    if (ok_) first_failure_ = why;
    ok_ = false;
  }

  void check(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }

  void finish(double runtime_limit_s = 0.0) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (runtime_limit_s > 0 && elapsed > runtime_limit_s) {
      fail("runtime " + std::to_string(elapsed) + "s exceeds " +
           std::to_string(runtime_limit_s) + "s");
    }
    std::ostringstream line;
    line << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": " << description_
         << " (" << elapsed << "s)";
    if (!ok_) line << " -- " << first_failure_;
    std::cout << line.str() << "\n";
    if (!ok_) ++g_failures;
  }

 private:
  int number_;
  std::string description_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::string first_failure_;
};

double binom_3sigma(double p, int trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / trials);
}

void criterion1_mub_unbiasedness() {
  Criterion c(1, "MUB cross-basis inner products are 1/sqrt(d) for d in {3,5,7}");
  for (Fe d : {Fe{3}, Fe{5}, Fe{7}}) {
    const double target = 1.0 / std::sqrt(static_cast<double>(d));
    for (Fe j = 0; j < d; ++j) {
      for (Fe jp = 0; jp < d; ++jp) {
        if (jp == j) continue;
        for (Fe l = 0; l < d; ++l) {
          for (Fe lp = 0; lp < d; ++lp) {
            const double mag =
                std::abs(inner_product(mub_vector(d, {j, l}), mub_vector(d, {jp, lp})));
            c.check(std::abs(mag - target) <= 1e-10,
                    "d=" + std::to_string(d) + " pair off target");
          }
        }
      }
    }
  }
  c.finish(1.0);
}

void criterion2_shift_law() {
  Criterion c(2, "shift law U_{x,y}|v_l^(j)> = |v_{l+x}^(j+y)>, exhaustive at d=5");
  const Fe d = 5;
  for (Fe j = 0; j < d; ++j) {
    for (Fe l = 0; l < d; ++l) {
      for (Fe x = 0; x < d; ++x) {
        for (Fe y = 0; y < d; ++y) {
          const QuditState got = apply_xy(mub_vector(d, {j, l}), x, y);
          const QuditState want = mub_vector(d, {(j + y) % d, (l + x) % d});
          for (Fe k = 0; k < d; ++k) {
            c.check(std::abs(got.amp[k] - want.amp[k]) <= 1e-10, "componentwise mismatch");
          }
        }
      }
    }
  }
  c.finish(1.0);
}

void criterion3_honest_correctness() {
  Criterion c(3, "1000 honest sessions across d in {5,7,11}, t in {2,3,4} recover S");
  int sessions = 0;
  std::uint64_t seed = 0;
  while (sessions < 1000) {
    for (Fe d : {Fe{5}, Fe{7}, Fe{11}}) {
      for (int t : {2, 3, 4}) {
        if (static_cast<Fe>(t) > d - 1) continue;
        const SchemeParams params = SchemeParams::make(d, t, t);
        std::vector<int> rs(static_cast<size_t>(t));
        std::iota(rs.begin(), rs.end(), 1);
        const Fe secret = static_cast<Fe>(seed % d);
        const ProtocolTranscript tr = run_session(params, secret, rs, {}, seed++);
        c.check(!tr.aborted.has_value(), "session aborted");
        for (int i : rs) {
          c.check(tr.recovered.count(i) && tr.recovered.at(i) == secret,
                  "participant recovered wrong secret");
        }
        ++sessions;
      }
    }
  }
  c.finish(10.0);
}

void criterion4_q0_identity() {
  Criterion c(4, "q0 + sum q_i = s (mod d) in 1000 random preparations");
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const Fe d = std::vector<Fe>{5, 7, 11}[static_cast<size_t>(uniform_below(rng, 3))];
    const int t = 2 + static_cast<int>(uniform_below(rng, 3));
    const SchemeParams params = SchemeParams::make(d, t, t);
    std::vector<int> rs(static_cast<size_t>(t));
    std::iota(rs.begin(), rs.end(), 1);
    const PreparedSession sess =
        prepare(params, static_cast<Fe>(uniform_below(rng, d)), rs, rng);
    Fe sum = sess.dealer.q0;
    for (int i : rs) sum = add_mod(sum, sess.participants[static_cast<size_t>(i) - 1].q, d);
    c.check(sum == sess.dealer.s, "identity violated");
  }
  c.finish();
}

void criterion5_intercept_resend() {
  Criterion c(5, "intercept-resend at d=5: basis match ~1/5, pass rate ~9/25");
  const SchemeParams params = SchemeParams::make(5, 3, 3);
  const int trials = 10000;
  const AttackStats stats = attack_intercept_resend(params, 2, 1, 505, trials);
  c.check(std::abs(stats.eve_basis_match_rate - 0.2) <= binom_3sigma(0.2, trials),
          "basis match rate outside 3 sigma of 0.2");
  const double pass_rate = 1.0 - stats.detection_rate;
  c.check(std::abs(pass_rate - 9.0 / 25.0) <= binom_3sigma(9.0 / 25.0, trials),
          "session pass rate outside 3 sigma of 9/25");
  c.finish(30.0);
}

void criterion6_entangle_measure() {
  Criterion c(6, "entangle-measure: detection ~1-1/d at d in {3,5}; exact state at d=3");
  const int trials = 10000;
  for (Fe d : {Fe{3}, Fe{5}}) {
    const SchemeParams params = SchemeParams::make(d, 2, 2);
    const AttackStats stats = attack_entangle_measure(params, 1, 1, 606, trials);
    const double detect = 1.0 - 1.0 / static_cast<double>(d);
    c.check(std::abs(stats.detection_rate - detect) <= binom_3sigma(detect, trials),
            "detection rate outside 3 sigma at d=" + std::to_string(d));
  }

  // Exact pre-measurement state at d=3: replay the protocol's unitaries on
  // the entangled pair and compare with the closed form
  // (1/sqrt(d)) sum_k w^{k(L+Jk)} |k>|k>.
  const Fe d = 3;
  const SchemeParams params = SchemeParams::make(d, 2, 2);
  Rng rng(7);
  const BivariatePolynomial poly = poly_random(params, rng);
  const PreparedSession sess = prepare_with_poly(params, poly, 2, {1, 2});
  const ParticipantState& bob1 = sess.participants[0];
  const ParticipantState& bob2 = sess.participants[1];
  QuditState flying = distribution_step(bob1, sess.initial_state);
  BipartiteState joint = csum_entangle(flying);  // Eve taps after Bob_1
  joint = apply_xy_system(joint, bob2.p, bob2.q);
  const Fe big_l = add_mod(add_mod(sess.dealer.p0, bob1.p, d), bob2.p, d);
  const Fe big_j = add_mod(add_mod(sess.dealer.q0, bob1.q, d), bob2.q, d);
  for (Fe k = 0; k < d; ++k) {
    for (Fe a = 0; a < d; ++a) {
      std::complex<double> want = 0;
      if (a == k) {
        const double angle = 2.0 * M_PI *
                             static_cast<double>(std::uint64_t{k} * (big_l + std::uint64_t{big_j} * k) % d) /
                             static_cast<double>(d);
        want = std::polar(1.0 / std::sqrt(static_cast<double>(d)), angle);
      }
      c.check(std::abs(joint.amp[k * d + a] - want) <= 1e-10, "bipartite state mismatch");
    }
  }
  c.finish(60.0);
}

void criterion7_dishonest() {
  Criterion c(7, "dishonest participant: detection and identification exactly 1.0");
  const SchemeParams params = SchemeParams::make(5, 3, 3);
  const AttackStats stats = attack_dishonest(params, 3, 2, 707, 1000);
  c.check(stats.detection_rate == 1.0, "detection rate below 1");
  c.check(stats.cheater_identified_rate == 1.0, "identification rate below 1");
  c.finish();
}

void criterion8_collusion() {
  Criterion c(8, "collusion posterior exactly uniform at (d=3,t=2) and (d=5,t=2)");
  for (Fe d : {Fe{3}, Fe{5}}) {
    const SchemeParams params = SchemeParams::make(d, 2, 2);
    const AttackStats stats = attack_collusion(params, d - 1, {1}, 808);
    c.check(stats.posterior.size() == d, "posterior misses secret candidates");
    const std::uint64_t first = stats.posterior.empty() ? 0 : stats.posterior.begin()->second;
    for (const auto& [cand, count] : stats.posterior) {
      c.check(count == first, "posterior not uniform at d=" + std::to_string(d));
    }
  }
  c.finish(60.0);
}

void criterion9_threshold_hiding() {
  Criterion c(9, "every t-1 share set at d=3, t=2 is consistent with all secrets equally");
  const Fe d = 3;
  const SchemeParams params = SchemeParams::make(d, 2, 2);
  // Enumerate all polynomials, group by participant 1's share, and count the
  // constant terms inside each group.
  std::map<std::vector<Fe>, std::map<Fe, int>> groups;
  BivariatePolynomial f;
  f.d = d;
  f.t = 2;
  f.coeffs = {0, 0, 0, 0};
  while (true) {
    const Share s = share_generate(f, params, 1);
    std::vector<Fe> key = s.row_poly;
    key.insert(key.end(), s.col_poly.begin(), s.col_poly.end());
    groups[key][f.at(0, 0)]++;
    size_t pos = 0;
    while (pos < f.coeffs.size() && ++f.coeffs[pos] == d) {
      f.coeffs[pos] = 0;
      ++pos;
    }
    if (pos == f.coeffs.size()) break;
  }
  for (const auto& [share_key, by_secret] : groups) {
    c.check(by_secret.size() == d, "some secret candidate impossible");
    const int first = by_secret.begin()->second;
    for (const auto& [cand, count] : by_secret) {
      c.check(count == first, "secret candidates not equally represented");
    }
  }
  c.finish();
}

void criterion10_determinism() {
  Criterion c(10, "identical CLI invocations produce byte-identical outputs");
  const fs::path a = fs::temp_directory_path() / "qss_acc_a.out";
  const fs::path b = fs::temp_directory_path() / "qss_acc_b.out";
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto run = [](const std::string& args) {
    return WEXITSTATUS(std::system((std::string(QSS_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str()));
  };
  for (const std::string& invocation :
       {std::string("run --d 7 --t 3 --n 4 --secret 5 --seed 321 --dump-states --out "),
        std::string("sweep --d 3 5 --t 2 --attacks dishonest intercept-resend --trials 200 "
                    "--seed 11 --out ")}) {
    c.check(run(invocation + a.string()) == 0, "first invocation failed");
    c.check(run(invocation + b.string()) == 0, "second invocation failed");
    c.check(slurp(a) == slurp(b), "outputs differ");
  }
  fs::remove(a);
  fs::remove(b);
  c.finish();
}

}  // namespace

int main() {
  criterion1_mub_unbiasedness();
  criterion2_shift_law();
  criterion3_honest_correctness();
  criterion4_q0_identity();
  criterion5_intercept_resend();
  criterion6_entangle_measure();
  criterion7_dishonest();
  criterion8_collusion();
  criterion9_threshold_hiding();
  criterion10_determinism();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
