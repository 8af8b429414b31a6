// Acceptance suite: every release-gating property, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/counting.hpp"
#include "core/montecarlo.hpp"

using namespace permtyp;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, label.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::vector<std::vector<long long>> compositions(long long n, int slots) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> acc(slots, 0);
  std::function<void(int, long long)> rec = [&](int pos, long long left) {
    if (pos + 1 == slots) {
      acc[pos] = left;
      out.push_back(acc);
      return;
    }
    for (long long v = 0; v <= left; ++v) {
      acc[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

// 1. Proposition 1 exactness at desk scale.
void criterion1() {
  double worst = 0;
  for (double p : {0.1, 0.2}) {
    const JointDistribution d = JointDistribution::dsbs(p);
    for (int n : {3, 4, 5}) {
      for (double eps : {0.05, 0.1}) {
        const Prop1Report report = verify_proposition1(d, n, eps);
        worst = std::max(worst, report.max_discrepancy());
      }
    }
  }
  criterion(1, "proposition 1 invariance, class constancy, pair reduction", worst <= 1e-12,
            "max discrepancy " + fmt(worst));
}

// 2. Theorem 1 explicit bound dominates the exact probability for every
// permutation.
void criterion2() {
  SweepReport report;
  report.merge(sweep_theorem1(JointDistribution::dsbs(0.1), "dsbs01", {3, 4, 5}, {0.05, 0.1}));
  report.merge(sweep_theorem1(JointDistribution::dsbs(0.2), "dsbs02", {3, 4, 5}, {0.05, 0.1}));
  criterion(2, "theorem 1 soundness over all of S_3..S_5", report.pass,
            std::to_string(report.rows.size()) + " configurations, " +
                std::to_string(report.violations) + " violations");
}

// 3. Lemma 4 for single n-cycles.
void criterion3() {
  SweepReport report;
  report.merge(sweep_lemma4(JointDistribution::dsbs(0.1), "dsbs01", {4, 5, 6}, {0.0, 0.1}));
  report.merge(sweep_lemma4(JointDistribution::dsbs(0.2), "dsbs02", {4, 5, 6}, {0.0, 0.1}));
  criterion(3, "lemma 4 soundness for single cycles", report.pass,
            std::to_string(report.rows.size()) + " configurations, " +
                std::to_string(report.violations) + " violations");
}

// 4. Lemma 5 for short-cycle derangements.
void criterion4() {
  SweepReport report;
  report.merge(sweep_lemma5(JointDistribution::dsbs(0.1), "dsbs01", {4, 6}, {3, 4}, {0.0, 0.1}));
  report.merge(sweep_lemma5(JointDistribution::dsbs(0.2), "dsbs02", {4, 6}, {3, 4}, {0.0, 0.1}));
  criterion(4, "lemma 5 soundness for short-cycle derangements", report.pass,
            std::to_string(report.rows.size()) + " configurations, " +
                std::to_string(report.violations) + " violations");
}

// 5. Theorem 2 for a full-support binary triple, several signatures.
void criterion5() {
  const SweepReport report = sweep_theorem2(default_triple_distribution(), "triple", 4,
                                            default_triple_vectors(), {0.05, 0.1});
  std::set<std::string> signatures;
  for (const auto& row : report.rows) signatures.insert(row.group);
  const bool enough = signatures.size() >= 3;
  criterion(5, "theorem 2 soundness for the binary triple", report.pass && enough,
            std::to_string(signatures.size()) + " signatures, " +
                std::to_string(report.violations) + " violations");
}

// 6. Counting exactness and sandwiches.
void criterion6() {
  bool pass = true;
  std::string detail = "ok";
  const auto fail = [&](const std::string& why) {
    pass = false;
    if (detail == "ok") detail = why;
  };

  // named values
  if (count_fixed_point_perms(5, 2) != 20) fail("N_2(5) != 20");
  if (derangements(4) != 9 || derangements(5) != 44) fail("!4 or !5 wrong");

  // N_m formula against brute force, plus the total-mass identity
  for (int n = 1; n <= 7 && pass; ++n) {
    std::vector<BigInt> brute(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : all_permutations(n)) ++brute[p.fixed_point_count()];
    BigInt total = 0;
    for (int m = 0; m <= n; ++m) {
      if (count_fixed_point_perms(n, m) != brute[m]) fail("N_m mismatch at n=" + std::to_string(n));
      total += brute[m];
    }
    if (total != factorial(n)) fail("sum_m N_m != n!");
  }

  // Lemma 6 sandwich
  for (int n = 1; n <= 5 && pass; ++n) {
    for (int k = 1; k <= std::min(n, 3); ++k) {
      const CountBounds b = kfold_bounds(n, k);
      if (!b.exact || b.lower > *b.exact || *b.exact > b.upper)
        fail("lemma 6 sandwich broken at n=" + std::to_string(n) + ",k=" + std::to_string(k));
    }
  }
  if (pass) {
    const CountBounds b = kfold_bounds(3, 3);
    if (!(b.lower == 1 && *b.exact == 2 && b.upper == 4)) fail("d_3(3) triple wrong");
  }

  // Lemma 7 sandwich for every k=3 signature, with the total-mass identity
  for (int n = 2; n <= 4 && pass; ++n) {
    BigInt total = 0;
    for (const auto& counts : compositions(n, 5)) {
      const BellSignature sig{3, n, counts};
      const CountBounds b = bell_count_bounds(n, 3, sig);
      if (!b.exact || b.lower > *b.exact || *b.exact > b.upper) {
        fail("lemma 7 sandwich broken at n=" + std::to_string(n));
        break;
      }
      total += *b.exact;
    }
    if (pass && total != factorial(n) * factorial(n)) fail("sum over signatures != (n!)^2");
  }

  criterion(6, "counting formulas exact, all sandwiches hold", pass, detail);
}

// 7. Asymptotic normalized rates.
void criterion7() {
  const double err50 = std::abs(normalized_log_fixed_count(50, 25) - 0.5);
  const double err200 = std::abs(normalized_log_fixed_count(200, 100) - 0.5);
  const bool fixed_ok = err200 < err50 && err200 <= 0.1;

  const RatePair pair = normalized_log_bell_count(100, 2, BellSignature{2, 100, {50, 50}});
  const bool bell_ok =
      std::abs(pair.lower - 0.5) <= 0.15 && std::abs(pair.upper - 0.5) <= 0.15;

  criterion(7, "normalized log-count rates approach their limits", fixed_ok && bell_ok,
            "fixed err " + fmt(err200) + " < " + fmt(err50) + "; bell pair [" +
                fmt(pair.lower) + ", " + fmt(pair.upper) + "]");
}

// 8. Monte Carlo calibration and worker invariance.
void criterion8() {
  struct Config {
    JointDistribution dist;
    std::vector<Permutation> perms;
    int n;
    double eps;
  };
  const JointDistribution uniform({2, 2}, {0.25, 0.25, 0.25, 0.25});
  const JointDistribution dsbs01 = JointDistribution::dsbs(0.1);
  const JointDistribution dsbs02 = JointDistribution::dsbs(0.2);
  const JointDistribution triple = default_triple_distribution();

  std::vector<Config> configs;
  configs.push_back({uniform, {Permutation::identity(2), Permutation::identity(2)}, 2, 0.25});
  configs.push_back({dsbs01, {Permutation::identity(4), parse_cycles_text("(1 2 3 4)")}, 4, 0.1});
  configs.push_back({dsbs01, {Permutation::identity(6), parse_cycles_text("(1 2)(3 4)(5 6)")}, 6, 0.05});
  configs.push_back({dsbs02, {Permutation::identity(5), parse_cycles_text("(1 2 3)", 5)}, 5, 0.1});
  configs.push_back({triple, default_triple_vectors()[1], 4, 0.1});

  bool pass = true;
  std::string detail = "5 configurations within 3 sigma, worker-invariant";
  std::uint64_t seed = 1234;
  for (const auto& config : configs) {
    const double exact = exact_typicality_prob(config.dist, config.perms, config.n, config.eps);
    const TrialConfig cfg{config.dist, config.perms, config.n, config.eps, 100000, seed++};
    const EstimateReport serial = estimate_typicality_prob(cfg, 1);
    const EstimateReport parallel = estimate_typicality_prob(cfg, 8);
    if (serial.p_hat != parallel.p_hat) {
      pass = false;
      detail = "worker counts disagree";
      break;
    }
    if (std::abs(serial.p_hat - exact) > 3 * serial.std_err + 1e-12) {
      pass = false;
      detail = "estimate off by " + fmt(std::abs(serial.p_hat - exact)) + " with stderr " +
               fmt(serial.std_err);
      break;
    }
  }
  criterion(8, "Monte Carlo calibration at 1e5 trials", pass, detail);
}

// 9. Exponent-rate structure.
void criterion9() {
  const JointDistribution d = JointDistribution::dsbs(0.1);
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 20; ++step) {
    const double rate = theorem1_exponent_rate(d, step / 20.0, 0.0);
    if (rate > prev + 1e-15) monotone = false;
    prev = rate;
  }
  const double at_zero = std::abs(theorem1_exponent_rate(d, 0.0, 0.0) -
                                  mutual_information(d) / 4.0);

  double reduction_gap = 0;
  for (long long m : {0LL, 3LL, 8LL}) {
    const long long n = 8;
    const double t2 = theorem2_exponent_rate(d, BellSignature{2, n, {n - m, m}}, 0.07);
    const double t1 = theorem1_exponent_rate(d, static_cast<double>(m) / n, 0.07);
    reduction_gap = std::max(reduction_gap, std::abs(t2 - t1));
  }

  criterion(9, "exponent rates: monotone in alpha, I/4 at zero, k=2 reduction",
            monotone && at_zero <= 1e-9 && reduction_gap <= 1e-12,
            "gap at zero " + fmt(at_zero) + ", reduction gap " + fmt(reduction_gap));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::printf("%d/9 criteria passed in %lld ms\n", 9 - g_failures,
              static_cast<long long>(elapsed));
  return g_failures == 0 ? 0 : 1;
}
