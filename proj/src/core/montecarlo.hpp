#ifndef PERMTYP_MONTECARLO_HPP
#define PERMTYP_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/counting.hpp"
#include "core/philox.hpp"
#include "core/typicality.hpp"

namespace permtyp {

// One typicality experiment: draw n i.i.d. columns from dist, permute row j
// by perms[j], test membership in the eps-typical set.
struct TrialConfig {
  JointDistribution dist;
  std::vector<Permutation> perms;
  int n = 0;
  double eps = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
};

struct EstimateReport {
  double p_hat = 0;
  double std_err = 0;  // sqrt(p_hat (1 - p_hat) / trials)
  long long trials = 0;
  std::optional<double> exact;
  std::optional<BoundReport> bound;
};

// n i.i.d. columns of d; rows are the coordinate sequences. Consumes one
// uniform per column from the stream.
SequenceSample sample_iid(const JointDistribution& d, int n, PhiloxStream& rng);

inline constexpr long long kOutcomeGuard = 10'000'000;

// Sum over all (prod_j |X_j|)^n outcome tuples of probability * indicator
// that the permuted sample is typical. Outcome weights are computed from the
// column-count table (fixed factor grouping), so outcomes related by position
// relabeling carry bitwise-identical weights; accumulation is compensated and
// chunked in fixed order, making the result independent of the worker count.
// Throws InfeasibleError past kOutcomeGuard outcomes.
double exact_typicality_prob(const JointDistribution& d,
                             const std::vector<Permutation>& perms, int n,
                             double eps, int workers = 0);

bool exact_enumeration_feasible(const JointDistribution& d, int n);

// Monte Carlo estimate; trial t draws from the (seed, t) counter stream, so
// p_hat is a pure function of the config regardless of worker count.
EstimateReport estimate_typicality_prob(const TrialConfig& cfg, int workers = 0);

// Exact-enumeration check of the permutation-invariance claims for a pair
// distribution: (i) permuting both sequences by one sigma leaves the
// probability unchanged, (ii) the probability is constant across all
// permutations of a cycle-type class, (iii) a permuted pair reduces to
// (identity, standard permutation of the cycle type of pi_x^-1 pi_y).
struct Prop1Report {
  int n = 0;
  double eps = 0;
  double tolerance = 1e-12;
  double max_same_perm = 0;    // part i
  double max_class_spread = 0; // part ii
  double max_reduction = 0;    // part iii
  int classes = 0;
  int perms_checked = 0;
  bool pass = false;

  double max_discrepancy() const;
};

Prop1Report verify_proposition1(const JointDistribution& d, int n, double eps,
                                std::uint64_t seed = 0x5eedULL,
                                int random_checks = 20);

// One bound-vs-exact comparison; margin = bound - exact (or bound - (p_hat +
// 3 std_err) when only an estimate is available). Negative margin is a
// violation.
struct SweepRow {
  std::string config_id;
  long long n = 0;
  std::string group;  // m or s or signature, depending on the bound
  double eps = 0;
  std::optional<double> exact;
  std::optional<double> p_hat;
  std::optional<double> std_err;
  double bound = 1;
  double margin = 0;
  bool violation = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  int violations = 0;
  bool pass = true;

  void merge(SweepReport other);
};

// Soundness sweeps: every feasible configuration must satisfy
// exact <= explicit bound.
SweepReport sweep_theorem1(const JointDistribution& d, const std::string& label,
                           const std::vector<int>& ns, const std::vector<double>& epss);
SweepReport sweep_lemma4(const JointDistribution& d, const std::string& label,
                         const std::vector<int>& ns, const std::vector<double>& epss);
SweepReport sweep_lemma5(const JointDistribution& d, const std::string& label,
                         const std::vector<int>& ns, const std::vector<int>& ss,
                         const std::vector<double>& epss);
SweepReport sweep_theorem2(const JointDistribution& d, const std::string& label, int n,
                           const std::vector<std::vector<Permutation>>& pvs,
                           const std::vector<double>& epss);

// The standard suite: Theorem 1 over all of S_3..S_5, Lemma 4 over all single
// cycles at n in {4,5,6}, Lemma 5 over short-cycle derangements at n in
// {4,6}, Theorem 2 over explicit k=3 vectors at n=4; DSBS(0.1) and DSBS(0.2)
// pair sources plus a full-support binary triple.
SweepReport default_bound_sweep();

// The fixed triple source used by the default sweep (full support, k=3).
JointDistribution default_triple_distribution();

// Explicit k=3 permutation vectors on n=4 realizing five distinct Bell
// signatures, identity first where the vector calls for it.
std::vector<std::vector<Permutation>> default_triple_vectors();

std::string sweep_csv(const SweepReport& report);

}  // namespace permtyp

#endif
