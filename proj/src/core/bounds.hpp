#ifndef PERMTYP_BOUNDS_HPP
#define PERMTYP_BOUNDS_HPP

#include <string>
#include <vector>

#include "core/distribution.hpp"

namespace permtyp {

// One evaluated probability majorant: a per-symbol exponent rate plus the
// explicit finite-n bound min(1, poly_factor * 2^(-n * exponent_rate)), where
// poly_factor is the type-counting factor that makes the bound valid at every
// finite n.
struct BoundReport {
  std::string kind;                  // "thm1", "lemma4", "lemma5", "thm2"
  double exponent_rate = 0;          // bits per symbol, may be negative
  double explicit_bound = 1;         // in [0,1]
  double log2_poly_factor = 0;       // 0 for the Chernoff-style lemmas
  bool vacuous = false;              // delta diverged; bound degraded to 1

  // parameters echoed
  long long n = 0;
  double eps = 0;
  long long m = -1;                  // thm1 only
  int s = 0;                         // lemma5 only
  std::vector<long long> signature;  // thm2 only
  std::vector<int> alphabet_sizes;
};

// (1/4) (D(P_XY || (1-alpha) P_X P_Y + alpha P_XY) - |X||Y| eps).
// Negative values mean the bound is vacuous at that alpha.
double theorem1_exponent_rate(const JointDistribution& d, double alpha, double eps);

// Finite-n bound for a pair permuted by any permutation with m fixed points:
// min(1, (n+1)^(4|X||Y|) * 2^(-n * rate)) with alpha = m/n.
BoundReport theorem1_bound(long long n, long long m, const JointDistribution& d, double eps);

// Single-cycle derangements: min(1, 2^(-(n/2)(I - delta))) with
// delta = 2 sum_{x,y} |log2 (P_XY / P_X P_Y)| eps. A zero joint cell with
// positive marginals makes delta infinite; the bound degrades to 1 and is
// flagged vacuous rather than erroring.
BoundReport lemma4_bound(long long n, const JointDistribution& d, double eps);

// Derangements whose cycle lengths are all < s: min(1, 2^(-(n/s)(I - delta)))
// with delta = sum_{x,y} |log2 (P_XY / P_X P_Y)| eps. Requires s >= 2.
BoundReport lemma5_bound(long long n, int s, const JointDistribution& d, double eps);

// (1/(k(k-1) b_k)) (D(P_{X^k} || sum_j (i_j/n) P_{X_P_j}) - eps prod_j |X_j|).
double theorem2_exponent_rate(const JointDistribution& d, const BellSignature& sig,
                              double eps);

// Finite-n bound for a Bell permutation vector with the given signature:
// min(1, (n+1)^(k(k-1) b_k prod|X_j|) * 2^(-n * rate)). For k = 2 this is
// exactly theorem1_bound with m = signature count of the one-block partition.
BoundReport theorem2_bound(long long n, const BellSignature& sig,
                           const JointDistribution& d, double eps);

}  // namespace permtyp

#endif
