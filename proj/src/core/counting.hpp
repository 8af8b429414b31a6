#ifndef PERMTYP_COUNTING_HPP
#define PERMTYP_COUNTING_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "core/partitions.hpp"

namespace permtyp {

// Raised when an exact enumeration would exceed kEnumerationGuard candidate
// tuples. Never downgraded to a silent approximation.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long long kEnumerationGuard = 10'000'000;

BigInt factorial(long long n);
BigInt binomial(long long n, long long k);
BigInt multinomial(long long n, const std::vector<long long>& parts);

// !n by the recurrence !n = (n-1)(!(n-1) + !(n-2)).
BigInt derangements(long long n);

// Closed-form lower/exact/upper triple; lower <= exact <= upper whenever
// exact is present.
struct CountBounds {
  BigInt lower;
  std::optional<BigInt> exact;
  BigInt upper;
};

// N_m = C(n,m) * !(n-m): permutations of [1,n] with exactly m fixed points.
BigInt count_fixed_point_perms(long long n, long long m);

// (n!/(m!(n-m)), N_m, n^(n-m)). Degenerate edges: m = n clamps the lower
// bound to 1; m = n-1 has N_m = 0 and the lower bound is clamped to 0 so the
// triple stays ordered.
CountBounds fixed_point_count_bounds(long long n, long long m);

// log2 of a positive big integer, accurate to ~1 ulp of double.
double log2_big(const BigInt& x);

// log(N_m) / (n log n); -inf when N_m = 0.
double normalized_log_fixed_count(long long n, long long m);

// Exact d_k(n): number of permutation vectors (pi_1,...,pi_k) with pi_1 the
// identity and forward images pairwise distinct at every index. Enumerates
// (n!)^(k-1) tuples; throws InfeasibleError past the guard.
BigInt exact_kfold_derangements(int n, int k);

// ((n-k+1)!)^(k-1) and (!n)^(k-1) around d_k(n); exact filled when the
// enumeration guard allows. Requires 1 <= k <= n.
CountBounds kfold_bounds(int n, int k);

// d_r(i) with the degenerate conventions d_1(i) = 1 and d_r(0) = 1; exact by
// enumeration when feasible, std::nullopt otherwise.
std::optional<BigInt> kfold_exact_if_feasible(long long i, int r);

// Exact count of Bell permutation vectors (pi_1 = identity) whose signature
// equals sig. Enumerates (n!)^(k-1) tuples; throws InfeasibleError past the
// guard.
BigInt exact_bell_count(int n, int k, const BellSignature& sig);

// Multinomial * prod_j d_{|P_j|}(i_j) below, multinomial * n^(sum |P_j| i_j - n)
// above. Infeasible d factors fall back to their own lower bound, keeping the
// result a valid lower bound. exact filled when the enumeration guard allows.
CountBounds bell_count_bounds(long long n, int k, const BellSignature& sig);

// The counts above fix pi_1 to the identity; dropping that restriction
// multiplies every count by n!.
BigInt unrestricted_vector_multiplier(long long n);

struct RatePair {
  double lower = 0;
  double upper = 0;
  std::optional<double> exact;
};

// log(count) / (n log n) for the Bell vector count; exact when enumeration is
// feasible, otherwise just the normalized (lower, upper) pair.
RatePair normalized_log_bell_count(long long n, int k, const BellSignature& sig);

}  // namespace permtyp

#endif
