#include "core/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace permtyp {

BigInt factorial(long long n) {
  if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
  BigInt out = 1;
  for (long long i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (long long i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

BigInt multinomial(long long n, const std::vector<long long>& parts) {
  long long total = 0;
  BigInt out = 1;
  for (long long p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial: negative part");
    out *= binomial(total + p, p);
    total += p;
  }
  if (total != n) throw std::invalid_argument("multinomial: parts do not sum to n");
  return out;
}

BigInt derangements(long long n) {
  if (n < 0) throw std::invalid_argument("derangements: n must be >= 0");
  if (n == 0) return 1;
  BigInt prev2 = 1, prev1 = 0;  // !0, !1
  for (long long i = 2; i <= n; ++i) {
    BigInt cur = (i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return n == 0 ? prev2 : prev1;
}

BigInt count_fixed_point_perms(long long n, long long m) {
  if (m < 0 || m > n) throw std::invalid_argument("count_fixed_point_perms: need 0 <= m <= n");
  return binomial(n, m) * derangements(n - m);
}

CountBounds fixed_point_count_bounds(long long n, long long m) {
  if (m < 0 || m > n) throw std::invalid_argument("fixed_point_count_bounds: need 0 <= m <= n");
  CountBounds out;
  out.exact = count_fixed_point_perms(n, m);
  out.upper = pow(BigInt(n), static_cast<unsigned>(n - m));
  if (m == n) {
    out.lower = 1;  // the closed form divides by n-m = 0
  } else if (m == n - 1) {
    out.lower = 0;  // N_{n-1} = 0, the closed form would exceed it
  } else {
    out.lower = factorial(n) / factorial(m) / (n - m);
  }
  return out;
}

double log2_big(const BigInt& x) {
  if (x <= 0) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("log2_big: negative argument");
  }
  const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits < 63) return std::log2(x.convert_to<double>());
  const unsigned shift = bits - 52;
  const auto mantissa = BigInt(x >> shift).convert_to<std::uint64_t>();
  return std::log2(static_cast<double>(mantissa)) + static_cast<double>(shift);
}

namespace {

// log(v) / (n log n), base-independent; -inf for v = 0, 0 for the n = 1 edge.
double normalized_log(const BigInt& v, long long n) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  if (n <= 1) return 0.0;
  return log2_big(v) / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
}

bool tuple_enumeration_feasible(long long n, int k) {
  BigInt budget = 1;
  const BigInt fact = factorial(n);
  for (int slot = 1; slot < k; ++slot) {
    budget *= fact;
    if (budget > kEnumerationGuard) return false;
  }
  return true;
}

void require_tuple_feasible(long long n, int k, const char* what) {
  if (!tuple_enumeration_feasible(n, k))
    throw InfeasibleError(std::string(what) + ": (n!)^(k-1) exceeds the enumeration guard of " +
                          std::to_string(kEnumerationGuard) + " (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
}

// Visits every (k-1)-tuple of 0-based image tables; tables[0] stays identity.
template <typename Fn>
void visit_permutation_tuples(int n, int k, Fn&& fn) {
  std::vector<std::vector<int>> tables(k, std::vector<int>(n));
  for (auto& t : tables) std::iota(t.begin(), t.end(), 0);
  std::function<void(int)> rec = [&](int slot) {
    if (slot == k) {
      fn(tables);
      return;
    }
    auto& t = tables[slot];
    std::iota(t.begin(), t.end(), 0);
    do {
      rec(slot + 1);
    } while (std::next_permutation(t.begin(), t.end()));
  };
  rec(1);
}

}  // namespace

BigInt exact_kfold_derangements(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("exact_kfold_derangements: need n >= 1, k >= 1");
  require_tuple_feasible(n, k, "exact_kfold_derangements");
  BigInt count = 0;
  visit_permutation_tuples(n, k, [&](const std::vector<std::vector<int>>& tables) {
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < k; ++l)
        for (int l2 = l + 1; l2 < k; ++l2)
          if (tables[l][i] == tables[l2][i]) return;
    ++count;
  });
  return count;
}

CountBounds kfold_bounds(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("kfold_bounds: need 1 <= k <= n");
  CountBounds out;
  out.lower = pow(factorial(n - k + 1), static_cast<unsigned>(k - 1));
  out.upper = pow(derangements(n), static_cast<unsigned>(k - 1));
  if (tuple_enumeration_feasible(n, k)) out.exact = exact_kfold_derangements(n, k);
  return out;
}

std::optional<BigInt> kfold_exact_if_feasible(long long i, int r) {
  if (r < 1 || i < 0) throw std::invalid_argument("kfold_exact_if_feasible: bad arguments");
  if (i == 0 || r == 1) return BigInt(1);
  if (i < r) return BigInt(0);  // r distinct values cannot fit in [1,i]
  if (!tuple_enumeration_feasible(i, r)) return std::nullopt;
  return exact_kfold_derangements(static_cast<int>(i), r);
}

BigInt exact_bell_count(int n, int k, const BellSignature& sig) {
  if (n < 1 || k < 1) throw std::invalid_argument("exact_bell_count: need n >= 1, k >= 1");
  if (sig.n != n || sig.k != k)
    throw std::invalid_argument("exact_bell_count: signature does not match n, k");
  require_tuple_feasible(n, k, "exact_bell_count");
  const PartitionTable table(k);
  if (sig.counts.size() != table.size())
    throw std::invalid_argument("exact_bell_count: signature has wrong number of slots");

  BigInt count = 0;
  std::vector<std::vector<int>> inverses(k, std::vector<int>(n));
  std::vector<long long> counts(table.size());
  std::vector<int> values(k), rgs(k), first_value;
  visit_permutation_tuples(n, k, [&](const std::vector<std::vector<int>>& tables) {
    for (int l = 0; l < k; ++l)
      for (int i = 0; i < n; ++i) inverses[l][tables[l][i]] = i;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < k; ++l) values[l] = inverses[l][i];
      first_value.clear();
      for (int l = 0; l < k; ++l) {
        std::size_t label = 0;
        for (; label < first_value.size(); ++label)
          if (first_value[label] == values[l]) break;
        if (label == first_value.size()) first_value.push_back(values[l]);
        rgs[l] = static_cast<int>(label);
      }
      ++counts[table.index_of_rgs(rgs)];
    }
    if (counts == sig.counts) ++count;
  });
  return count;
}

CountBounds bell_count_bounds(long long n, int k, const BellSignature& sig) {
  if (sig.n != n || sig.k != k)
    throw std::invalid_argument("bell_count_bounds: signature does not match n, k");
  const PartitionTable table(k);
  if (sig.counts.size() != table.size())
    throw std::invalid_argument("bell_count_bounds: signature has wrong number of slots");

  const BigInt multi = multinomial(n, sig.counts);
  CountBounds out;
  out.lower = multi;
  long long position_sum = 0;  // sum_j |P_j| * i_j
  for (std::size_t j = 0; j < table.size(); ++j) {
    const int r = table.at(j).block_count();
    const long long ij = sig.counts[j];
    position_sum += static_cast<long long>(r) * ij;
    if (const auto exact = kfold_exact_if_feasible(ij, r)) {
      out.lower *= *exact;
    } else {
      out.lower *= pow(factorial(ij - r + 1), static_cast<unsigned>(r - 1));
    }
  }
  out.upper = multi * pow(BigInt(n), static_cast<unsigned>(position_sum - n));
  if (n <= std::numeric_limits<int>::max() && tuple_enumeration_feasible(n, k))
    out.exact = exact_bell_count(static_cast<int>(n), k, sig);
  return out;
}

BigInt unrestricted_vector_multiplier(long long n) { return factorial(n); }

RatePair normalized_log_bell_count(long long n, int k, const BellSignature& sig) {
  const CountBounds bounds = bell_count_bounds(n, k, sig);
  RatePair out;
  out.lower = normalized_log(bounds.lower, n);
  out.upper = normalized_log(bounds.upper, n);
  if (bounds.exact) out.exact = normalized_log(*bounds.exact, n);
  return out;
}

double normalized_log_fixed_count(long long n, long long m) {
  if (n < 1) throw std::invalid_argument("normalized_log_fixed_count: need n >= 1");
  return normalized_log(count_fixed_point_perms(n, m), n);
}

}  // namespace permtyp
