#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/counting.hpp"
#include "core/permutation.hpp"

using namespace permtyp;

namespace {

// All count vectors of length slots summing to n.
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

BellSignature make_sig(int k, long long n, std::vector<long long> counts) {
  return BellSignature{k, n, std::move(counts)};
}

}  // namespace

TEST_CASE("derangement numbers") {
  CHECK(derangements(0) == 1);
  CHECK(derangements(1) == 0);
  CHECK(derangements(4) == 9);
  CHECK(derangements(5) == 44);

  // brute force over S_n
  for (int n = 1; n <= 7; ++n) {
    BigInt count = 0;
    for (const auto& p : all_permutations(n))
      if (p.is_derangement()) ++count;
    CHECK(derangements(n) == count);
  }
}

TEST_CASE("derangements satisfy the iterative inequality") {
  for (long long n = 2; n <= 50; ++n)
    CHECK(derangements(n) >= (n - 1) * derangements(n - 1));
}

TEST_CASE("fixed-point class counts") {
  CHECK(count_fixed_point_perms(5, 2) == 20);
  for (int n = 1; n <= 7; ++n) {
    CHECK(count_fixed_point_perms(n, n) == 1);
    CHECK(count_fixed_point_perms(n, n - 1) == 0);

    std::vector<BigInt> brute(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : all_permutations(n)) ++brute[p.fixed_point_count()];
    BigInt total = 0;
    for (int m = 0; m <= n; ++m) {
      CHECK(count_fixed_point_perms(n, m) == brute[m]);
      total += brute[m];
    }
    CHECK(total == factorial(n));
  }
  CHECK_THROWS_AS(count_fixed_point_perms(4, 5), std::invalid_argument);
}

TEST_CASE("fixed-point count bounds") {
  const CountBounds b52 = fixed_point_count_bounds(5, 2);
  CHECK(b52.lower == 20);
  CHECK(*b52.exact == 20);
  CHECK(b52.upper == 125);

  const CountBounds b40 = fixed_point_count_bounds(4, 0);
  CHECK(b40.lower == 6);
  CHECK(*b40.exact == 9);
  CHECK(b40.upper == 256);

  const CountBounds degenerate = fixed_point_count_bounds(6, 6);
  CHECK(degenerate.lower == 1);
  CHECK(*degenerate.exact == 1);
  CHECK(degenerate.upper == 1);

  for (long long n = 1; n <= 9; ++n) {
    for (long long m = 0; m <= n; ++m) {
      const CountBounds b = fixed_point_count_bounds(n, m);
      CHECK(b.lower <= *b.exact);
      CHECK(*b.exact <= b.upper);
    }
  }
}

TEST_CASE("normalized fixed-point log-count approaches 1 - alpha") {
  CHECK(normalized_log_fixed_count(10, 10) == 0.0);

  const double v50 = normalized_log_fixed_count(50, 25);
  const double v200 = normalized_log_fixed_count(200, 100);
  CHECK(std::abs(v200 - 0.5) < std::abs(v50 - 0.5));
  CHECK(std::abs(v200 - 0.5) <= 0.1);

  CHECK(std::abs(normalized_log_fixed_count(100, 0) - 1.0) <= 0.1);
}

TEST_CASE("exact k-fold derangement counts") {
  for (int n = 1; n <= 6; ++n)
    CHECK(exact_kfold_derangements(n, 2) == derangements(n));
  CHECK(exact_kfold_derangements(3, 3) == 2);
  CHECK(exact_kfold_derangements(1, 2) == 0);
  CHECK(exact_kfold_derangements(4, 1) == 1);  // only the identity vector
  CHECK_THROWS_AS(exact_kfold_derangements(10, 3), InfeasibleError);
}

TEST_CASE("k-fold bounds") {
  const CountBounds b33 = kfold_bounds(3, 3);
  CHECK(b33.lower == 1);
  CHECK(*b33.exact == 2);
  CHECK(b33.upper == 4);

  const CountBounds b42 = kfold_bounds(4, 2);
  CHECK(b42.lower == 6);
  CHECK(*b42.exact == 9);
  CHECK(b42.upper == 9);

  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= std::min(n, 3); ++k) {
      const CountBounds b = kfold_bounds(n, k);
      REQUIRE(b.exact.has_value());
      CHECK(b.lower <= *b.exact);
      CHECK(*b.exact <= b.upper);
    }
  }
  CHECK_THROWS_AS(kfold_bounds(3, 4), std::invalid_argument);
}

TEST_CASE("exact Bell vector counts") {
  CHECK(exact_bell_count(4, 2, make_sig(2, 4, {4, 0})) == 9);
  CHECK(exact_bell_count(4, 2, make_sig(2, 4, {0, 4})) == 1);
  CHECK(exact_bell_count(3, 3, make_sig(3, 3, {3, 0, 0, 0, 0})) ==
        exact_kfold_derangements(3, 3));
  CHECK_THROWS_AS(exact_bell_count(10, 3, make_sig(3, 10, {10, 0, 0, 0, 0})),
                  InfeasibleError);
  CHECK_THROWS_AS(exact_bell_count(4, 2, make_sig(2, 3, {3, 0})), std::invalid_argument);
}

TEST_CASE("Bell count bounds") {
  const CountBounds b40 = bell_count_bounds(4, 2, make_sig(2, 4, {4, 0}));
  CHECK(b40.lower == 9);
  CHECK(b40.upper == 256);
  CHECK(*b40.exact == 9);

  const CountBounds b04 = bell_count_bounds(4, 2, make_sig(2, 4, {0, 4}));
  CHECK(b04.lower == 1);
  CHECK(b04.upper == 1);
  CHECK(*b04.exact == 1);
}

TEST_CASE("Bell bounds sandwich every k=3 signature and sum to (n!)^2") {
  for (int n = 2; n <= 4; ++n) {
    BigInt total = 0;
    for (const auto& counts : compositions(n, 5)) {
      const BellSignature sig = make_sig(3, n, counts);
      const CountBounds b = bell_count_bounds(n, 3, sig);
      REQUIRE(b.exact.has_value());
      CHECK(b.lower <= *b.exact);
      CHECK(*b.exact <= b.upper);
      total += *b.exact;
    }
    CHECK(total == factorial(n) * factorial(n));
  }
}

TEST_CASE("normalized Bell log-count rates") {
  const RatePair concentrated = normalized_log_bell_count(6, 2, make_sig(2, 6, {0, 6}));
  REQUIRE(concentrated.exact.has_value());
  CHECK(*concentrated.exact == 0.0);  // a single vector

  // k = 2, balanced signature: limit is 2*(1/2) + 1*(1/2) - 1 = 1/2.
  const RatePair pair = normalized_log_bell_count(100, 2, make_sig(2, 100, {50, 50}));
  CHECK_FALSE(pair.exact.has_value());
  CHECK(pair.lower <= pair.upper);
  CHECK(std::abs(pair.lower - 0.5) <= 0.15);
  CHECK(std::abs(pair.upper - 0.5) <= 0.15);

  // consistency with the fixed-point rate: k = 2, all-derangement signature
  // matches the m = 0 class up to the identity-fixing convention.
  const RatePair derangement_rate = normalized_log_bell_count(80, 2, make_sig(2, 80, {80, 0}));
  CHECK(std::abs(derangement_rate.lower - normalized_log_fixed_count(80, 0)) < 0.2);
}

TEST_CASE("unrestricted multiplier is n factorial") {
  CHECK(unrestricted_vector_multiplier(5) == 120);
}

TEST_CASE("big log2 is accurate") {
  CHECK(log2_big(BigInt(1)) == 0.0);
  CHECK(log2_big(BigInt(1) << 200) == doctest::Approx(200.0).epsilon(1e-12));
  const double l = log2_big(factorial(100));
  CHECK(l == doctest::Approx(524.76499329005).epsilon(1e-10));
  CHECK(log2_big(BigInt(0)) == -std::numeric_limits<double>::infinity());
}
