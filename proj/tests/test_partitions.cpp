#include <doctest.h>

#include <numeric>

#include "core/partitions.hpp"
#include "core/philox.hpp"

using namespace permtyp;

namespace {

Permutation random_perm(int n, PhiloxStream& rng) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(image[i], image[j]);
  }
  return Permutation(image);
}

// The triple from the worked seven-element example: pi_1 identity,
// pi_2 = (1 3 5)(2 4), pi_3 = (1 5)(2 4)(3 7).
std::vector<Permutation> example_vector() {
  return {Permutation::identity(7), parse_cycles_text("(1 3 5)(2 4)", 7),
          parse_cycles_text("(1 5)(2 4)(3 7)", 7)};
}

}  // namespace

TEST_CASE("partition enumeration in canonical order") {
  const auto k1 = enumerate_partitions(1);
  REQUIRE(k1.size() == 1);
  CHECK(partition_text(k1[0]) == "{1}");

  const auto k2 = enumerate_partitions(2);
  REQUIRE(k2.size() == 2);
  CHECK(partition_text(k2[0]) == "{1}{2}");
  CHECK(partition_text(k2[1]) == "{1,2}");

  const auto k3 = enumerate_partitions(3);
  REQUIRE(k3.size() == 5);
  CHECK(partition_text(k3[0]) == "{1}{2}{3}");
  CHECK(partition_text(k3[1]) == "{1,2}{3}");
  CHECK(partition_text(k3[2]) == "{1,3}{2}");
  CHECK(partition_text(k3[3]) == "{1}{2,3}");
  CHECK(partition_text(k3[4]) == "{1,2,3}");

  CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_partitions(13), std::invalid_argument);
}

TEST_CASE("bell numbers match the enumeration") {
  CHECK(bell_number(1) == 1);
  CHECK(bell_number(2) == 2);
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(5) == BigInt(enumerate_partitions(5).size()));
  CHECK(bell_number(5) == 52);
  CHECK(bell_number(12) == 4213597);
  CHECK_THROWS_AS(bell_number(0), std::invalid_argument);
}

TEST_CASE("restricted growth strings round-trip") {
  for (const auto& p : enumerate_partitions(4)) {
    CHECK(partition_from_rgs(rgs_of(p)) == p);
  }
  const PartitionTable table(4);
  for (std::size_t j = 0; j < table.size(); ++j)
    CHECK(table.index_of_rgs(rgs_of(table.at(j))) == j);
}

TEST_CASE("index correspondence on the worked example") {
  const auto pv = example_vector();
  const PartitionTable table(3);
  // slots are 0-based over the canonical order P1..P5
  CHECK(index_correspondence(pv, 6, table) == 4);  // all three maps agree
  CHECK(index_correspondence(pv, 7, table) == 1);  // first two agree
  CHECK(index_correspondence(pv, 3, table) == 0);
  CHECK(index_correspondence(pv, 1, table) == 3);
  CHECK_THROWS_AS(index_correspondence(pv, 0, table), std::invalid_argument);
  CHECK_THROWS_AS(index_correspondence(pv, 8, table), std::invalid_argument);
}

TEST_CASE("bell signature of the worked example") {
  const BellSignature sig = bell_signature(example_vector());
  CHECK(sig.counts == std::vector<long long>{2, 1, 0, 3, 1});
  CHECK(signature_text(sig) == "2,1,0,3,1");
}

TEST_CASE("all-identity vector concentrates on the one-block partition") {
  for (int k = 2; k <= 4; ++k) {
    const int n = 5;
    const std::vector<Permutation> pv(k, Permutation::identity(n));
    const BellSignature sig = bell_signature(pv);
    const PartitionTable table(k);
    for (std::size_t j = 0; j + 1 < table.size(); ++j) CHECK(sig.counts[j] == 0);
    CHECK(sig.counts.back() == n);
    for (int i = 1; i <= n; ++i)
      CHECK(index_correspondence(pv, i, table) == table.size() - 1);
  }
}

TEST_CASE("pair signature counts fixed points of the second permutation") {
  PhiloxStream rng(21, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(8));
    const Permutation q = random_perm(n, rng);
    const BellSignature sig = bell_signature({Permutation::identity(n), q});
    const long long fixed = q.fixed_point_count();
    CHECK(sig.counts == std::vector<long long>{n - fixed, fixed});
  }
}

TEST_CASE("signature counts always sum to n") {
  PhiloxStream rng(22, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const int k = 2 + static_cast<int>(rng.next_below(3));
    std::vector<Permutation> pv;
    for (int j = 0; j < k; ++j) pv.push_back(random_perm(n, rng));
    const BellSignature sig = bell_signature(pv);
    long long total = 0;
    for (long long c : sig.counts) total += c;
    CHECK(total == n);
  }
}

TEST_CASE("k-fold derangement predicate") {
  const Permutation id3 = Permutation::identity(3);
  CHECK(is_kfold_derangement({id3, parse_cycles_text("(1 2 3)"), parse_cycles_text("(1 3 2)")}));
  CHECK_FALSE(is_kfold_derangement({id3, id3}));
  CHECK_FALSE(is_kfold_derangement({parse_cycles_text("(1 2 3)"), parse_cycles_text("(1 3 2)"),
                                    id3}));  // pi_1 must be the identity

  PhiloxStream rng(23, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const Permutation q = random_perm(n, rng);
    CHECK(is_kfold_derangement({Permutation::identity(n), q}) == q.is_derangement());
  }
}

TEST_CASE("k-fold derangement iff all-singletons signature (pi_1 identity)") {
  PhiloxStream rng(24, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 3 + static_cast<int>(rng.next_below(4));
    std::vector<Permutation> pv{Permutation::identity(n), random_perm(n, rng),
                                random_perm(n, rng)};
    const BellSignature sig = bell_signature(pv);
    const bool singletons_only = sig.counts.front() == n;
    CHECK(is_kfold_derangement(pv) == singletons_only);
  }
}

TEST_CASE("signature text parsing") {
  const BellSignature sig = parse_signature_text("2,1,0,3,1", 3);
  CHECK(sig.n == 7);
  CHECK(sig.counts.size() == 5);
  CHECK_THROWS_AS(parse_signature_text("1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_signature_text("1,x", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_signature_text("-1,3", 2), std::invalid_argument);
}

TEST_CASE("permutation vector validation") {
  CHECK_THROWS_AS(validate_permutation_vector({}), std::invalid_argument);
  CHECK_THROWS_AS(
      validate_permutation_vector({Permutation::identity(3), Permutation::identity(4)}),
      std::invalid_argument);
}
