#ifndef PERMTYP_PARTITIONS_HPP
#define PERMTYP_PARTITIONS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/permutation.hpp"

namespace permtyp {

using BigInt = boost::multiprecision::cpp_int;

// Partition of [1,k]: disjoint non-empty blocks covering [1,k], each block
// ascending, blocks ordered by smallest element.
struct SetPartition {
  int k = 0;
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool operator==(const SetPartition&) const = default;
};

// Restricted growth string: rgs[i] is the block label of element i+1, labels
// assigned in order of first appearance (rgs[0] = 0).
std::vector<int> rgs_of(const SetPartition& p);
SetPartition partition_from_rgs(const std::vector<int>& rgs);

std::string partition_text(const SetPartition& p);  // "{1,2}{3}"

// Canonical enumeration of all partitions of [1,k]: block count descending,
// then restricted growth string ascending. For k=3 this places the
// all-singletons partition first and the one-block partition last.
class PartitionTable {
 public:
  explicit PartitionTable(int k);  // 1 <= k <= 12

  int k() const { return k_; }
  std::size_t size() const { return partitions_.size(); }  // the k-th Bell number
  const SetPartition& at(std::size_t j) const { return partitions_[j]; }
  const std::vector<SetPartition>& all() const { return partitions_; }

  // Canonical slot of the partition with the given restricted growth string.
  std::size_t index_of_rgs(const std::vector<int>& rgs) const;

 private:
  int k_;
  std::vector<SetPartition> partitions_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::vector<SetPartition> enumerate_partitions(int k);

BigInt bell_number(int k);  // Bell triangle recurrence, k >= 1

// Count vector over the canonical partition order: counts[j] = number of
// indices corresponding to partition j; sums to n.
struct BellSignature {
  int k = 0;
  long long n = 0;
  std::vector<long long> counts;

  bool operator==(const BellSignature&) const = default;
};

std::string signature_text(const BellSignature& sig);                    // "2,1,0,3,1"
BellSignature parse_signature_text(const std::string& text, int k);

// Throws unless all permutations share one domain size and k >= 1.
void validate_permutation_vector(const std::vector<Permutation>& pv);

// Canonical slot (0-based) of the partition of [1,k] grouping l with l'
// exactly when pi_l^{-1}(i) = pi_{l'}^{-1}(i).
std::size_t index_correspondence(const std::vector<Permutation>& pv, int i,
                                 const PartitionTable& table);

BellSignature bell_signature(const std::vector<Permutation>& pv,
                             const PartitionTable& table);
BellSignature bell_signature(const std::vector<Permutation>& pv);

// True iff pi_1 is the identity and the forward images pi_l(i) are pairwise
// distinct at every index.
bool is_kfold_derangement(const std::vector<Permutation>& pv);

}  // namespace permtyp

#endif
