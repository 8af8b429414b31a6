#include "core/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permtyp {

namespace {

std::string rgs_key(const std::vector<int>& rgs) {
  std::string key(rgs.size(), '\0');
  for (std::size_t i = 0; i < rgs.size(); ++i) key[i] = static_cast<char>(rgs[i]);
  return key;
}

}  // namespace

std::vector<int> rgs_of(const SetPartition& p) {
  std::vector<int> rgs(p.k, -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (int elem : p.blocks[b]) rgs[elem - 1] = static_cast<int>(b);
  return rgs;
}

SetPartition partition_from_rgs(const std::vector<int>& rgs) {
  SetPartition p;
  p.k = static_cast<int>(rgs.size());
  for (int i = 0; i < p.k; ++i) {
    const auto label = static_cast<std::size_t>(rgs[i]);
    if (label >= p.blocks.size()) p.blocks.resize(label + 1);
    p.blocks[label].push_back(i + 1);
  }
  return p;
}

std::string partition_text(const SetPartition& p) {
  std::ostringstream out;
  for (const auto& block : p.blocks) {
    out << '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out << ',';
      out << block[i];
    }
    out << '}';
  }
  return out.str();
}

std::vector<SetPartition> enumerate_partitions(int k) {
  if (k < 1 || k > 12)
    throw std::invalid_argument("enumerate_partitions: k must be in [1,12]");
  // All restricted growth strings in lexicographic order, bucketed by block
  // count; concatenating buckets from k blocks down to 1 gives the canonical
  // order directly.
  std::vector<std::vector<std::vector<int>>> buckets(k + 1);
  std::vector<int> rgs(k, 0);
  const auto emit = [&] {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    buckets[blocks].push_back(rgs);
  };
  // Odometer over RGS strings: position i may hold 0..max(prefix)+1.
  for (;;) {
    emit();
    int i = k - 1;
    for (; i > 0; --i) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
      if (rgs[i] <= prefix_max) break;
      rgs[i] = 0;
    }
    if (i == 0) break;
    ++rgs[i];
  }
  std::vector<SetPartition> out;
  for (int blocks = k; blocks >= 1; --blocks)
    for (const auto& s : buckets[blocks]) out.push_back(partition_from_rgs(s));
  return out;
}

PartitionTable::PartitionTable(int k) : k_(k), partitions_(enumerate_partitions(k)) {
  index_.reserve(partitions_.size());
  for (std::size_t j = 0; j < partitions_.size(); ++j)
    index_.emplace(rgs_key(rgs_of(partitions_[j])), j);
}

std::size_t PartitionTable::index_of_rgs(const std::vector<int>& rgs) const {
  const auto it = index_.find(rgs_key(rgs));
  if (it == index_.end())
    throw std::invalid_argument("PartitionTable: not a restricted growth string of length k");
  return it->second;
}

BigInt bell_number(int k) {
  if (k < 1) throw std::invalid_argument("bell_number: k must be >= 1");
  std::vector<BigInt> row = {1};
  for (int i = 1; i < k; ++i) {
    std::vector<BigInt> next(row.size() + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j < row.size(); ++j) next[j + 1] = next[j] + row[j];
    row = std::move(next);
  }
  return row[0];
}

std::string signature_text(const BellSignature& sig) {
  std::ostringstream out;
  for (std::size_t j = 0; j < sig.counts.size(); ++j) {
    if (j) out << ',';
    out << sig.counts[j];
  }
  return out.str();
}

BellSignature parse_signature_text(const std::string& text, int k) {
  BellSignature sig;
  sig.k = k;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < 0)
      throw std::invalid_argument("signature: bad count '" + tok + "'");
    sig.counts.push_back(v);
    sig.n += v;
  }
  const BigInt expect = bell_number(k);
  if (BigInt(sig.counts.size()) != expect)
    throw std::invalid_argument("signature: expected " + expect.str() +
                                " counts for k=" + std::to_string(k) + ", got " +
                                std::to_string(sig.counts.size()));
  return sig;
}

void validate_permutation_vector(const std::vector<Permutation>& pv) {
  if (pv.empty())
    throw std::invalid_argument("permutation vector: must contain at least one permutation");
  for (const auto& p : pv)
    if (p.n() != pv.front().n())
      throw std::invalid_argument("permutation vector: domain sizes differ");
}

namespace {

// RGS of the partition grouping l with l' when values[l] == values[l'].
std::vector<int> grouping_rgs(const std::vector<int>& values) {
  std::vector<int> rgs(values.size());
  std::vector<int> seen;  // value of the first member of each label
  for (std::size_t l = 0; l < values.size(); ++l) {
    std::size_t label = 0;
    for (; label < seen.size(); ++label)
      if (seen[label] == values[l]) break;
    if (label == seen.size()) seen.push_back(values[l]);
    rgs[l] = static_cast<int>(label);
  }
  return rgs;
}

}  // namespace

std::size_t index_correspondence(const std::vector<Permutation>& pv, int i,
                                 const PartitionTable& table) {
  validate_permutation_vector(pv);
  if (i < 1 || i > pv.front().n())
    throw std::invalid_argument("index_correspondence: index out of range");
  std::vector<int> values(pv.size());
  for (std::size_t l = 0; l < pv.size(); ++l) values[l] = pv[l].inverse()(i);
  return table.index_of_rgs(grouping_rgs(values));
}

BellSignature bell_signature(const std::vector<Permutation>& pv,
                             const PartitionTable& table) {
  validate_permutation_vector(pv);
  const int k = static_cast<int>(pv.size());
  if (table.k() != k)
    throw std::invalid_argument("bell_signature: partition table arity mismatch");
  const int n = pv.front().n();
  std::vector<Permutation> inverses;
  inverses.reserve(pv.size());
  for (const auto& p : pv) inverses.push_back(p.inverse());

  BellSignature sig;
  sig.k = k;
  sig.n = n;
  sig.counts.assign(table.size(), 0);
  std::vector<int> values(pv.size());
  for (int i = 1; i <= n; ++i) {
    for (std::size_t l = 0; l < inverses.size(); ++l) values[l] = inverses[l](i);
    ++sig.counts[table.index_of_rgs(grouping_rgs(values))];
  }
  return sig;
}

BellSignature bell_signature(const std::vector<Permutation>& pv) {
  validate_permutation_vector(pv);
  return bell_signature(pv, PartitionTable(static_cast<int>(pv.size())));
}

bool is_kfold_derangement(const std::vector<Permutation>& pv) {
  validate_permutation_vector(pv);
  const int n = pv.front().n();
  if (!(pv.front() == Permutation::identity(n))) return false;
  for (int i = 1; i <= n; ++i)
    for (std::size_t l = 0; l < pv.size(); ++l)
      for (std::size_t l2 = l + 1; l2 < pv.size(); ++l2)
        if (pv[l](i) == pv[l2](i)) return false;
  return true;
}

}  // namespace permtyp
