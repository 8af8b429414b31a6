#ifndef PERMTYP_TYPICALITY_HPP
#define PERMTYP_TYPICALITY_HPP

#include <string>
#include <vector>

#include "core/distribution.hpp"

namespace permtyp {

// k sequences of common length n; rows[j][i] is the 0-based symbol of
// sequence j at position i.
struct SequenceSample {
  int k = 0;
  int n = 0;
  std::vector<std::vector<int>> rows;
};

SequenceSample make_sample(std::vector<std::vector<int>> rows);

// Empirical count table over the joint alphabet, flat layout matching
// JointDistribution; counts sum to n.
struct JointType {
  std::vector<int> alphabet_sizes;
  long long n = 0;
  std::vector<long long> counts;
};

JointType joint_type(const SequenceSample& s, const std::vector<int>& alphabet_sizes);
JointType joint_type(const SequenceSample& s, const JointDistribution& d);

// Strong typicality: |counts[cell]/n - d(cell)| <= eps for EVERY cell,
// zero-probability cells included. Closed inequality at the boundary.
bool is_typical(const JointType& type, const JointDistribution& d, double eps);
bool is_typical(const SequenceSample& s, const JointDistribution& d, double eps);

// Low-level form of the same membership test on a raw count table.
bool counts_typical(const long long* counts, std::size_t cells, long long n,
                    const double* probs, double eps);

struct Rational {
  long long num = 0;
  long long den = 1;
};

// Exact membership for distributions with rational cells: every comparison is
// done on integers, so boundary cases cannot drift. Requires d.has_exact().
bool is_typical_exact(const JointType& type, const JointDistribution& d, Rational eps);

// Text form: one row per line, space-separated symbol indices.
std::string sample_text(const SequenceSample& s);
SequenceSample parse_sample_text(const std::string& text);

}  // namespace permtyp

#endif
