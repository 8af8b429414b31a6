#ifndef PERMTYP_DISTRIBUTION_HPP
#define PERMTYP_DISTRIBUTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "core/partitions.hpp"

namespace permtyp {

// k-dimensional probability table over finite alphabets, stored flat in
// row-major order (coordinate 1 outermost). Cells must be non-negative and
// sum to 1 within kSimplexTolerance; validated at construction only.
//
// A table built from rationals additionally keeps per-cell numerators over a
// common denominator, enabling exact typicality comparisons.
class JointDistribution {
 public:
  static constexpr double kSimplexTolerance = 1e-12;

  JointDistribution(std::vector<int> alphabet_sizes, std::vector<double> probs_flat);

  static JointDistribution from_rationals(std::vector<int> alphabet_sizes,
                                          std::vector<long long> numerators,
                                          long long denominator);

  // Doubly symmetric binary source: uniform marginals, crossover p.
  static JointDistribution dsbs(double p);
  static JointDistribution dsbs_exact(long long p_num, long long p_den);

  int arity() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& alphabet_sizes() const { return sizes_; }
  std::size_t cell_count() const { return probs_.size(); }
  const std::vector<double>& flat() const { return probs_; }
  double prob_flat(std::size_t idx) const { return probs_[idx]; }
  double prob(const std::vector<int>& symbols) const { return probs_[flat_index(symbols)]; }

  std::size_t flat_index(const std::vector<int>& symbols) const;
  std::vector<int> symbols_at(std::size_t flat) const;

  bool has_exact() const { return exact_denominator_ != 0; }
  const std::vector<long long>& exact_numerators() const { return exact_numerators_; }
  long long exact_denominator() const { return exact_denominator_; }

 private:
  std::vector<int> sizes_;
  std::vector<double> probs_;
  std::vector<long long> exact_numerators_;
  long long exact_denominator_ = 0;
};

// Sums out every coordinate not in coords (1-based, strictly increasing).
JointDistribution marginal(const JointDistribution& d, const std::vector<int>& coords);

// Product of block marginals: result(x^k) = prod_blocks marginal(d, block)(x_block).
JointDistribution product_over_partition(const JointDistribution& d, const SetPartition& p);

// Convex combination; shapes must match and weights sum to 1 within tolerance.
JointDistribution mixture(const std::vector<JointDistribution>& ds,
                          const std::vector<double>& weights);

// Kullback-Leibler divergence in bits; +inf when p puts mass where q has none.
double kl_divergence(const JointDistribution& p, const JointDistribution& q);

// I(X;Y) = D(P_XY || P_X P_Y) in bits; requires arity 2.
double mutual_information(const JointDistribution& d);

}  // namespace permtyp

#endif
