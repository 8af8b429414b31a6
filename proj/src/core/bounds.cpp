#include "core/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace permtyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finish(BoundReport& report, double n, double rate) {
  report.exponent_rate = rate;
  if (rate == -kInf) {
    report.vacuous = true;
    report.explicit_bound = 1.0;
    return report.explicit_bound;
  }
  const double log2_bound = report.log2_poly_factor - n * rate;
  report.explicit_bound = log2_bound >= 0 ? 1.0 : std::exp2(log2_bound);
  return report.explicit_bound;
}

// sum_{x,y} |log2 (P_XY / P_X P_Y)|; +inf when a zero joint cell has positive
// marginals.
double log_ratio_sum(const JointDistribution& d) {
  const JointDistribution indep = product_over_partition(d, SetPartition{2, {{1}, {2}}});
  double sum = 0;
  for (std::size_t cell = 0; cell < d.cell_count(); ++cell) {
    const double p = d.prob_flat(cell), q = indep.prob_flat(cell);
    if (p == 0) {
      if (q > 0) return kInf;
      continue;
    }
    sum += std::abs(std::log2(p / q));
  }
  return sum;
}

double joint_alphabet_product(const JointDistribution& d) {
  double prod = 1;
  for (int a : d.alphabet_sizes()) prod *= a;
  return prod;
}

}  // namespace

double theorem1_exponent_rate(const JointDistribution& d, double alpha, double eps) {
  if (d.arity() != 2) throw std::invalid_argument("theorem1: requires a pair distribution");
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("theorem1: alpha must be in [0,1]");
  if (eps < 0) throw std::invalid_argument("theorem1: eps must be >= 0");
  const JointDistribution indep = product_over_partition(d, SetPartition{2, {{1}, {2}}});
  const JointDistribution mixed = mixture({indep, d}, {1.0 - alpha, alpha});
  const double divergence = kl_divergence(d, mixed);
  return 0.25 * (divergence - joint_alphabet_product(d) * eps);
}

BoundReport theorem1_bound(long long n, long long m, const JointDistribution& d, double eps) {
  if (n < 1 || m < 0 || m > n) throw std::invalid_argument("theorem1_bound: need 0 <= m <= n >= 1");
  BoundReport report;
  report.kind = "thm1";
  report.n = n;
  report.m = m;
  report.eps = eps;
  report.alphabet_sizes = d.alphabet_sizes();
  report.log2_poly_factor = 4.0 * joint_alphabet_product(d) *
                             std::log2(static_cast<double>(n) + 1.0);
  const double alpha = static_cast<double>(m) / static_cast<double>(n);
  finish(report, static_cast<double>(n), theorem1_exponent_rate(d, alpha, eps));
  return report;
}

BoundReport lemma4_bound(long long n, const JointDistribution& d, double eps) {
  if (d.arity() != 2) throw std::invalid_argument("lemma4: requires a pair distribution");
  if (n < 1 || eps < 0) throw std::invalid_argument("lemma4: need n >= 1, eps >= 0");
  BoundReport report;
  report.kind = "lemma4";
  report.n = n;
  report.eps = eps;
  report.alphabet_sizes = d.alphabet_sizes();
  const double delta = eps == 0 ? 0.0 : 2.0 * log_ratio_sum(d) * eps;
  finish(report, static_cast<double>(n), 0.5 * (mutual_information(d) - delta));
  return report;
}

BoundReport lemma5_bound(long long n, int s, const JointDistribution& d, double eps) {
  if (d.arity() != 2) throw std::invalid_argument("lemma5: requires a pair distribution");
  if (s < 2) throw std::invalid_argument("lemma5: s must be >= 2 (derangement cycles have length >= 2)");
  if (n < 1 || eps < 0) throw std::invalid_argument("lemma5: need n >= 1, eps >= 0");
  BoundReport report;
  report.kind = "lemma5";
  report.n = n;
  report.s = s;
  report.eps = eps;
  report.alphabet_sizes = d.alphabet_sizes();
  const double delta = eps == 0 ? 0.0 : log_ratio_sum(d) * eps;
  finish(report, static_cast<double>(n), (mutual_information(d) - delta) / s);
  return report;
}

double theorem2_exponent_rate(const JointDistribution& d, const BellSignature& sig,
                              double eps) {
  const int k = d.arity();
  if (k < 2) throw std::invalid_argument("theorem2: requires k >= 2 coordinates");
  if (sig.k != k) throw std::invalid_argument("theorem2: signature arity mismatch");
  if (eps < 0) throw std::invalid_argument("theorem2: eps must be >= 0");
  if (sig.n < 1) throw std::invalid_argument("theorem2: signature must sum to n >= 1");
  const PartitionTable table(k);
  if (sig.counts.size() != table.size())
    throw std::invalid_argument("theorem2: signature has wrong number of slots");

  std::vector<JointDistribution> components;
  std::vector<double> weights;
  components.reserve(table.size());
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (sig.counts[j] < 0) throw std::invalid_argument("theorem2: negative signature count");
    if (sig.counts[j] == 0) continue;
    components.push_back(product_over_partition(d, table.at(j)));
    weights.push_back(static_cast<double>(sig.counts[j]) / static_cast<double>(sig.n));
  }
  const double divergence = kl_divergence(d, mixture(components, weights));
  const double bell = static_cast<double>(table.size());
  return (divergence - joint_alphabet_product(d) * eps) /
         (static_cast<double>(k) * (k - 1) * bell);
}

BoundReport theorem2_bound(long long n, const BellSignature& sig,
                           const JointDistribution& d, double eps) {
  if (sig.n != n) throw std::invalid_argument("theorem2_bound: signature does not sum to n");
  BoundReport report;
  report.kind = "thm2";
  report.n = n;
  report.eps = eps;
  report.signature = sig.counts;
  report.alphabet_sizes = d.alphabet_sizes();
  const int k = d.arity();
  const double bell = static_cast<double>(PartitionTable(k).size());
  report.log2_poly_factor = static_cast<double>(k) * (k - 1) * bell *
                             joint_alphabet_product(d) *
                             std::log2(static_cast<double>(n) + 1.0);
  finish(report, static_cast<double>(n), theorem2_exponent_rate(d, sig, eps));
  return report;
}

}  // namespace permtyp
