#include "core/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace permtyp {

namespace {

std::size_t checked_cell_count(const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("distribution: needs at least one coordinate");
  std::size_t cells = 1;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("distribution: alphabet sizes must be >= 1");
    if (cells > (std::size_t{1} << 40) / static_cast<std::size_t>(s))
      throw std::invalid_argument("distribution: probability table too large");
    cells *= static_cast<std::size_t>(s);
  }
  return cells;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<int> alphabet_sizes,
                                     std::vector<double> probs_flat)
    : sizes_(std::move(alphabet_sizes)), probs_(std::move(probs_flat)) {
  const std::size_t cells = checked_cell_count(sizes_);
  if (probs_.size() != cells)
    throw std::invalid_argument("distribution: table has " + std::to_string(probs_.size()) +
                                " cells, shape wants " + std::to_string(cells));
  double sum = 0;
  for (double v : probs_) {
    if (!(v >= 0)) throw std::invalid_argument("distribution: negative or NaN cell");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance)
    throw std::invalid_argument("distribution: cells sum to " + std::to_string(sum) +
                                ", expected 1");
}

JointDistribution JointDistribution::from_rationals(std::vector<int> alphabet_sizes,
                                                    std::vector<long long> numerators,
                                                    long long denominator) {
  if (denominator <= 0)
    throw std::invalid_argument("distribution: denominator must be positive");
  long long total = 0;
  std::vector<double> probs;
  probs.reserve(numerators.size());
  for (long long num : numerators) {
    if (num < 0) throw std::invalid_argument("distribution: negative numerator");
    total += num;
    probs.push_back(static_cast<double>(num) / static_cast<double>(denominator));
  }
  if (total != denominator)
    throw std::invalid_argument("distribution: numerators sum to " + std::to_string(total) +
                                ", expected " + std::to_string(denominator));
  JointDistribution d(std::move(alphabet_sizes), std::move(probs));
  d.exact_numerators_ = std::move(numerators);
  d.exact_denominator_ = denominator;
  return d;
}

JointDistribution JointDistribution::dsbs(double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("dsbs: p must be in [0,1]");
  const double same = (1.0 - p) / 2.0, diff = p / 2.0;
  return JointDistribution({2, 2}, {same, diff, diff, same});
}

JointDistribution JointDistribution::dsbs_exact(long long p_num, long long p_den) {
  if (p_den <= 0 || p_num < 0 || p_num > p_den)
    throw std::invalid_argument("dsbs_exact: p must be in [0,1]");
  const long long den = 2 * p_den;
  return from_rationals({2, 2}, {p_den - p_num, p_num, p_num, p_den - p_num}, den);
}

std::size_t JointDistribution::flat_index(const std::vector<int>& symbols) const {
  if (symbols.size() != sizes_.size())
    throw std::invalid_argument("distribution: symbol tuple arity mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    if (symbols[j] < 0 || symbols[j] >= sizes_[j])
      throw std::invalid_argument("distribution: symbol out of alphabet");
    idx = idx * static_cast<std::size_t>(sizes_[j]) + static_cast<std::size_t>(symbols[j]);
  }
  return idx;
}

std::vector<int> JointDistribution::symbols_at(std::size_t flat) const {
  std::vector<int> out(sizes_.size());
  for (std::size_t j = sizes_.size(); j-- > 0;) {
    out[j] = static_cast<int>(flat % static_cast<std::size_t>(sizes_[j]));
    flat /= static_cast<std::size_t>(sizes_[j]);
  }
  return out;
}

JointDistribution marginal(const JointDistribution& d, const std::vector<int>& coords) {
  if (coords.empty()) throw std::invalid_argument("marginal: coordinate subset is empty");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 1 || coords[i] > d.arity())
      throw std::invalid_argument("marginal: coordinate out of range");
    if (i && coords[i] <= coords[i - 1])
      throw std::invalid_argument("marginal: coordinates must be strictly increasing");
  }
  std::vector<int> out_sizes;
  out_sizes.reserve(coords.size());
  for (int c : coords) out_sizes.push_back(d.alphabet_sizes()[c - 1]);
  std::size_t out_cells = 1;
  for (int s : out_sizes) out_cells *= static_cast<std::size_t>(s);

  std::vector<double> out(out_cells, 0.0);
  for (std::size_t flat = 0; flat < d.cell_count(); ++flat) {
    const std::vector<int> symbols = d.symbols_at(flat);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < coords.size(); ++j)
      idx = idx * static_cast<std::size_t>(out_sizes[j]) +
            static_cast<std::size_t>(symbols[coords[j] - 1]);
    out[idx] += d.prob_flat(flat);
  }
  return JointDistribution(std::move(out_sizes), std::move(out));
}

JointDistribution product_over_partition(const JointDistribution& d, const SetPartition& p) {
  if (p.k != d.arity())
    throw std::invalid_argument("product_over_partition: partition arity mismatch");
  std::vector<JointDistribution> factors;
  factors.reserve(p.blocks.size());
  for (const auto& block : p.blocks) factors.push_back(marginal(d, block));

  std::vector<double> out(d.cell_count());
  for (std::size_t flat = 0; flat < d.cell_count(); ++flat) {
    const std::vector<int> symbols = d.symbols_at(flat);
    double prob = 1.0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      std::vector<int> sub;
      sub.reserve(p.blocks[b].size());
      for (int c : p.blocks[b]) sub.push_back(symbols[c - 1]);
      prob *= factors[b].prob(sub);
    }
    out[flat] = prob;
  }
  return JointDistribution(d.alphabet_sizes(), std::move(out));
}

JointDistribution mixture(const std::vector<JointDistribution>& ds,
                          const std::vector<double>& weights) {
  if (ds.empty() || ds.size() != weights.size())
    throw std::invalid_argument("mixture: needs matching components and weights");
  double wsum = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw std::invalid_argument("mixture: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > JointDistribution::kSimplexTolerance)
    throw std::invalid_argument("mixture: weights sum to " + std::to_string(wsum));
  for (const auto& d : ds)
    if (d.alphabet_sizes() != ds.front().alphabet_sizes())
      throw std::invalid_argument("mixture: component shapes differ");

  std::vector<double> out(ds.front().cell_count(), 0.0);
  for (std::size_t c = 0; c < ds.size(); ++c)
    for (std::size_t flat = 0; flat < out.size(); ++flat)
      out[flat] += weights[c] * ds[c].prob_flat(flat);
  return JointDistribution(ds.front().alphabet_sizes(), std::move(out));
}

double kl_divergence(const JointDistribution& p, const JointDistribution& q) {
  if (p.alphabet_sizes() != q.alphabet_sizes())
    throw std::invalid_argument("kl_divergence: shapes differ");
  double sum = 0;
  for (std::size_t flat = 0; flat < p.cell_count(); ++flat) {
    const double pv = p.prob_flat(flat);
    if (pv == 0) continue;
    const double qv = q.prob_flat(flat);
    if (qv == 0) return std::numeric_limits<double>::infinity();
    sum += pv * std::log2(pv / qv);
  }
  return sum;
}

double mutual_information(const JointDistribution& d) {
  if (d.arity() != 2) throw std::invalid_argument("mutual_information: requires a pair");
  return kl_divergence(d, product_over_partition(d, SetPartition{2, {{1}, {2}}}));
}

}  // namespace permtyp
