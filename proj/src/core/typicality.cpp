#include "core/typicality.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace permtyp {

SequenceSample make_sample(std::vector<std::vector<int>> rows) {
  if (rows.empty()) throw std::invalid_argument("sample: needs at least one row");
  SequenceSample s;
  s.k = static_cast<int>(rows.size());
  s.n = static_cast<int>(rows.front().size());
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != s.n)
      throw std::invalid_argument("sample: rows have unequal lengths");
  s.rows = std::move(rows);
  return s;
}

JointType joint_type(const SequenceSample& s, const std::vector<int>& alphabet_sizes) {
  if (static_cast<int>(alphabet_sizes.size()) != s.k)
    throw std::invalid_argument("joint_type: alphabet arity does not match sample");
  std::size_t cells = 1;
  for (int a : alphabet_sizes) cells *= static_cast<std::size_t>(a);
  JointType type;
  type.alphabet_sizes = alphabet_sizes;
  type.n = s.n;
  type.counts.assign(cells, 0);
  for (int i = 0; i < s.n; ++i) {
    std::size_t idx = 0;
    for (int j = 0; j < s.k; ++j) {
      const int sym = s.rows[j][i];
      if (sym < 0 || sym >= alphabet_sizes[j])
        throw std::invalid_argument("joint_type: symbol out of alphabet");
      idx = idx * static_cast<std::size_t>(alphabet_sizes[j]) + static_cast<std::size_t>(sym);
    }
    ++type.counts[idx];
  }
  return type;
}

JointType joint_type(const SequenceSample& s, const JointDistribution& d) {
  return joint_type(s, d.alphabet_sizes());
}

bool counts_typical(const long long* counts, std::size_t cells, long long n,
                    const double* probs, double eps) {
  const double dn = static_cast<double>(n);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const double freq = static_cast<double>(counts[cell]) / dn;
    if (std::abs(freq - probs[cell]) > eps) return false;
  }
  return true;
}

bool is_typical(const JointType& type, const JointDistribution& d, double eps) {
  if (type.alphabet_sizes != d.alphabet_sizes())
    throw std::invalid_argument("is_typical: type and distribution shapes differ");
  if (eps < 0) throw std::invalid_argument("is_typical: eps must be >= 0");
  return counts_typical(type.counts.data(), type.counts.size(), type.n,
                        d.flat().data(), eps);
}

bool is_typical(const SequenceSample& s, const JointDistribution& d, double eps) {
  return is_typical(joint_type(s, d), d, eps);
}

bool is_typical_exact(const JointType& type, const JointDistribution& d, Rational eps) {
  if (!d.has_exact())
    throw std::invalid_argument("is_typical_exact: distribution has no rational cells");
  if (type.alphabet_sizes != d.alphabet_sizes())
    throw std::invalid_argument("is_typical_exact: type and distribution shapes differ");
  if (eps.den <= 0 || eps.num < 0)
    throw std::invalid_argument("is_typical_exact: eps must be a non-negative rational");
  // |c/n - a/D| <= e/f  <=>  |c*D - n*a| * f <= e*n*D, all in exact integers.
  const BigInt n = type.n, den = d.exact_denominator();
  const BigInt rhs = BigInt(eps.num) * n * den;
  for (std::size_t cell = 0; cell < type.counts.size(); ++cell) {
    BigInt diff = BigInt(type.counts[cell]) * den - n * d.exact_numerators()[cell];
    if (diff < 0) diff = -diff;
    if (diff * eps.den > rhs) return false;
  }
  return true;
}

std::string sample_text(const SequenceSample& s) {
  std::ostringstream out;
  for (int j = 0; j < s.k; ++j) {
    for (int i = 0; i < s.n; ++i) {
      if (i) out << ' ';
      out << s.rows[j][i];
    }
    out << '\n';
  }
  return out.str();
}

SequenceSample parse_sample_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<int> row;
    int v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw std::invalid_argument("sample text: bad token in '" + line + "'");
    rows.push_back(std::move(row));
  }
  return make_sample(std::move(rows));
}

}  // namespace permtyp
