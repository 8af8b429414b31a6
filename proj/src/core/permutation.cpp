#include "core/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "core/philox.hpp"

namespace permtyp {

Permutation::Permutation(const std::vector<int>& image_one_based) {
  const int n = static_cast<int>(image_one_based.size());
  if (n == 0) throw std::invalid_argument("permutation: domain must be non-empty");
  map_.resize(n);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    const int v = image_one_based[i];
    if (v < 1 || v > n)
      throw std::invalid_argument("permutation: image value " + std::to_string(v) +
                                  " outside [1," + std::to_string(n) + "]");
    if (seen[v - 1])
      throw std::invalid_argument("permutation: image value " + std::to_string(v) +
                                  " repeated");
    seen[v - 1] = 1;
    map_[i] = v - 1;
  }
}

Permutation permutation_from_raw(std::vector<int> zero_based) {
  return Permutation(std::move(zero_based), Permutation::Unchecked{});
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw std::invalid_argument("identity: n must be >= 1");
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  return permutation_from_raw(std::move(map));
}

std::vector<int> Permutation::image_one_based() const {
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = map_[i] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<int>(i);
  return permutation_from_raw(std::move(inv));
}

std::vector<int> Permutation::fixed_points() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] == static_cast<int>(i)) out.push_back(static_cast<int>(i) + 1);
  return out;
}

int Permutation::fixed_point_count() const {
  int count = 0;
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] == static_cast<int>(i)) ++count;
  return count;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n())
    throw std::invalid_argument("compose: permutation sizes differ");
  std::vector<int> out(p.map_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.map_[q.map_[i]];
  return permutation_from_raw(std::move(out));
}

CycleDecomposition cycle_decompose(const Permutation& p) {
  const int n = p.n();
  CycleDecomposition out;
  out.type.n = n;
  std::vector<char> visited(n, 0);
  for (int start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      visited[cur] = 1;
      cycle.push_back(cur + 1);
      cur = p.raw()[cur];
    } while (cur != start);
    if (cycle.size() == 1) {
      ++out.type.m;
    } else {
      out.type.lengths.push_back(static_cast<int>(cycle.size()));
      out.cycles.push_back(std::move(cycle));
    }
  }
  // Scanning from the smallest unvisited element already yields cycles that
  // start at their minimum and are ordered by it; only lengths need sorting.
  std::sort(out.type.lengths.begin(), out.type.lengths.end());
  return out;
}

CycleType cycle_type(const Permutation& p) { return cycle_decompose(p).type; }

bool same_cycle_type(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n())
    throw std::invalid_argument("same_cycle_type: permutation sizes differ");
  return cycle_type(p) == cycle_type(q);
}

Permutation standard_permutation(int m, const std::vector<int>& lengths) {
  if (m < 0) throw std::invalid_argument("standard_permutation: m must be >= 0");
  long long n = m;
  for (int len : lengths) {
    if (len < 2)
      throw std::invalid_argument("standard_permutation: cycle lengths must be >= 2");
    n += len;
  }
  if (n < 1) throw std::invalid_argument("standard_permutation: empty domain");
  std::vector<int> map(static_cast<std::size_t>(n));
  int base = 0;
  for (int len : lengths) {
    for (int t = 0; t < len - 1; ++t) map[base + t] = base + t + 1;
    map[base + len - 1] = base;
    base += len;
  }
  for (int i = base; i < n; ++i) map[i] = i;
  return permutation_from_raw(std::move(map));
}

Permutation standard_permutation(const CycleType& ct) {
  Permutation p = standard_permutation(ct.m, ct.lengths);
  if (p.n() != ct.n)
    throw std::invalid_argument("standard_permutation: cycle type is inconsistent (m + sum lengths != n)");
  return p;
}

Permutation random_with_cycle_type(int m, const std::vector<int>& lengths,
                                   std::uint64_t seed) {
  Permutation base = standard_permutation(m, lengths);
  const int n = base.n();
  PhiloxStream rng(seed, /*stream=*/0);
  std::vector<int> shuffle(n);
  std::iota(shuffle.begin(), shuffle.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(shuffle[i], shuffle[j]);
  }
  // sigma . base . sigma^-1 keeps the cycle type.
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[shuffle[i]] = shuffle[base.raw()[i]];
  return permutation_from_raw(std::move(out));
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > 10)
    throw std::invalid_argument("all_permutations: n must be in [1,10]");
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(permutation_from_raw(map));
  } while (std::next_permutation(map.begin(), map.end()));
  return out;
}

Permutation parse_image_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> image;
  int v;
  while (in >> v) image.push_back(v);
  if (!in.eof()) {
    std::string tok;
    in.clear();
    in >> tok;
    throw std::invalid_argument("permutation image: unexpected token '" + tok + "'");
  }
  if (image.empty()) throw std::invalid_argument("permutation image: no values");
  return Permutation(image);
}

Permutation parse_cycles_text(const std::string& text, int n) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  int max_elem = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(')
      throw std::invalid_argument(std::string("cycle notation: expected '(' at '") +
                                  text.substr(pos, 8) + "'");
    const std::size_t close = text.find(')', pos);
    if (close == std::string::npos)
      throw std::invalid_argument("cycle notation: missing ')'");
    std::istringstream in(text.substr(pos + 1, close - pos - 1));
    std::vector<int> cycle;
    std::string tok;
    while (in >> tok) {
      // allow "1, 2, 5" as well as "1 2 5"
      while (!tok.empty() && tok.back() == ',') tok.pop_back();
      if (tok.empty()) continue;
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1)
        throw std::invalid_argument("cycle notation: bad element '" + tok + "'");
      cycle.push_back(v);
      max_elem = std::max(max_elem, v);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  if (n == 0) n = max_elem;
  if (n < 1 || max_elem > n)
    throw std::invalid_argument("cycle notation: elements exceed domain size");
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  std::vector<char> used(n, 0);
  for (const auto& cycle : cycles) {
    for (int v : cycle) {
      if (used[v - 1])
        throw std::invalid_argument("cycle notation: element " + std::to_string(v) +
                                    " appears twice");
      used[v - 1] = 1;
    }
    if (cycle.size() < 2) continue;  // "(6)" is a fixed point
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t)
      map[cycle[t] - 1] = cycle[t + 1] - 1;
    map[cycle.back() - 1] = cycle.front() - 1;
  }
  return permutation_from_raw(std::move(map));
}

std::string image_text(const Permutation& p) {
  std::ostringstream out;
  for (int i = 1; i <= p.n(); ++i) {
    if (i > 1) out << ' ';
    out << p(i);
  }
  return out.str();
}

std::string cycles_text(const Permutation& p) {
  const CycleDecomposition dec = cycle_decompose(p);
  if (dec.cycles.empty()) return "()";
  std::ostringstream out;
  for (const auto& cycle : dec.cycles) {
    out << '(';
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      if (t) out << ' ';
      out << cycle[t];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace permtyp
