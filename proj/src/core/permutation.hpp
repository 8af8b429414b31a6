#ifndef PERMTYP_PERMUTATION_HPP
#define PERMTYP_PERMUTATION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace permtyp {

// Bijection on [1,n] stored as an image table. Interfaces are 1-indexed;
// storage is 0-indexed. Immutable after construction.
class Permutation {
 public:
  // image[i-1] = pi(i), 1-indexed values. Throws if not a bijection of [1,n].
  explicit Permutation(const std::vector<int>& image_one_based);

  static Permutation identity(int n);

  int n() const { return static_cast<int>(map_.size()); }

  // pi(i) for 1 <= i <= n.
  int operator()(int i) const { return map_[i - 1] + 1; }

  std::vector<int> image_one_based() const;

  Permutation inverse() const;

  std::vector<int> fixed_points() const;  // ascending, 1-indexed
  int fixed_point_count() const;
  bool is_derangement() const { return fixed_point_count() == 0; }

  bool operator==(const Permutation& other) const { return map_ == other.map_; }

  // result(i) = p(q(i)).
  friend Permutation compose(const Permutation& p, const Permutation& q);

  // z[i] = y[pi(i)].
  template <typename T>
  friend std::vector<T> apply(const Permutation& p, const std::vector<T>& y);

  const std::vector<int>& raw() const { return map_; }  // 0-indexed table

 private:
  struct Unchecked {};
  Permutation(std::vector<int> zero_based, Unchecked) : map_(std::move(zero_based)) {}

  std::vector<int> map_;

  friend Permutation permutation_from_raw(std::vector<int> zero_based);
};

// Internal constructor for already-validated 0-indexed tables.
Permutation permutation_from_raw(std::vector<int> zero_based);

Permutation compose(const Permutation& p, const Permutation& q);

template <typename T>
std::vector<T> apply(const Permutation& p, const std::vector<T>& y) {
  if (y.size() != p.map_.size())
    throw std::invalid_argument("apply: sequence length does not match permutation size");
  std::vector<T> z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[p.map_[i]];
  return z;
}

template <typename T>
std::vector<T> apply_inverse(const Permutation& p, const std::vector<T>& y) {
  return permtyp::apply(p.inverse(), y);  // qualified: ADL would also see std::apply
}

// Conjugacy-class descriptor: m fixed points plus c cycle lengths, each >= 2,
// sorted ascending. Fixed points are never stored as 1-cycles.
struct CycleType {
  int n = 0;
  int m = 0;
  std::vector<int> lengths;

  int cycle_count() const { return static_cast<int>(lengths.size()); }
  bool operator==(const CycleType&) const = default;
};

struct CycleDecomposition {
  // Each cycle starts at its smallest element; cycles sorted by smallest
  // element. pi maps each entry to the next, last back to first.
  std::vector<std::vector<int>> cycles;
  CycleType type;
};

CycleDecomposition cycle_decompose(const Permutation& p);
CycleType cycle_type(const Permutation& p);
bool same_cycle_type(const Permutation& p, const Permutation& q);

// The unique permutation laying down the given cycle lengths over consecutive
// integers, in the order given, with the remaining m points fixed at the end.
// Lengths need not be sorted (each >= 2).
Permutation standard_permutation(int m, const std::vector<int>& lengths);
Permutation standard_permutation(const CycleType& ct);

// Uniformly random permutation with the given cycle type: the standard
// permutation conjugated by a seeded Fisher-Yates shuffle.
Permutation random_with_cycle_type(int m, const std::vector<int>& lengths,
                                   std::uint64_t seed);

// All n! permutations in lexicographic image order. Guarded to n <= 10.
std::vector<Permutation> all_permutations(int n);

// Text forms. Image: "5 1 4 3 2". Cycles: "(1 2 5)(3 4)" with fixed points
// omitted; n of a cycle form is the max element unless given explicitly.
Permutation parse_image_text(const std::string& text);
Permutation parse_cycles_text(const std::string& text, int n = 0);
std::string image_text(const Permutation& p);
std::string cycles_text(const Permutation& p);

}  // namespace permtyp

#endif
