#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Multi-index bookkeeping shared by the dense form storage and the product
// kernels. Index tuples are small (length ≤ 8) so plain vectors suffice.
namespace acobs::index {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxPermutationLength = 8;

struct Permutation {
  std::vector<int> map;  // position r receives element map[r]
  int sign = 1;
};

// All permutations of {0,…,m−1} with their signs, m ≤ kMaxPermutationLength.
const std::vector<Permutation>& permutations(int m);

// (k, m−k) shuffles: the first k positions of `map` are increasing, as are the
// remaining m−k.
const std::vector<Permutation>& shuffles(int k, int m);

std::size_t power(int base, int exponent);
double factorial(int m);

// Row-major offset of an index tuple in [0,n)^k.
std::size_t flat_offset(std::span<const int> idx, int n);

// Sorts `idx` ascending and returns the sign of the sorting permutation, or 0
// when an index repeats.
int sort_with_sign(std::span<int> idx);

// All strictly increasing k-tuples from [0,n), in lexicographic order.
const std::vector<std::vector<int>>& increasing_tuples(int n, int k);

// Calls f(tuple) for every tuple in [0,n)^k.
template <class F>
void for_each_tuple(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  if (k == 0) {
    f(std::span<const int>(idx));
    return;
  }
  while (true) {
    f(std::span<const int>(idx));
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace acobs::index
