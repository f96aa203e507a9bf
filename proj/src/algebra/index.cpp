#include "acobs/index.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace acobs::index {

namespace {

int inversion_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<Permutation> build_permutations(int m) {
  std::vector<Permutation> out;
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back({p, inversion_sign(p)});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

const std::vector<Permutation>& permutations(int m) {
  static const auto table = [] {
    std::array<std::vector<Permutation>, kMaxPermutationLength + 1> t;
    for (int i = 0; i <= kMaxPermutationLength; ++i) t[static_cast<std::size_t>(i)] = build_permutations(i);
    return t;
  }();
  if (m < 0 || m > kMaxPermutationLength) throw std::out_of_range("permutation length out of range");
  return table[static_cast<std::size_t>(m)];
}

const std::vector<Permutation>& shuffles(int k, int m) {
  if (k < 0 || k > m || m > kMaxPermutationLength) throw std::out_of_range("shuffle shape out of range");
  static const auto table = [] {
    std::array<std::array<std::vector<Permutation>, kMaxPermutationLength + 1>, kMaxPermutationLength + 1> t;
    for (int mm = 0; mm <= kMaxPermutationLength; ++mm) {
      for (int kk = 0; kk <= mm; ++kk) {
        auto& bucket = t[static_cast<std::size_t>(mm)][static_cast<std::size_t>(kk)];
        for (const auto& p : permutations(mm)) {
          const bool head = std::is_sorted(p.map.begin(), p.map.begin() + kk);
          const bool tail = std::is_sorted(p.map.begin() + kk, p.map.end());
          if (head && tail) bucket.push_back(p);
        }
      }
    }
    return t;
  }();
  return table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

std::size_t power(int base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

double factorial(int m) {
  double r = 1.0;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

std::size_t flat_offset(std::span<const int> idx, int n) {
  std::size_t off = 0;
  for (int i : idx) off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  return off;
}

int sort_with_sign(std::span<int> idx) {
  int sign = 1;
  // insertion sort keeps the parity bookkeeping obvious
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

const std::vector<std::vector<int>>& increasing_tuples(int n, int k) {
  if (n < 0 || n > kMaxDim || k < 0) throw std::out_of_range("tuple shape out of range");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, k});
  if (inserted && k <= n) {
    std::vector<int> t(static_cast<std::size_t>(k));
    std::iota(t.begin(), t.end(), 0);
    while (true) {
      it->second.push_back(t);
      int pos = k - 1;
      while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++t[static_cast<std::size_t>(pos)];
      for (int r = pos + 1; r < k; ++r) t[static_cast<std::size_t>(r)] = t[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return it->second;
}

}  // namespace acobs::index
