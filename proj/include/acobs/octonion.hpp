#pragma once

#include <array>

namespace acobs::octonion {

// Imaginary units e1..e7 multiply along the lines of the Fano plane
// (i, i+1, i+3) mod 7; each line is cyclically oriented, e_a e_b = e_c.
// Stored 0-based.
inline constexpr std::array<std::array<int, 3>, 7> kLines{{
    {0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2},
}};

// ε_abc: +1 on oriented lines, −1 on odd reorderings, 0 otherwise.
int structure_constant(int a, int b, int c);

// x × y = Im(x y) for imaginary octonions.
template <class T>
std::array<T, 7> cross(const std::array<T, 7>& x, const std::array<T, 7>& y) {
  std::array<T, 7> out{};
  for (auto& v : out) v = T(0.0);
  for (const auto& l : kLines)
    for (int r = 0; r < 3; ++r) {
      const int a = l[static_cast<std::size_t>(r)];
      const int b = l[static_cast<std::size_t>((r + 1) % 3)];
      const int c = l[static_cast<std::size_t>((r + 2) % 3)];
      out[static_cast<std::size_t>(c)] += x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)] -
                                          x[static_cast<std::size_t>(b)] * y[static_cast<std::size_t>(a)];
    }
  return out;
}

template <class T>
std::array<T, 3> cross(const std::array<T, 3>& x, const std::array<T, 3>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

}  // namespace acobs::octonion
