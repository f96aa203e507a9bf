#include "acobs/octonion.hpp"

namespace acobs::octonion {

int structure_constant(int a, int b, int c) {
  for (const auto& l : kLines)
    for (int r = 0; r < 3; ++r) {
      const int p = l[static_cast<std::size_t>(r)];
      const int q = l[static_cast<std::size_t>((r + 1) % 3)];
      const int s = l[static_cast<std::size_t>((r + 2) % 3)];
      if (a == p && b == q && c == s) return 1;
      if (a == q && b == p && c == s) return -1;
    }
  return 0;
}

}  // namespace acobs::octonion
