#include "acobs/chart.hpp"

#include <stdexcept>

namespace acobs {

bool Chart::accepts(const Vector& x) const {
  if (x.size() != dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (x(i) < sampling_.lo[static_cast<std::size_t>(i)] || x(i) > sampling_.hi[static_cast<std::size_t>(i)]) return false;
  return !accept_ || accept_(x);
}

Vector Chart::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vector x(dim_);
    for (int i = 0; i < dim_; ++i) {
      const auto k = static_cast<std::size_t>(i);
      x(i) = sampling_.lo[k] + (sampling_.hi[k] - sampling_.lo[k]) * unit(rng);
    }
    if (accepts(x)) return x;
  }
  throw std::runtime_error("chart " + name_ + ": sampling box rejects every draw");
}

Matrix Chart::metric(const Vector& x) const {
  Matrix g(dim_, dim_);
  std::vector<double> gs(static_cast<std::size_t>(dim_ * dim_)), as(gs.size());
  eval(x.data(), gs.data(), as.data());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g(i, j) = gs[static_cast<std::size_t>(i * dim_ + j)];
  return g;
}

Matrix Chart::structure(const Vector& x) const {
  Matrix a(dim_, dim_);
  std::vector<double> gs(static_cast<std::size_t>(dim_ * dim_)), as(gs.size());
  eval(x.data(), gs.data(), as.data());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) a(i, j) = as[static_cast<std::size_t>(i * dim_ + j)];
  return a;
}

}  // namespace acobs
