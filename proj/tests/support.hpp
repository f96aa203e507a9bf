#pragma once

#include "acobs/forms.hpp"

#include <random>

namespace testing_support {

using acobs::Matrix;
using acobs::Vector;

using Rng = std::mt19937_64;

inline double gauss(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Vector random_vector(int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

inline std::vector<Vector> random_vectors(int n, int count, Rng& rng) {
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) out.push_back(random_vector(n, rng));
  return out;
}

template <class Form>
Form fill_random(Form f, Rng& rng) {
  if (f.storage().vanishes_identically()) return f;
  for (double& v : f.storage().raw()) v = gauss(rng);
  f.antisymmetrize();
  return f;
}

inline acobs::VForm random_vform(int n, int k, Rng& rng) { return fill_random(acobs::VForm(n, k), rng); }
inline acobs::EndForm random_endform(int n, int k, Rng& rng) { return fill_random(acobs::EndForm(n, k), rng); }
inline acobs::ScalarForm random_scalarform(int n, int k, Rng& rng) { return fill_random(acobs::ScalarForm(n, k), rng); }
inline acobs::PolyForm random_polyform(int n, int p, int q, Rng& rng) { return fill_random(acobs::PolyForm(n, p, q), rng); }

inline Matrix random_matrix(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  return m;
}

inline Matrix random_spd(int n, Rng& rng) {
  const Matrix b = random_matrix(n, rng);
  return b * b.transpose() + n * Matrix::Identity(n, n);
}

// Block-diagonal e_{2i} ↦ e_{2i+1}, e_{2i+1} ↦ −e_{2i}.
inline Matrix standard_j(int n) {
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; i += 2) {
    j(i + 1, i) = 1.0;
    j(i, i + 1) = -1.0;
  }
  return j;
}

// S J S⁻¹ with a well-conditioned random S.
inline Matrix random_acs(int n, Rng& rng) {
  const Matrix s = Matrix::Identity(n, n) + 0.3 * random_matrix(n, rng);
  return s * standard_j(n) * s.inverse();
}

// Random End-valued 2-form obeying R(X,Y)W + R(Y,W)X + R(W,X)Y = 0:
// subtract a third of the cyclic sum over (input, form, form) slots.
inline acobs::EndForm random_bianchi_curvature(int n, Rng& rng) {
  const acobs::EndForm t = random_endform(n, 2, rng);
  acobs::EndForm r(n, 2);
  auto comp = [&](const acobs::EndForm& f, int a, int b, int i, int j) { return f.component({i, j})(a, b); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double cyc = comp(t, a, b, i, j) + comp(t, a, i, j, b) + comp(t, a, j, b, i);
          m(a, b) = comp(t, a, b, i, j) - cyc / 3.0;
        }
      r.set(std::vector<int>{i, j}, m);
    }
  return r;
}

inline double bianchi_defect(const acobs::EndForm& r) {
  const int n = r.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vector v = r.component({a, b}) * Vector::Unit(n, c) + r.component({b, c}) * Vector::Unit(n, a) +
                         r.component({c, a}) * Vector::Unit(n, b);
        worst = std::max(worst, v.cwiseAbs().maxCoeff());
      }
  return worst;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace testing_support
