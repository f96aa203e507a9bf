#include "doctest.h"

#include "acobs/index.hpp"
#include "acobs/products.hpp"
#include "algebra_sweeps.hpp"
#include "oracle.hpp"
#include "support.hpp"

#include <functional>

using namespace acobs;
using namespace testing_support;

namespace {

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("exhaustive basis inputs match the permutation oracle for n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(algebra_sweeps::exhaustive_worst(n) <= kTol);
  }
}

TEST_CASE("random inputs in dimensions 6 and 7 match the oracle") {
  for (int n : {6, 7}) {
    CAPTURE(n);
    const auto dev = algebra_sweeps::random_worst(n, 100, 20240607 + n);
    CHECK(dev.comparisons >= 600);
    CHECK(dev.relative <= kTol);
  }
}

TEST_CASE("graded commutator of End-valued 1-forms") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_endform(3, 1, rng);
    const auto b = random_endform(3, 1, rng);
    const auto xs = random_vectors(3, 2, rng);
    const Matrix ax = a({xs[0]}), ay = a({xs[1]}), bx = b({xs[0]}), by = b({xs[1]});
    const Matrix lhs = (wedge_end(a, b) + wedge_end(b, a))({xs[0], xs[1]});
    const Matrix rhs = (ax * by - by * ax) - (ay * bx - bx * ay);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= kTol);
    CHECK((wedge_end(a, b)({xs[0], xs[1]}) - oracle::wedge_end(a, b, xs)).cwiseAbs().maxCoeff() <= kTol);
    CHECK((wedge_end(b, a)({xs[0], xs[1]}) - oracle::wedge_end(b, a, xs)).cwiseAbs().maxCoeff() <= kTol);
  }
}

TEST_CASE("A∧A on the standard complex plane") {
  const auto a = as_poly(VForm::from_matrix(standard_j(2)));
  const auto aa = wedge_poly(a, a);
  CHECK(aa.degree() == 2);
  CHECK(aa.poly_degree() == 2);
  CHECK(aa.component(std::vector<int>{0, 1}).component({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("(A∧A)(X,Y) = A(X)∧A(Y)") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix am = random_matrix(6, rng);
    const auto a = as_poly(VForm::from_matrix(am));
    const auto x = random_vector(6, rng), y = random_vector(6, rng);
    const std::vector<Vector> pair{am * x, am * y};
    CHECK((wedge_poly(a, a)({x, y}) - Multivector::wedge_of(pair)).max_abs() <= 1e-11);
  }
}

TEST_CASE("sign rule for vector-valued forms: γ∧θ + (−1)^{ik} θ∧γ = 0") {
  Rng rng(8);
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k) {
      const auto g = as_poly(random_vform(6, i, rng));
      const auto t = as_poly(random_vform(6, k, rng));
      const double sign = ((i * k) % 2 == 0) ? 1.0 : -1.0;
      CHECK((wedge_poly(g, t) + sign * wedge_poly(t, g)).max_abs() <= kTol);
    }
}

TEST_CASE("R∧A is totally antisymmetric and matches the oracle") {
  Rng rng(17);
  const auto r = random_bianchi_curvature(3, rng);
  CHECK(bianchi_defect(r) <= kTol);
  const auto a = VForm::from_matrix(random_acs(3 + 1, rng).topLeftCorner(3, 3));
  const auto ra = act_left(r, a);
  CHECK(ra.antisymmetry_residual() <= kTol);
  const auto xs = random_vectors(3, 3, rng);
  CHECK((ra({xs[0], xs[1], xs[2]}) - oracle::act_left(r, a, xs)).cwiseAbs().maxCoeff() <= kTol);
  // explicit three-term expansion
  const Vector expanded = r({xs[0], xs[1]}) * a({xs[2]}) + r({xs[1], xs[2]}) * a({xs[0]}) - r({xs[0], xs[2]}) * a({xs[1]});
  CHECK((ra({xs[0], xs[1], xs[2]}) - expanded).cwiseAbs().maxCoeff() <= kTol);
}

TEST_CASE("right action by A∧A substitutes A into the last slots") {
  Rng rng(21);
  const Matrix am = random_acs(6, rng);
  const auto a = VForm::from_matrix(am);
  const auto aa = wedge_poly(as_poly(a), as_poly(a));
  const auto rho = random_vform(6, 2, rng);
  const auto x = random_vector(6, rng), y = random_vector(6, rng);
  CHECK((act_right(rho, aa)({x, y}) - rho({am * x, am * y})).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("right action with s < j is the zero form") {
  Rng rng(22);
  const auto rho = random_vform(6, 1, rng);
  const auto aa = random_polyform(6, 2, 2, rng);
  const auto out = act_right(rho, aa);
  CHECK(out.max_abs() == 0.0);
  CHECK(out.degree() == 1);
}

TEST_CASE("β∧(β∧α) closed form") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto beta = random_vform(6, 2, rng);
    const auto alpha = random_vform(6, 1, rng);
    const auto lhs = act_right(beta, wedge_poly(as_poly(beta), as_poly(alpha)));
    const auto xs = random_vectors(6, 3, rng);
    const Vector rhs = 0.5 * (beta({beta({xs[0], xs[1]}), alpha({xs[2]})}) + beta({beta({xs[1], xs[2]}), alpha({xs[0]})}) -
                              beta({beta({xs[0], xs[2]}), alpha({xs[1]})}));
    CHECK((lhs({xs[0], xs[1], xs[2]}) - rhs).cwiseAbs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("wedge_g: zero, four-term expansion, symmetry") {
  Rng rng(31);
  const InnerProduct g(random_spd(6, rng));
  const auto b = random_vform(6, 2, rng);
  CHECK(wedge_g(VForm(6, 2), b, g).max_abs() == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_vform(6, 2, rng);
    const auto q = random_vform(6, 2, rng);
    const auto xs = random_vectors(6, 4, rng);
    auto pv = [&](int i, int j) { return p({xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]}); };
    const double expansion = 2.0 * (g(pv(0, 1), pv(2, 3)) - g(pv(0, 2), pv(1, 3)) + g(pv(1, 2), pv(0, 3)));
    CHECK(std::abs(wedge_g(p, p, g)({xs[0], xs[1], xs[2], xs[3]}) - expansion) <= 1e-10);
    CHECK((wedge_g(p, q, g) - wedge_g(q, p, g)).max_abs() <= kTol);
  }
}

TEST_CASE("wedge_scalar: decomposable squares vanish, e12+e34 squares to 2") {
  ScalarForm w(4, 2);
  w.set({0, 1}, 1.0);
  CHECK(wedge_scalar(w, w).max_abs() == 0.0);
  w.set({2, 3}, 1.0);
  CHECK(wedge_scalar(w, w).component({0, 1, 2, 3}) == doctest::Approx(2.0));
}

TEST_CASE("Ω∧Ω expansion for the standard Kähler form") {
  Rng rng(41);
  const Matrix j = standard_j(6);
  ScalarForm omega(6, 2);
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) omega.set({a, b}, (j * Vector::Unit(6, a)).dot(Vector::Unit(6, b)));
  const auto oo = wedge_scalar(omega, omega);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = random_vectors(6, 4, rng);
    auto o = [&](int a, int b) { return omega({xs[static_cast<std::size_t>(a)], xs[static_cast<std::size_t>(b)]}); };
    const double expected = 2.0 * (o(0, 1) * o(2, 3) - o(0, 2) * o(1, 3) + o(1, 2) * o(0, 3));
    CHECK(std::abs(oo({xs[0], xs[1], xs[2], xs[3]}) - expected) <= 1e-11);
  }
}

TEST_CASE("p_extend") {
  Rng rng(51);
  const auto p = random_vform(6, 2, rng);
  SUBCASE("zero P gives zero") {
    const auto z = random_vectors(6, 3, rng);
    CHECK(p_extend(VForm(6, 2), Multivector::wedge_of(z)).max_abs() == 0.0);
  }
  SUBCASE("three-term display for k = 2") {
    for (int trial = 0; trial < 20; ++trial) {
      const auto z = random_vectors(6, 3, rng);
      auto pw = [&](int a, int b, int c) {
        const std::vector<Vector> two{p({z[static_cast<std::size_t>(a)], z[static_cast<std::size_t>(b)]}), z[static_cast<std::size_t>(c)]};
        return Multivector::wedge_of(two);
      };
      const auto expected = pw(0, 1, 2) - pw(0, 2, 1) + pw(1, 2, 0);
      CHECK((p_extend(p, Multivector::wedge_of(z)) - expected).max_abs() <= 1e-11);
    }
  }
  SUBCASE("antisymmetric under ζ₁ ↔ ζ₂") {
    const auto z = random_vectors(6, 4, rng);
    const std::vector<Vector> swapped{z[1], z[0], z[2], z[3]};
    CHECK((p_extend(p, Multivector::wedge_of(z)) + p_extend(p, Multivector::wedge_of(swapped))).max_abs() <= 1e-11);
  }
  SUBCASE("matches the defining sum on decomposables") {
    for (int top = 2; top <= 4; ++top) {
      const auto z = random_vectors(6, top, rng);
      const auto got = p_extend(p, Multivector::wedge_of(z));
      const auto want = oracle::p_extend(p, z);
      double worst = 0.0;
      for (std::size_t v = 0; v < want.size(); ++v) worst = std::max(worst, std::abs(got.data()[v] - want[v]));
      CHECK(worst <= 1e-11);
    }
  }
}

TEST_CASE("p_squared equals p_extend applied twice") {
  Rng rng(61);
  const auto x = random_vector(6, rng), y = random_vector(6, rng), z = random_vector(6, rng);
  CHECK(p_squared(VForm(6, 2), x, y, z).cwiseAbs().maxCoeff() == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_vform(6, 2, rng);
    const std::vector<Vector> zs{x, y, z};
    const auto twice = p_extend(p, p_extend(p, Multivector::wedge_of(zs)));
    CHECK(twice.poly_degree() == 1);
    Vector tv(6);
    for (int a = 0; a < 6; ++a) tv(a) = twice.component({a});
    CHECK((p_squared(p, x, y, z) - tv).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

// Splitting 3-forms by A-type, right action by A∧A is +1 on the (2,1)+(1,2)
// part and −3 on the (3,0)+(0,3) part; Bianchi kills the (3,0) part of R∧A.
TEST_CASE("(R∧A)∧(A∧A) = R∧A for Bianchi-symmetric R and almost-complex A") {
  Rng rng(71);
  for (int n : {4, 6}) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto r = random_bianchi_curvature(n, rng);
      const auto a = VForm::from_matrix(random_acs(n, rng));
      const auto ra = act_left(r, a);
      const auto aa = wedge_poly(as_poly(a), as_poly(a));
      worst = std::max(worst, (act_right(ra, aa) - ra).max_abs() / std::max(1.0, ra.max_abs()));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("right action by A∧A on 3-forms of pure A-type") {
  // (3,0)+(0,3) eigenvalue −3: ρ = Re(dz1∧dz2∧dz3)·v on the standard C³
  const int n = 6;
  const Matrix j = standard_j(n);
  const auto aa = wedge_poly(as_poly(VForm::from_matrix(j)), as_poly(VForm::from_matrix(j)));
  Rng rng(72);
  const Vector v = random_vector(n, rng);
  VForm rho(n, 3);
  // dz_k = e^{2k} + i e^{2k+1}; real part of the triple product
  for (int m = 0; m < 8; ++m) {
    const int imag = __builtin_popcount(static_cast<unsigned>(m));
    if (imag % 2 == 1) continue;
    const double sign = (imag % 4 == 0) ? 1.0 : -1.0;
    std::vector<int> idx;
    for (int k = 0; k < 3; ++k) idx.push_back(2 * k + ((m >> k) & 1));
    rho.set(idx, sign * v);
  }
  CHECK((act_right(rho, aa) + 3.0 * rho).max_abs() <= 1e-12);
  // (2,1) type: Re(dz1∧dz2∧dz̄3)·v
  VForm mixed(n, 3);
  for (int m = 0; m < 8; ++m) {
    const int imag = __builtin_popcount(static_cast<unsigned>(m));
    if (imag % 2 == 1) continue;
    const bool conj = (m >> 2) & 1;
    const double sign = ((imag % 4 == 0) ? 1.0 : -1.0) * (conj ? -1.0 : 1.0);
    std::vector<int> idx;
    for (int k = 0; k < 3; ++k) idx.push_back(2 * k + ((m >> k) & 1));
    mixed.set(idx, sign * v);
  }
  CHECK((act_right(mixed, aa) - mixed).max_abs() <= 1e-12);
}

TEST_CASE("degree overflow yields the zero form; mismatched dimensions throw") {
  Rng rng(81);
  const auto a = random_endform(3, 2, rng);
  const auto b = random_endform(3, 2, rng);
  const auto ab = wedge_end(a, b);
  CHECK(ab.degree() == 4);
  CHECK(ab.max_abs() == 0.0);
  CHECK(ab.storage().vanishes_identically());
  CHECK_THROWS_AS(wedge_end(random_endform(3, 1, rng), random_endform(4, 1, rng)), DimensionError);
  CHECK_THROWS_AS(act_left(random_endform(3, 1, rng), random_vform(4, 1, rng)), DimensionError);
  CHECK_THROWS_AS(wedge_g(random_vform(3, 1, rng), random_vform(3, 1, rng), InnerProduct(Matrix::Identity(4, 4))),
                  DimensionError);
}

TEST_CASE("inner products must be symmetric positive-definite") {
  Matrix m = Matrix::Identity(3, 3);
  m(2, 2) = -1.0;
  CHECK_THROWS_AS(InnerProduct{m}, NotPositiveDefinite);
  Matrix asym = Matrix::Identity(3, 3);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(InnerProduct{asym}, NotPositiveDefinite);
  CHECK_NOTHROW(InnerProduct{Matrix::Identity(3, 3)});
}

TEST_CASE("stored forms are exactly antisymmetric") {
  Rng rng(91);
  for (int k = 0; k <= 5; ++k) {
    CHECK(random_vform(6, k, rng).antisymmetry_residual() <= kTol);
    CHECK(random_polyform(5, k % 3, 2, rng).antisymmetry_residual() <= kTol);
  }
}
