#include "doctest.h"

#include "acobs/acx.hpp"
#include "acobs/octonion.hpp"
#include "acobs/suite.hpp"
#include "acobs/zoo.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace acobs;
using namespace testing_support;

TEST_CASE("octonion cross product on R^7") {
  using V7 = std::array<double, 7>;
  auto dot = [](const V7& u, const V7& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 7; ++i) acc += u[i] * v[i];
    return acc;
  };
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    V7 u, v;
    for (auto& c : u) c = gauss(rng);
    for (auto& c : v) c = gauss(rng);
    const V7 w = octonion::cross(u, v);
    CHECK(std::abs(dot(w, u)) <= 1e-12);
    CHECK(std::abs(dot(w, v)) <= 1e-12);
    const double expect = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    CHECK(dot(w, w) == doctest::Approx(expect).epsilon(1e-12));
    // p × (p × X) = −X for unit p and X ⟂ p
    V7 p = u, x = v;
    const double norm = std::sqrt(dot(u, u));
    for (auto& c : p) c /= norm;
    const double along = dot(x, p);
    for (std::size_t i = 0; i < 7; ++i) x[i] -= along * p[i];
    const V7 back = octonion::cross(p, octonion::cross(p, x));
    for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(back[i] + x[i]) <= 1e-12);
  }
  CHECK(octonion::structure_constant(0, 1, 3) == 1);
  CHECK(octonion::structure_constant(1, 0, 3) == -1);
  CHECK(octonion::structure_constant(0, 1, 2) == 0);
}

TEST_CASE("declared properties are re-derived numerically") {
  for (const auto& s : all_scenarios()) {
    CAPTURE(s.name());
    for (const auto& x : sample_points(s, 12, 2)) {
      const auto pg = evaluate(s.chart, x);
      CHECK(acs_square_residual(pg.structure()) <= 1e-10);
      const double orth = orthogonality_residual(pg.jet.g, pg.structure());
      if (s.properties.orthogonal)
        CHECK(orth <= 1e-10);
      else
        CHECK(orth > 1e-6);
      const double nij = nijenhuis(pg.jet).max_abs();
      if (s.properties.integrable)
        CHECK(nij <= 1e-8);
      else
        CHECK(nij > 0.1);
      const auto cls = classify(pg);
      if (s.properties.kahler) CHECK(cls.label == AcsClass::kahler);
      if (s.properties.nearly_kahler) CHECK(cls.label == AcsClass::nearly_kahler);
      if (!s.properties.kahler) CHECK(cls.label != AcsClass::kahler);
      if (s.properties.curvature) {
        CHECK_NOTHROW(check_constant_curvature(pg, *s.properties.curvature));
      } else {
        std::vector<double> ks;
        for (int i = 0; i < 6; ++i)
          for (int j = i + 1; j < 6; ++j) ks.push_back(sectional(pg.curv, pg.g, Vector::Unit(6, i), Vector::Unit(6, j)));
        const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
        CHECK(*hi - *lo > 1e-3);
      }
    }
  }
}

TEST_CASE("Hopf scenario: d∇A is not small near |z| = 1") {
  const auto hopf = hopf6();
  Vector x = Vector::Zero(6);
  x(0) = 1.0;
  CHECK(evaluate(hopf.chart, x).da.value.max_abs() > 0.01);
  Vector origin = Vector::Zero(6);
  CHECK_FALSE(hopf.chart.accepts(origin));
}

TEST_CASE("product of spheres: mixed planes flat, factor planes 1/r^2") {
  const auto s = product_s2_cubed(1.0, 1.5, 0.7);
  const auto pg = evaluate(s.chart, sample_points(s, 1, 3)[0]);
  const double r[] = {1.0, 1.5, 0.7};
  for (int f = 0; f < 3; ++f) {
    const double k = sectional(pg.curv, pg.g, Vector::Unit(6, 2 * f), Vector::Unit(6, 2 * f + 1));
    CHECK(k == doctest::Approx(1.0 / (r[f] * r[f])).epsilon(1e-8));
  }
  CHECK(std::abs(sectional(pg.curv, pg.g, Vector::Unit(6, 0), Vector::Unit(6, 3))) <= 1e-10);
}

TEST_CASE("descriptors round-trip bit-exactly") {
  Descriptor d{"perturbed_sphere6", {{"eps", 0.1 + 0.2}, {"averaged", 1.0}}, 0xdeadbeefcafeULL};
  const std::string text = d.to_json();
  const Descriptor back = Descriptor::from_json(text);
  CHECK(back == d);
  CHECK(back.params.at("eps") == 0.1 + 0.2);
  CHECK(back.to_json() == text);
  for (const auto& s : all_scenarios()) CHECK(Descriptor::from_json(s.descriptor.to_json()) == s.descriptor);
}

TEST_CASE("make_scenario validates names and parameters") {
  CHECK(make_scenario({"round_sphere6", {{"r", 2.0}}, 0}).properties.curvature == doctest::Approx(0.25));
  CHECK_THROWS_AS(make_scenario({"cp3", {}, 0}), UnknownScenario);
  CHECK_THROWS_AS(make_scenario({"hopf6", {{"r", 1.0}}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario({"round_sphere6", {{"r", -1.0}}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(perturbed_sphere6(-5.0), NotPositiveDefinite);
  const auto names = scenario_names();
  CHECK(std::find(names.begin(), names.end(), "hopf6") != names.end());
}

TEST_CASE("eps = 0 reproduces the round sphere") {
  const auto a = round_sphere6(1.0), b = perturbed_sphere6(0.0);
  CHECK(b.properties.orthogonal);
  CHECK(b.properties.curvature == 1.0);
  SuiteConfig cfg;
  cfg.samples = 3;
  cfg.threads = 1;
  const auto ra = run_suite(a, cfg), rb = run_suite(b, cfg);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CAPTURE(ra[i].identity);
    if (std::isnan(ra[i].residual))
      CHECK(std::isnan(rb[i].residual));
    else
      CHECK(ra[i].residual == rb[i].residual);
    CHECK(ra[i].cls == rb[i].cls);
  }
}

TEST_CASE("averaging: orthogonal A is a fixed point, and the average makes A orthogonal") {
  for (const auto& s : {round_sphere6(1.0), hopf6(), flat_torus6()})
    for (const auto& x : sample_points(s, 5, 4)) {
      const Matrix g = s.chart.metric(x);
      CHECK((averaged(s).chart.metric(x) - g).cwiseAbs().maxCoeff() <= 1e-14);
    }
  const auto bent = perturbed_sphere6(0.3);
  const auto avg = averaged(bent);
  CHECK(avg.properties.orthogonal);
  CHECK(avg.descriptor.params.at("averaged") == 1.0);
  for (const auto& x : sample_points(bent, 5, 5)) {
    CHECK(orthogonality_residual(bent.chart.metric(x), bent.chart.structure(x)) > 1e-3);
    CHECK(orthogonality_residual(avg.chart.metric(x), avg.chart.structure(x)) <= 1e-12);
  }
}
