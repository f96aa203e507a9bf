#include "acobs/zoo.hpp"

#include "acobs/octonion.hpp"

#include <json.hpp>

#include <cmath>

namespace acobs {

namespace {

constexpr int kDim = 6;

template <class T>
void identity_metric(T* g, int n, const T& scale) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = (i == j) ? scale : T(0.0);
}

template <class T>
void standard_structure(T* a, int n) {
  for (int i = 0; i < n * n; ++i) a[i] = T(0.0);
  for (int i = 0; i + 1 < n; i += 2) {
    a[(i + 1) * n + i] = T(1.0);
    a[i * n + i + 1] = T(-1.0);
  }
}

// Solves m·x = b in place by Gaussian elimination (m symmetric positive-definite).
template <class T, std::size_t N>
void spd_solve(std::array<std::array<T, N>, N> m, std::array<T, N>& b) {
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t i = k + 1; i < N; ++i) {
      const T f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < N; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = N; k-- > 0;) {
    for (std::size_t j = k + 1; j < N; ++j) b[k] -= m[k][j] * b[j];
    b[k] /= m[k][k];
  }
}

// Inverse stereographic map of the radius-r sphere in R^{N+1}:
// F(u) = r (2u, 1 − |u|²) / (1 + |u|²).
template <class T, std::size_t N>
std::array<T, N + 1> stereo(const std::array<T, N>& u, double r) {
  T s = T(0.0);
  for (const auto& v : u) s += v * v;
  const T inv = T(1.0) / (1.0 + s);
  std::array<T, N + 1> p{};
  for (std::size_t i = 0; i < N; ++i) p[i] = 2.0 * r * u[i] * inv;
  p[N] = r * (1.0 - s) * inv;
  return p;
}

// Pullback metric and pushed-back structure X ↦ p̂ × X for a sphere chart.
// The Jacobian comes from one more level of dual numbers.
template <class T, std::size_t N, class Cross>
void sphere_fields(const T* x, T* g, T* a, double r, Cross cross, int stride, int offset) {
  using D = Dual<T>;
  std::array<std::array<T, N + 1>, N> jac{};  // jac[b] = ∂_b F
  std::array<T, N + 1> p{};
  for (std::size_t b = 0; b < N; ++b) {
    std::array<D, N> u{};
    for (std::size_t i = 0; i < N; ++i) u[i] = D(x[i], T(i == b ? 1.0 : 0.0));
    const auto f = stereo<D, N>(u, r);
    for (std::size_t k = 0; k <= N; ++k) {
      jac[b][k] = f[k].eps;
      if (b == 0) p[k] = f[k].re / r;
    }
  }
  std::array<std::array<T, N>, N> gram{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      T v = T(0.0);
      for (std::size_t k = 0; k <= N; ++k) v += jac[i][k] * jac[j][k];
      gram[i][j] = v;
      g[(static_cast<std::size_t>(offset) + i) * static_cast<std::size_t>(stride) + static_cast<std::size_t>(offset) + j] = v;
    }
  for (std::size_t b = 0; b < N; ++b) {
    const auto image = cross(p, jac[b]);
    std::array<T, N> rhs{};
    for (std::size_t i = 0; i < N; ++i) {
      T v = T(0.0);
      for (std::size_t k = 0; k <= N; ++k) v += jac[i][k] * image[k];
      rhs[i] = v;
    }
    spd_solve<T, N>(gram, rhs);
    for (std::size_t i = 0; i < N; ++i)
      a[(static_cast<std::size_t>(offset) + i) * static_cast<std::size_t>(stride) + static_cast<std::size_t>(offset) + b] = rhs[i];
  }
}

struct Sphere6Fields {
  double r;
  double eps;
  template <class T>
  void operator()(const T* x, T* g, T* a) const {
    sphere_fields<T, 6>(x, g, a, r, [](const auto& p, const auto& v) { return octonion::cross(p, v); }, kDim, 0);
    if (eps != 0.0) {
      T s = T(0.0);
      for (int i = 0; i < kDim; ++i) s += x[i] * x[i];
      using std::exp;
      g[0] += eps * exp(-s);
    }
  }
};

Box cube(double lo, double hi) { return Box{std::vector<double>(kDim, lo), std::vector<double>(kDim, hi)}; }

Descriptor described(std::string name, std::map<std::string, double> params = {}) {
  return Descriptor{std::move(name), std::move(params), 0};
}

}  // namespace

std::string Descriptor::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["seed"] = seed;
  return j.dump();
}

Descriptor Descriptor::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Descriptor d;
  d.name = j.at("name").get<std::string>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) d.params[k] = v.get<double>();
  if (j.contains("seed")) d.seed = j.at("seed").get<std::uint64_t>();
  return d;
}

Scenario round_sphere6(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("round_sphere6: radius must be positive");
  Properties props;
  props.curvature = 1.0 / (radius * radius);
  props.orthogonal = true;
  props.nearly_kahler = true;
  return Scenario{described("round_sphere6", {{"r", radius}}),
                  Chart::make("round_sphere6", kDim, Sphere6Fields{radius, 0.0}, cube(-0.6, 0.6)), props,
                  "stereographic S^6 of radius r, octonionic cross-product structure"};
}

Scenario flat_torus6() {
  Properties props;
  props.curvature = 0.0;
  props.integrable = true;
  props.orthogonal = true;
  props.kahler = true;
  auto fields = [](const auto* x, auto* g, auto* a) {
    using T = std::remove_cv_t<std::remove_pointer_t<decltype(g)>>;
    (void)x;
    identity_metric(g, kDim, T(1.0));
    standard_structure(a, kDim);
  };
  return Scenario{described("flat_torus6"), Chart::make("flat_torus6", kDim, fields, cube(0.5, 5.5)), props,
                  "flat torus R^6/Z^6 with the standard complex structure"};
}

Scenario hopf6() {
  Properties props;
  props.integrable = true;
  props.orthogonal = true;
  auto fields = [](const auto* x, auto* g, auto* a) {
    using T = std::remove_cv_t<std::remove_pointer_t<decltype(g)>>;
    T s = T(0.0);
    for (int i = 0; i < kDim; ++i) s += x[i] * x[i];
    identity_metric(g, kDim, T(1.0) / s);
    standard_structure(a, kDim);
  };
  auto shell = [](const Vector& x) {
    const double r = x.norm();
    return r >= 0.5 && r <= 2.0;
  };
  return Scenario{described("hopf6"), Chart::make("hopf6", kDim, fields, cube(-1.2, 1.2), shell), props,
                  "C^3 minus the origin with metric |z|^-2 times Euclidean (R x S^5)"};
}

Scenario product_s2_cubed(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3})
    if (!(r > 0.0)) throw std::invalid_argument("product_s2_cubed: radii must be positive");
  Properties props;
  props.integrable = true;
  props.orthogonal = true;
  props.kahler = true;
  const std::array<double, 3> radii{r1, r2, r3};
  auto fields = [radii](const auto* x, auto* g, auto* a) {
    using T = std::remove_cv_t<std::remove_pointer_t<decltype(g)>>;
    for (int i = 0; i < kDim * kDim; ++i) g[i] = a[i] = T(0.0);
    for (int f = 0; f < 3; ++f)
      sphere_fields<T, 2>(x + 2 * f, g, a, radii[static_cast<std::size_t>(f)],
                          [](const auto& p, const auto& v) { return octonion::cross(p, v); }, kDim, 2 * f);
  };
  return Scenario{described("product_s2_cubed", {{"r1", r1}, {"r2", r2}, {"r3", r3}}),
                  Chart::make("product_s2_cubed", kDim, fields, cube(-0.8, 0.8)), props,
                  "S^2 x S^2 x S^2 with product metric and product complex structure"};
}

Scenario perturbed_sphere6(double eps) {
  Properties props;
  props.nearly_kahler = eps == 0.0;
  props.orthogonal = eps == 0.0;
  if (eps == 0.0) props.curvature = 1.0;
  Chart chart = Chart::make("perturbed_sphere6", kDim, Sphere6Fields{1.0, eps}, cube(-0.6, 0.6));
  // positive-definiteness on the sampling box: g_00 only grows for eps > 0,
  // and for eps < 0 the bump is bounded by |eps|
  const double smallest_g00 = 4.0 / std::pow(1.0 + 6 * 0.36, 2);
  if (eps < 0.0 && -eps >= smallest_g00)
    throw NotPositiveDefinite("perturbed_sphere6: eps too negative, metric loses positive-definiteness");
  return Scenario{described("perturbed_sphere6", {{"eps", eps}}), std::move(chart), props,
                  "round unit S^6 with a Gaussian bump of size eps in g_00"};
}

Scenario averaged(const Scenario& base) {
  auto transform = [](const auto* x, auto* g, auto* a) {
    using T = std::remove_cv_t<std::remove_pointer_t<decltype(g)>>;
    (void)x;
    std::array<T, kDim * kDim> ga{};
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        T v = T(0.0);
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) v += a[k * kDim + i] * g[k * kDim + l] * a[l * kDim + j];
        ga[static_cast<std::size_t>(i * kDim + j)] = v;
      }
    for (int i = 0; i < kDim * kDim; ++i) g[i] = 0.5 * (g[i] + ga[static_cast<std::size_t>(i)]);
  };
  Scenario out = base;
  out.descriptor.params["averaged"] = 1.0;
  out.chart = base.chart.transformed(base.chart.name() + "_averaged", transform);
  out.properties.orthogonal = true;
  out.doc = base.doc + ", metric averaged over A";
  return out;
}

std::vector<std::string> scenario_names() {
  return {"round_sphere6", "flat_torus6", "hopf6", "product_s2_cubed", "perturbed_sphere6"};
}

Scenario make_scenario(const Descriptor& d) {
  auto param = [&](const std::string& key, double fallback) {
    const auto it = d.params.find(key);
    return it == d.params.end() ? fallback : it->second;
  };
  auto known = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : d.params) {
      bool ok = k == "averaged";
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw std::invalid_argument("scenario " + d.name + " has no parameter '" + k + "'");
    }
  };
  Scenario s = [&] {
    if (d.name == "round_sphere6") {
      known({"r"});
      return round_sphere6(param("r", 1.0));
    }
    if (d.name == "flat_torus6") {
      known({});
      return flat_torus6();
    }
    if (d.name == "hopf6") {
      known({});
      return hopf6();
    }
    if (d.name == "product_s2_cubed") {
      known({"r1", "r2", "r3"});
      return product_s2_cubed(param("r1", 1.0), param("r2", 1.0), param("r3", 1.0));
    }
    if (d.name == "perturbed_sphere6") {
      known({"eps"});
      return perturbed_sphere6(param("eps", 0.0));
    }
    throw UnknownScenario("unknown scenario '" + d.name + "'");
  }();
  if (param("averaged", 0.0) != 0.0) s = averaged(s);
  s.descriptor = d;
  return s;
}

}  // namespace acobs
