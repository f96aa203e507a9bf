#include "acobs/obstructure.hpp"

#include "acobs/products.hpp"

#include <cmath>
#include <sstream>

namespace acobs {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

void need_frame(std::span<const Vector> frame, std::size_t k, const char* who) {
  if (frame.size() < k) throw DimensionError(std::string(who) + ": frame needs " + std::to_string(k) + " vectors");
}

double dot_g(const PointGeometry& pg, const Vector& x, const Vector& y) { return pg.g(x, y); }

}  // namespace

VForm beta_beta_alpha(const VForm& beta, const VForm& alpha) {
  return act_right(beta, wedge_poly(as_poly(beta), as_poly(alpha)));
}

VForm first_obstructure(const PointGeometry& pg) {
  const VForm ra = act_left(pg.curv.r, pg.a.value);
  const auto a = as_poly(pg.a.value);
  return act_right(ra, wedge_poly(a, a)) + 2.0 * beta_beta_alpha(pg.da.value, pg.a.value) - ra;
}

VForm simplified_obstructure(const PointGeometry& pg) {
  return 0.5 * act_left(pg.curv.r, pg.a.value) + 2.0 * beta_beta_alpha(pg.da.value, pg.a.value);
}

VForm obstructure_direct(const PointGeometry& pg) { return cov_ext_deriv(pg.conn, integrability_jet(pg)); }

Vector cyclic_bb(const PointGeometry& pg, const Vector& x1, const Vector& x2, const Vector& x3) {
  const VForm& b = pg.da.value;
  const Matrix& a = pg.structure();
  return b({b({x1, x2}), a * x3}) + b({b({x2, x3}), a * x1}) - b({b({x1, x3}), a * x2});
}

ExpandedResidual expanded_residual(const PointGeometry& pg, std::span<const Vector> frame) {
  need_frame(frame, 4, "expanded_residual");
  const auto& x = frame;
  const Matrix& a = pg.structure();
  const EndForm& r = pg.curv.r;
  ExpandedResidual out;
  out.u1 = r({x[0], x[1]}) * (a * x[2]) + r({x[1], x[2]}) * (a * x[0]) - r({x[0], x[2]}) * (a * x[1]) +
           2.0 * cyclic_bb(pg, x[0], x[1], x[2]);
  const auto& c = pg.curv;
  out.u2 = c.rm_eval(x[0], x[1], a * x[2], x[3]) + c.rm_eval(x[1], x[2], a * x[0], x[3]) -
           c.rm_eval(x[0], x[2], a * x[1], x[3]) + 2.0 * dot_g(pg, cyclic_bb(pg, x[0], x[1], x[2]), x[3]);
  return out;
}

void check_constant_curvature(const PointGeometry& pg, double c, double variance_gate) {
  const int n = pg.dim();
  std::vector<double> ks;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ks.push_back(sectional(pg.curv, pg.g, Vector::Unit(n, i), Vector::Unit(n, j)));
  double mean = 0.0;
  for (double k : ks) mean += k / static_cast<double>(ks.size());
  double var = 0.0;
  for (double k : ks) var += (k - mean) * (k - mean) / static_cast<double>(ks.size());
  if (var > variance_gate || std::abs(mean - c) > std::sqrt(variance_gate)) {
    std::ostringstream os;
    os << "constant sectional curvature " << c << " not met: coordinate planes give mean " << mean << ", variance "
       << var;
    throw HypothesisError(os.str());
  }
}

ConstCurvResidual const_curv_residuals(const PointGeometry& pg, double c, std::span<const Vector> frame, bool gate) {
  need_frame(frame, 4, "const_curv_residuals");
  if (gate) check_constant_curvature(pg, c);
  const auto& x = frame;
  const Matrix& a = pg.structure();
  auto g = [&](const Vector& u, const Vector& v) { return pg.g(u, v); };
  ConstCurvResidual out;
  const Vector bb = cyclic_bb(pg, x[0], x[1], x[2]);
  out.u3 = c * ((g(x[1], a * x[2]) - g(a * x[1], x[2])) * x[0] - (g(x[0], a * x[2]) - g(a * x[0], x[2])) * x[1] +
                (g(x[0], a * x[1]) - g(a * x[0], x[1])) * x[2]) +
           2.0 * bb;
  out.u4 = g(out.u3, x[3]);
  if (orthogonality_residual(pg.jet.g, a) <= 1e-10) {
    const auto omega = fundamental(pg.g, a);
    out.u5 = c * (omega(x[0], x[2]) * x[1] - omega(x[0], x[1]) * x[2] - omega(x[1], x[2]) * x[0]) + bb;
    out.u6 = g(out.u5, x[3]);
  }
  return out;
}

double PhiAt::at(int i, int j, int k, int l) const { return values[sz(((i * n + j) * n + k) * n + l)]; }

double PhiAt::operator()(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += xy * z(k) * w(l) * at(i, j, k, l);
    }
  return acc;
}

double PhiAt::antisymmetry3_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = at(i, j, k, l);
          worst = std::max({worst, std::abs(v + at(j, i, k, l)), std::abs(v + at(i, k, j, l))});
        }
  return worst;
}

double PhiAt::antisymmetry4_residual() const {
  double worst = antisymmetry3_residual();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) worst = std::max(worst, std::abs(at(i, j, k, l) + at(i, j, l, k)));
  return worst;
}

double PhiAt::a_invariance_residual(const Matrix& a) const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs((*this)(a.col(i), a.col(j), a.col(k), a.col(l)) - at(i, j, k, l)));
  return worst;
}

PhiAt phi(const PointGeometry& pg) {
  const int n = pg.dim();
  PhiAt out{n, std::vector<double>(sz(n * n * n * n), 0.0)};
  const Matrix& g = pg.jet.g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vector p2 = p_squared(pg.da.value, Vector::Unit(n, i), Vector::Unit(n, j), Vector::Unit(n, k));
        const Vector lowered = g * p2;
        for (int l = 0; l < n; ++l) out.values[sz(((i * n + j) * n + k) * n + l)] = lowered(l);
      }
  return out;
}

double phi_omega_residual(const PointGeometry& pg, const PhiAt& phi_at, double c) {
  const int n = pg.dim();
  const auto omega = fundamental(pg.g, pg.structure());
  const ScalarForm oo = wedge_scalar(omega.omega, omega.omega);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = phi_at.at(i, j, k, l) + 0.5 * c * oo.component({i, j, k, l});
          worst = std::max(worst, std::abs(v));
        }
  return worst;
}

PhiViaNabla phi_via_nabla(const PointGeometry& pg, std::span<const Vector> frame) {
  need_frame(frame, 4, "phi_via_nabla");
  const auto& x = frame;
  const VForm& b = pg.da.value;
  auto g = [&](const Vector& u, const Vector& v) { return pg.g(u, v); };
  PhiViaNabla out;
  out.three_term = g(b({x[0], x[1]}), pg.nabla_along(x[2]) * x[3]) - g(b({x[0], x[2]}), pg.nabla_along(x[1]) * x[3]) +
               g(b({x[1], x[2]}), pg.nabla_along(x[0]) * x[3]);
  out.half_sum = 0.5 * (g(b({x[0], x[1]}), b({x[2], x[3]})) - g(b({x[0], x[2]}), b({x[1], x[3]})) +
                        g(b({x[1], x[2]}), b({x[0], x[3]})));
  return out;
}

double aura_residual(const PointGeometry& pg, const Vector& x, const Vector& y, const Vector& z) {
  return pg.g(pg.da.value({x, y}), pg.nabla_along(z) * z);
}

double omega_residual(const PointGeometry& pg, const Vector& x, const Vector& y) {
  const auto omega = fundamental(pg.g, pg.structure());
  return omega(pg.nabla_along(x) * x, pg.nabla_along(y) * y);
}

ScalarForm structure_eq_residual(const PointGeometry& pg, double c) {
  const auto omega = fundamental(pg.g, pg.structure());
  return wedge_g(pg.da.value, pg.da.value, pg.g) + 2.0 * c * wedge_scalar(omega.omega, omega.omega);
}

double norm_formula_residual(const PointGeometry& pg, double c, const Vector& x, const Vector& y) {
  const auto omega = fundamental(pg.g, pg.structure());
  const Vector bxy = pg.nabla_along(x) * y;
  const double gxy = pg.g(x, y);
  const double oxy = omega(x, y);
  const double rhs = pg.g(pg.nabla_along(x) * x, pg.nabla_along(y) * y) -
                     0.5 * c * (oxy * oxy - pg.g.norm2(x) * pg.g.norm2(y) + gxy * gxy);
  return pg.g.norm2(bxy) - rhs;
}

double norm_symmetry(const PointGeometry& pg, const Vector& x, const Vector& y) {
  return std::sqrt(pg.g.norm2(pg.nabla_along(x) * y)) - std::sqrt(pg.g.norm2(pg.nabla_along(y) * x));
}

std::array<Vector, 2> da_xax_variants(const PointGeometry& pg, const Vector& x) {
  const Matrix& a = pg.structure();
  const Vector dax = pg.da.value({x, a * x});
  const Vector bxx = pg.nabla_along(x) * x;
  return {dax + 2.0 * bxx, dax + 2.0 * (a * bxx)};
}

}  // namespace acobs
