#include "acobs/acx.hpp"

#include "acobs/products.hpp"

namespace acobs {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

PolyForm a_wedge_a(const Matrix& a) {
  const auto p = as_poly(VForm::from_matrix(a));
  return wedge_poly(p, p);
}

}  // namespace

double acs_square_residual(const Matrix& a) {
  return (a * a + Matrix::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
}

double orthogonality_residual(const Matrix& g, const Matrix& a) {
  return (a.transpose() * g * a - g).cwiseAbs().maxCoeff();
}

VForm nijenhuis(const FieldJet& jet) {
  const int n = jet.dim();
  VForm out(n, 2);
  if (n < 2) return out;
  const Matrix& a = jet.a;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // [A∂_i, A∂_j] − A([A∂_i, ∂_j] + [∂_i, A∂_j])
      Vector v = Vector::Zero(n);
      for (int m = 0; m < n; ++m) v += a(m, i) * jet.da[sz(m)].col(j) - a(m, j) * jet.da[sz(m)].col(i);
      v -= a * (jet.da[sz(i)].col(j) - jet.da[sz(j)].col(i));
      out.set(std::vector<int>{i, j}, v);
    }
  return out;
}

VForm integrability_form(const PointGeometry& pg) {
  return act_right(pg.da.value, a_wedge_a(pg.structure())) - pg.da.value;
}

VFormJet integrability_jet(const PointGeometry& pg) {
  const int n = pg.dim();
  const auto a = as_poly(pg.a.value);
  const PolyForm aa = wedge_poly(a, a);
  VFormJet out{act_right(pg.da.value, aa) - pg.da.value, {}};
  for (int l = 0; l < n; ++l) {
    const auto da = as_poly(pg.a.partials[sz(l)]);
    const PolyForm daa = wedge_poly(da, a) + wedge_poly(a, da);
    const VForm& dbeta = pg.da.partials[sz(l)];
    out.partials.push_back(act_right(dbeta, aa) + act_right(pg.da.value, daa) - dbeta);
  }
  return out;
}

double cross_check_NI(const PointGeometry& pg) {
  const int n = pg.dim();
  const VForm i_form = integrability_form(pg);
  const VForm nij = nijenhuis(pg.jet);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst, (i_form.component({i, j}) + pg.structure() * nij.component({i, j})).cwiseAbs().maxCoeff());
  return worst;
}

double a_invariance_defect(const VForm& beta, const Matrix& a) {
  const int n = beta.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst, (beta({a.col(i), a.col(j)}) - beta.component({i, j})).cwiseAbs().maxCoeff());
  return worst;
}

FundamentalForm fundamental(const InnerProduct& g, const Matrix& a, double tol) {
  const double defect = orthogonality_residual(g.matrix(), a);
  if (defect > tol)
    throw HypothesisError("fundamental form needs a g-orthogonal A (|AᵀgA − g| = " + std::to_string(defect) + ")");
  const int n = g.dim();
  const Matrix m = a.transpose() * g.matrix();  // (i, j) = g(Ae_i, e_j)
  ScalarForm omega(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) omega.set({i, j}, 0.5 * (m(i, j) - m(j, i)));
  return FundamentalForm{std::move(omega)};
}

LeapResiduals leap_residuals(const PointGeometry& pg) {
  const int n = pg.dim();
  const Matrix& a = pg.structure();
  LeapResiduals out;
  for (int i = 0; i < n; ++i) {
    const Matrix& ni = pg.nabla_a[sz(i)];
    out.eq10 = std::max(out.eq10, (ni * a + a * ni).cwiseAbs().maxCoeff());
    out.eq11 = std::max(out.eq11, (pg.nabla_along(a.col(i)) - a * ni).cwiseAbs().maxCoeff());
  }
  return out;
}

double nearly_kahler_defect(const PointGeometry& pg) {
  const int n = pg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      worst = std::max(worst, (pg.nabla_a[sz(i)].col(j) + pg.nabla_a[sz(j)].col(i)).cwiseAbs().maxCoeff());
  return worst;
}

double nk_integrability_residual(const PointGeometry& pg) {
  const int n = pg.dim();
  const VForm i_form = integrability_form(pg);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst, (i_form.component({i, j}) + 4.0 * pg.nabla_a[sz(i)].col(j)).cwiseAbs().maxCoeff());
  return worst;
}

std::string to_string(AcsClass c) {
  switch (c) {
    case AcsClass::kahler: return "Kähler";
    case AcsClass::nearly_kahler: return "nearly-Kähler";
    case AcsClass::general: return "general";
  }
  return "general";
}

Classification classify(const PointGeometry& pg, double tol) {
  Classification out;
  for (const auto& m : pg.nabla_a) out.nabla_norm = std::max(out.nabla_norm, m.cwiseAbs().maxCoeff());
  out.skew_defect = nearly_kahler_defect(pg);
  out.symmetric_b = pg.da.value.max_abs() <= tol;
  if (out.nabla_norm <= tol)
    out.label = AcsClass::kahler;
  else if (out.skew_defect <= tol)
    out.label = AcsClass::nearly_kahler;
  return out;
}

}  // namespace acobs
