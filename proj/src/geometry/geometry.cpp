#include "acobs/geometry.hpp"

#include "acobs/index.hpp"

#include <Eigen/Dense>
#include <sstream>

namespace acobs {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

std::string point_text(const Vector& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ")";
  return os.str();
}

Matrix unpack(const std::vector<Dual2>& v, int n, auto pick) {
  Matrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = pick(v[sz(a * n + b)]);
  return m;
}

}  // namespace

FieldJet field_jet(const Chart& chart, const Vector& x) {
  const int n = chart.dim();
  if (x.size() != n) throw DimensionError("field_jet: point has wrong dimension");
  FieldJet jet;
  jet.x = x;
  jet.dg.assign(sz(n), Matrix());
  jet.da.assign(sz(n), Matrix());
  jet.ddg.assign(sz(n * n), Matrix());
  jet.dda.assign(sz(n * n), Matrix());

  std::vector<Dual2> xs(sz(n));
  std::vector<Dual2> g(sz(n * n)), a(sz(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // outer ε along e_i, inner ε along e_j
      for (int m = 0; m < n; ++m)
        xs[sz(m)] = Dual2(Dual1(x(m), m == j ? 1.0 : 0.0), Dual1(m == i ? 1.0 : 0.0, 0.0));
      chart.eval(xs.data(), g.data(), a.data());
      const Matrix gij = unpack(g, n, [](const Dual2& d) { return d.eps.eps; });
      const Matrix aij = unpack(a, n, [](const Dual2& d) { return d.eps.eps; });
      jet.ddg[sz(i * n + j)] = gij;
      jet.ddg[sz(j * n + i)] = gij;
      jet.dda[sz(i * n + j)] = aij;
      jet.dda[sz(j * n + i)] = aij;
      if (i == j) {
        jet.dg[sz(i)] = unpack(g, n, [](const Dual2& d) { return d.eps.re; });
        jet.da[sz(i)] = unpack(a, n, [](const Dual2& d) { return d.eps.re; });
        if (i == 0) {
          jet.g = unpack(g, n, [](const Dual2& d) { return d.re.re; });
          jet.a = unpack(a, n, [](const Dual2& d) { return d.re.re; });
        }
      }
    }
  return jet;
}

double fd_metric_deviation(const Chart& chart, const Vector& x, double step) {
  const FieldJet jet = field_jet(chart, x);
  double worst = 0.0;
  for (int i = 0; i < chart.dim(); ++i) {
    Vector xp = x, xm = x;
    xp(i) += step;
    xm(i) -= step;
    const Matrix fd = (chart.metric(xp) - chart.metric(xm)) / (2.0 * step);
    const double scale = std::max(1.0, jet.dg[sz(i)].cwiseAbs().maxCoeff());
    worst = std::max(worst, (fd - jet.dg[sz(i)]).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

double ConnectionAt::operator()(int k, int i, int j) const {
  const int n = dim();
  return gamma[sz((k * n + i) * n + j)];
}

Matrix ConnectionAt::along(int i) const {
  const int n = dim();
  Matrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) = (*this)(k, i, j);
  return m;
}

Matrix ConnectionAt::along_partial(int l, int i) const {
  const int n = dim();
  Matrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) = dgamma[sz(l)][sz((k * n + i) * n + j)];
  return m;
}

Vector ConnectionAt::cov_basis(int i, int j) const {
  const int n = dim();
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = (*this)(k, i, j);
  return v;
}

ConnectionAt christoffel(const FieldJet& jet) {
  const int n = jet.dim();
  Eigen::LDLT<Matrix> ldlt(jet.g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 1e-14 * jet.g.norm())
    throw SingularMetric("metric is singular or indefinite at " + point_text(jet.x));
  const Matrix ginv = ldlt.solve(Matrix::Identity(n, n));

  auto s = [&](int m, int i, int j) {
    return jet.dg[sz(i)](j, m) + jet.dg[sz(j)](i, m) - jet.dg[sz(m)](i, j);
  };
  auto ds = [&](int l, int m, int i, int j) {
    return jet.ddg[sz(l * n + i)](j, m) + jet.ddg[sz(l * n + j)](i, m) - jet.ddg[sz(l * n + m)](i, j);
  };

  ConnectionAt conn;
  conn.x = jet.x;
  conn.gamma.assign(sz(n * n * n), 0.0);
  conn.dgamma.assign(sz(n), std::vector<double>(sz(n * n * n), 0.0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = 0.0;
        for (int m = 0; m < n; ++m) v += ginv(k, m) * s(m, i, j);
        conn.gamma[sz((k * n + i) * n + j)] = conn.gamma[sz((k * n + j) * n + i)] = 0.5 * v;
      }
  for (int l = 0; l < n; ++l) {
    const Matrix dginv = -ginv * jet.dg[sz(l)] * ginv;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += dginv(k, m) * s(m, i, j) + ginv(k, m) * ds(l, m, i, j);
          conn.dgamma[sz(l)][sz((k * n + i) * n + j)] = conn.dgamma[sz(l)][sz((k * n + j) * n + i)] = 0.5 * v;
        }
  }
  return conn;
}

ConnectionAt christoffel(const Chart& chart, const Vector& x) { return christoffel(field_jet(chart, x)); }

double metricity_residual(const FieldJet& jet, const ConnectionAt& conn) {
  const int n = jet.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = jet.dg[sz(i)](j, k);
        for (int l = 0; l < n; ++l) v -= conn(l, i, j) * jet.g(l, k) + conn(l, i, k) * jet.g(j, l);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

double CurvatureAt::rm_at(int i, int j, int k, int l) const {
  const int n = dim();
  return rm[sz(((i * n + j) * n + k) * n + l)];
}

double CurvatureAt::rm_eval(const Vector& x1, const Vector& x2, const Vector& x3, const Vector& x4) const {
  const int n = dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = x1(i) * x2(j);
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += w * x3(k) * x4(l) * rm_at(i, j, k, l);
    }
  return acc;
}

CurvatureAt curvature(const FieldJet& jet, const ConnectionAt& conn) {
  const int n = jet.dim();
  CurvatureAt curv{jet.x, EndForm(n, 2), std::vector<double>(sz(n * n * n * n), 0.0)};
  if (n < 2) return curv;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // R(e_i,e_j) = ∂_iΓ_j − ∂_jΓ_i + [Γ_i, Γ_j]
      const Matrix gi = conn.along(i), gj = conn.along(j);
      const Matrix r = conn.along_partial(i, j) - conn.along_partial(j, i) + gi * gj - gj * gi;
      curv.r.set(std::vector<int>{i, j}, r);
      const Matrix lowered = r.transpose() * jet.g;  // (k, l) = g_lm R^m_k
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          curv.rm[sz(((i * n + j) * n + k) * n + l)] = lowered(k, l);
          curv.rm[sz(((j * n + i) * n + k) * n + l)] = -lowered(k, l);
        }
    }
  return curv;
}

CurvatureAt curvature(const Chart& chart, const Vector& x) {
  const FieldJet jet = field_jet(chart, x);
  return curvature(jet, christoffel(jet));
}

double bianchi_residual(const EndForm& r) {
  const int n = r.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const Vector v = r.component({a, b}).col(c) + r.component({b, c}).col(a) + r.component({c, a}).col(b);
        worst = std::max(worst, v.cwiseAbs().maxCoeff());
      }
  return worst;
}

EndForm const_curv_R(double c, const InnerProduct& g) {
  const int n = g.dim();
  EndForm r(n, 2);
  if (n < 2) return r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix m = Matrix::Zero(n, n);
      m.row(i) += c * g.matrix().row(j);
      m.row(j) -= c * g.matrix().row(i);
      r.set(std::vector<int>{i, j}, m);
    }
  return r;
}

double sectional(const CurvatureAt& curv, const InnerProduct& g, const Vector& x, const Vector& y) {
  const double gxy = g(x, y);
  const double area2 = g.norm2(x) * g.norm2(y) - gxy * gxy;
  if (area2 < 1e-12) throw DegeneratePlane("sectional: X and Y span a degenerate plane");
  return curv.rm_eval(x, y, y, x) / area2;
}

std::vector<Matrix> cov_deriv_end(const FieldJet& jet, const ConnectionAt& conn) {
  const int n = jet.dim();
  std::vector<Matrix> out(sz(n));
  for (int i = 0; i < n; ++i) {
    const Matrix gi = conn.along(i);
    out[sz(i)] = jet.da[sz(i)] + gi * jet.a - jet.a * gi;
  }
  return out;
}

std::vector<Matrix> cov_deriv_end_partials(const FieldJet& jet, const ConnectionAt& conn) {
  const int n = jet.dim();
  std::vector<Matrix> out(sz(n * n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i) {
      const Matrix gi = conn.along(i);
      const Matrix dgi = conn.along_partial(l, i);
      const Matrix& dla = jet.da[sz(l)];
      out[sz(l * n + i)] = jet.dda[sz(l * n + i)] + dgi * jet.a + gi * dla - dla * gi - jet.a * dgi;
    }
  return out;
}

VForm cov_deriv_form(const ConnectionAt& conn, const VFormJet& rho, int i) {
  const int n = conn.dim();
  const int k = rho.value.degree();
  VForm out(n, k);
  if (k > n) return out;
  const Matrix gi = conn.along(i);
  for (const auto& idx : index::increasing_tuples(n, k)) {
    Vector v = rho.partials[sz(i)].component(idx) + gi * rho.value.component(idx);
    std::vector<Vector> args;
    for (int j : idx) args.push_back(Vector::Unit(n, j));
    for (int r = 0; r < k; ++r) {
      auto shifted = args;
      shifted[sz(r)] = conn.cov_basis(i, idx[sz(r)]);
      v -= rho.value(shifted);
    }
    out.set(idx, v);
  }
  return out;
}

VForm cov_ext_deriv(const ConnectionAt& conn, const VFormJet& rho) {
  const int n = conn.dim();
  const int k = rho.value.degree();
  VForm out(n, k + 1);
  if (k + 1 > n) return out;
  std::vector<VForm> nabla;
  for (int i = 0; i < n; ++i) nabla.push_back(cov_deriv_form(conn, rho, i));
  for (const auto& idx : index::increasing_tuples(n, k + 1)) {
    Vector v = Vector::Zero(n);
    for (int r = 0; r <= k; ++r) {
      std::vector<int> rest;
      for (int q = 0; q <= k; ++q)
        if (q != r) rest.push_back(idx[sz(q)]);
      const Vector term = nabla[sz(idx[sz(r)])].component(rest);
      v += (r % 2 == 0 ? 1.0 : -1.0) * term;
    }
    out.set(idx, v);
  }
  return out;
}

VFormJet structure_jet(const FieldJet& jet) {
  VFormJet out{VForm::from_matrix(jet.a), {}};
  for (const auto& d : jet.da) out.partials.push_back(VForm::from_matrix(d));
  return out;
}

namespace {

// β(e_i,e_j) = M_i e_j − M_j e_i for a family of matrices M_i.
VForm skew_pairing(const std::vector<Matrix>& m, int n, std::size_t offset) {
  VForm out(n, 2);
  if (n < 2) return out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.set(std::vector<int>{i, j}, m[offset + sz(i)].col(j) - m[offset + sz(j)].col(i));
  return out;
}

}  // namespace

VFormJet d_structure_jet(const FieldJet& jet, const ConnectionAt& conn) {
  const int n = jet.dim();
  VFormJet out{skew_pairing(cov_deriv_end(jet, conn), n, 0), {}};
  const auto partials = cov_deriv_end_partials(jet, conn);
  for (int l = 0; l < n; ++l) out.partials.push_back(skew_pairing(partials, n, sz(l * n)));
  return out;
}

Matrix PointGeometry::nabla_along(const Vector& x) const {
  const int n = dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m += x(i) * nabla_a[sz(i)];
  return m;
}

PointGeometry evaluate(const Chart& chart, const Vector& x) {
  FieldJet jet = field_jet(chart, x);
  ConnectionAt conn = christoffel(jet);
  CurvatureAt curv = curvature(jet, conn);
  InnerProduct g(jet.g);
  auto nabla = cov_deriv_end(jet, conn);
  auto a = structure_jet(jet);
  auto da = d_structure_jet(jet, conn);
  return PointGeometry{std::move(jet), std::move(conn), std::move(curv), std::move(g),
                       std::move(nabla), std::move(a), std::move(da)};
}

}  // namespace acobs
