#pragma once

#include "acobs/chart.hpp"

#include <stdexcept>

namespace acobs {

class SingularMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePlane : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// g and A with their first and second coordinate partials at one point.
struct FieldJet {
  Vector x;
  Matrix g, a;
  std::vector<Matrix> dg, da;    // [i] = ∂_i
  std::vector<Matrix> ddg, dda;  // [i*n + j] = ∂_i∂_j
  int dim() const { return static_cast<int>(x.size()); }
};

FieldJet field_jet(const Chart& chart, const Vector& x);

// Largest relative gap between the dual-number ∂g and central differences.
double fd_metric_deviation(const Chart& chart, const Vector& x, double step = 1e-5);

struct ConnectionAt {
  Vector x;
  std::vector<double> gamma;               // Γ^k_ij at (k*n + i)*n + j
  std::vector<std::vector<double>> dgamma;  // [l] = ∂_l Γ, same layout

  int dim() const { return static_cast<int>(x.size()); }
  double operator()(int k, int i, int j) const;
  // (Γ_i)^k_j = Γ^k_ij, so ∇_{e_i} Y = ∂_i Y + Γ_i Y.
  Matrix along(int i) const;
  Matrix along_partial(int l, int i) const;
  // ∇_{e_i} e_j
  Vector cov_basis(int i, int j) const;
};

ConnectionAt christoffel(const FieldJet& jet);
ConnectionAt christoffel(const Chart& chart, const Vector& x);

// ∂_i g_jk − Γ^l_ij g_lk − Γ^l_ik g_jl, max over indices.
double metricity_residual(const FieldJet& jet, const ConnectionAt& conn);

struct CurvatureAt {
  Vector x;
  EndForm r;               // R(e_i,e_j) with value (l, k) = R^l_kij
  std::vector<double> rm;  // Rm_ijkl = g(R(e_i,e_j)e_k, e_l)

  int dim() const { return static_cast<int>(x.size()); }
  double rm_at(int i, int j, int k, int l) const;
  double rm_eval(const Vector& x1, const Vector& x2, const Vector& x3, const Vector& x4) const;
};

CurvatureAt curvature(const FieldJet& jet, const ConnectionAt& conn);
CurvatureAt curvature(const Chart& chart, const Vector& x);

// R(X,Y)W + R(Y,W)X + R(W,X)Y over basis triples.
double bianchi_residual(const EndForm& r);

// R(X,Y)Z = c(g(Y,Z)X − g(X,Z)Y)
EndForm const_curv_R(double c, const InnerProduct& g);

double sectional(const CurvatureAt& curv, const InnerProduct& g, const Vector& x, const Vector& y);

// A k-form with its coordinate partials.
struct VFormJet {
  VForm value;
  std::vector<VForm> partials;  // [l] = ∂_l of the components
};

// ∇_{e_i} A as matrices.
std::vector<Matrix> cov_deriv_end(const FieldJet& jet, const ConnectionAt& conn);
// ∂_l (∇_{e_i} A) at [l*n + i].
std::vector<Matrix> cov_deriv_end_partials(const FieldJet& jet, const ConnectionAt& conn);

// (∇_{e_i} ρ) for a form jet.
VForm cov_deriv_form(const ConnectionAt& conn, const VFormJet& rho, int i);
VForm cov_ext_deriv(const ConnectionAt& conn, const VFormJet& rho);

VFormJet structure_jet(const FieldJet& jet);
// d∇A with its partials.
VFormJet d_structure_jet(const FieldJet& jet, const ConnectionAt& conn);

// Everything the identity evaluators need at one point.
struct PointGeometry {
  FieldJet jet;
  ConnectionAt conn;
  CurvatureAt curv;
  InnerProduct g;
  std::vector<Matrix> nabla_a;  // [i] = ∇_{e_i} A
  VFormJet a;                   // A as a 1-form
  VFormJet da;                  // d∇A

  int dim() const { return jet.dim(); }
  const Matrix& structure() const { return jet.a; }
  // ∇_X A
  Matrix nabla_along(const Vector& x) const;
};

PointGeometry evaluate(const Chart& chart, const Vector& x);

}  // namespace acobs
