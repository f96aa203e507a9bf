#pragma once

#include "acobs/acx.hpp"

#include <array>

namespace acobs {

// β∧(β∧α) with β, α read as polyvector-valued forms of poly degree 1.
VForm beta_beta_alpha(const VForm& beta, const VForm& alpha);

// (R∧A)∧(A∧A) + 2 d∇A∧(d∇A∧A) − R∧A
VForm first_obstructure(const PointGeometry& pg);
// ½ R∧A + 2 d∇A∧(d∇A∧A)
VForm simplified_obstructure(const PointGeometry& pg);
// d∇ applied to the jet of I, independent of the closed form above.
VForm obstructure_direct(const PointGeometry& pg);

// β(β(X1,X2),AX3) + β(β(X2,X3),AX1) − β(β(X1,X3),AX2)
Vector cyclic_bb(const PointGeometry& pg, const Vector& x1, const Vector& x2, const Vector& x3);

struct ExpandedResidual {
  Vector u1;
  double u2 = 0.0;
};

ExpandedResidual expanded_residual(const PointGeometry& pg, std::span<const Vector> frame);

struct ConstCurvResidual {
  Vector u3;
  double u4 = 0.0;
  Vector u5;
  double u6 = 0.0;
};

// Sectional curvature over all coordinate planes; throws HypothesisError when
// the spread exceeds `variance_gate` or the mean is not c.
void check_constant_curvature(const PointGeometry& pg, double c, double variance_gate = 1e-6);

// The u5/u6 parts need orthogonal A; they are left at zero size otherwise.
ConstCurvResidual const_curv_residuals(const PointGeometry& pg, double c, std::span<const Vector> frame,
                                       bool gate = true);

// Φ(X,Y,Z,W) = g((d∇A)²(X∧Y∧Z), W) on basis vectors.
struct PhiAt {
  int n = 0;
  std::vector<double> values;  // ((i*n + j)*n + k)*n + l

  double at(int i, int j, int k, int l) const;
  double operator()(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;
  double antisymmetry3_residual() const;
  double antisymmetry4_residual() const;
  double a_invariance_residual(const Matrix& a) const;
};

PhiAt phi(const PointGeometry& pg);

// Φ + (c/2) Ω∧Ω, max over basis.
double phi_omega_residual(const PointGeometry& pg, const PhiAt& phi_at, double c);

struct PhiViaNabla {
  double three_term = 0.0;    // three-term ∇A expression
  double half_sum = 0.0;  // ½[g(β(X,Y),β(Z,W)) − g(β(X,Z),β(Y,W)) + g(β(Y,Z),β(X,W))]
};

PhiViaNabla phi_via_nabla(const PointGeometry& pg, std::span<const Vector> frame);

// g(d∇A(X,Y), (∇_Z A)Z)
double aura_residual(const PointGeometry& pg, const Vector& x, const Vector& y, const Vector& z);
// Ω((∇_X A)X, (∇_Y A)Y)
double omega_residual(const PointGeometry& pg, const Vector& x, const Vector& y);
// d∇A ∧_g d∇A + 2c Ω∧Ω
ScalarForm structure_eq_residual(const PointGeometry& pg, double c);
// ‖(∇_X A)Y‖² − g((∇_X A)X, (∇_Y A)Y) + (c/2)(Ω(X,Y)² − ‖X‖²‖Y‖² + g(X,Y)²)
double norm_formula_residual(const PointGeometry& pg, double c, const Vector& x, const Vector& y);
// ‖(∇_X A)Y‖ − ‖(∇_Y A)X‖
double norm_symmetry(const PointGeometry& pg, const Vector& x, const Vector& y);

// The two stated forms of d∇A(X,AX):
//   v1 = d∇A(X,AX) + 2(∇_X A)X,  v2 = d∇A(X,AX) + 2A((∇_X A)X)
std::array<Vector, 2> da_xax_variants(const PointGeometry& pg, const Vector& x);

}  // namespace acobs
