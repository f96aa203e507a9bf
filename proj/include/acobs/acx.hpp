#pragma once

#include "acobs/geometry.hpp"

#include <stdexcept>
#include <string>

namespace acobs {

// An identity was asked for outside the hypotheses it needs.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double acs_square_residual(const Matrix& a);
// max |AᵀgA − g|
double orthogonality_residual(const Matrix& g, const Matrix& a);

// N_A(∂_i, ∂_j) from coordinate brackets; uses only first partials of A.
VForm nijenhuis(const FieldJet& jet);

// I = d∇A∧(A∧A) − d∇A, i.e. I(X,Y) = d∇A(AX,AY) − d∇A(X,Y).
VForm integrability_form(const PointGeometry& pg);
// I together with its coordinate partials, by the product rule.
VFormJet integrability_jet(const PointGeometry& pg);

// max |I(X,Y) + A N(X,Y)| over basis pairs.
double cross_check_NI(const PointGeometry& pg);

// max |β(AX,AY) − β(X,Y)| over basis pairs.
double a_invariance_defect(const VForm& beta, const Matrix& a);

struct FundamentalForm {
  ScalarForm omega;  // Ω(X,Y) = g(AX, Y)
  double operator()(const Vector& x, const Vector& y) const { return omega({x, y}); }
};

// Throws HypothesisError when A is not g-orthogonal within tol.
FundamentalForm fundamental(const InnerProduct& g, const Matrix& a, double tol = 1e-10);

struct LeapResiduals {
  double eq10 = 0.0;  // (∇_X A)(AY) + A((∇_X A)Y), any A
  double eq11 = 0.0;  // (∇_{AX} A)Y − A((∇_X A)Y), hermitian A
};

LeapResiduals leap_residuals(const PointGeometry& pg);

// max |(∇_X A)Y + (∇_Y A)X| over basis pairs: zero iff (∇_X A)X = 0 for all X.
double nearly_kahler_defect(const PointGeometry& pg);

// max |I(X,Y) + 4(∇_X A)Y| over basis pairs.
double nk_integrability_residual(const PointGeometry& pg);

enum class AcsClass { kahler, nearly_kahler, general };
std::string to_string(AcsClass c);

struct Classification {
  AcsClass label = AcsClass::general;
  bool symmetric_b = false;  // d∇A = 0
  double nabla_norm = 0.0;
  double skew_defect = 0.0;
};

Classification classify(const PointGeometry& pg, double tol = 1e-6);

}  // namespace acobs
