#pragma once

#include "acobs/forms.hpp"

// Graded products on bundle-valued forms at a point.
//
// Every product below is defined by a signed sum over S_{k+l} with a
// 1/(k! l!) normalisation. Two backends compute it:
//   - Backend::permutation evaluates that sum literally at each increasing
//     output index tuple and is the normative reference;
//   - Backend::contraction uses the antisymmetry of the factors to reduce the
//     sum to (k, l) shuffles and contracts pre-packed operands.
// Outputs whose degree exceeds the dimension are the zero form.
namespace acobs {

enum class Backend { permutation, contraction };

// (α∧β)(X…) = 1/(k!l!) Σ sign σ · α(X_σ…)·β(X_σ…), "·" = composition.
EndForm wedge_end(const EndForm& alpha, const EndForm& beta, Backend backend = Backend::permutation);

// (γ∧θ)(X…) = ½ · 1/(i!k!) Σ sign σ · γ(X_σ…) ∧ θ(X_σ…).
PolyForm wedge_poly(const PolyForm& gamma, const PolyForm& theta, Backend backend = Backend::permutation);

// Left module action: (α∧ρ)(X…) = 1/(k!s!) Σ sign σ · α(X_σ…)(ρ(X_σ…)).
VForm act_left(const EndForm& alpha, const VForm& rho, Backend backend = Backend::permutation);

// Right module action. ρ's last j slots eat the polyvector γ(…):
// (ρ∧γ)(X…) = 1/((s−j)! i!) Σ sign σ · ρ(X_σ(1),…,X_σ(s−j),·…·)(γ(X_σ…)).
// When s < j the result is zero (of degree max(s−j+i, 0)).
VForm act_right(const VForm& rho, const PolyForm& gamma, Backend backend = Backend::permutation);

// (α ∧_g β)(X…) = 1/(k!l!) Σ sign σ · g(α(X_σ…), β(X_σ…)).
ScalarForm wedge_g(const VForm& alpha, const VForm& beta, const InnerProduct& g, Backend backend = Backend::permutation);

// Ordinary wedge of real-valued forms, 1/(k!l!) normalisation.
ScalarForm wedge_scalar(const ScalarForm& omega, const ScalarForm& eta, Backend backend = Backend::permutation);

// A 2-form P read as P: Λ^{k+1} → Λ^k,
// P(ζ₁∧…∧ζ_{k+1}) = Σ_{i<j} (−1)^{i+j+1} P(ζ_i∧ζ_j) ∧ ζ₁∧…ζ̂_i…ζ̂_j…∧ζ_{k+1}.
Multivector p_extend(const VForm& p, const Multivector& zeta);

// P²(X∧Y∧Z) = P(P(X,Y),Z) − P(P(X,Z),Y) + P(P(Y,Z),X).
Vector p_squared(const VForm& p, const Vector& x, const Vector& y, const Vector& z);

}  // namespace acobs
