// maps.hpp — superoperator representation of linear maps on M_d and partial
// application I (x) Lambda on bipartite matrices.
//
// Vec convention: column-stacking, so vec(AXB) = (B^T (x) A) vec(X). All
// superoperator matrices, in memory and in files, use this convention.

#pragma once

#include "ence/matcore.hpp"

namespace ence {

// Condition-number cap on conjugation matrices; beyond it classification
// residuals are meaningless, so constructors refuse.
inline constexpr double kMaxCondition = 1e8;

// d^2 x d^2 complex matrix acting on column-stacked d x d matrices.
struct Superoperator {
    int d{0};
    CMatrix mat;
};

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, int d);

Superoperator superop_identity(int d);

// A |-> S^{-1} A S; mat = S^T (x) S^{-1}. Throws when S is singular or has
// condition number above kMaxCondition.
Superoperator superop_conjugation(const CMatrix& s);

// Matrix transposition as a superoperator: the commutation matrix K_d with
// vec(A^T) = K_d vec(A). Involutive.
Superoperator superop_transpose(int d);

// f after g: apply(compose(f, g), A) = apply(f, apply(g, A)).
Superoperator compose(const Superoperator& f, const Superoperator& g);

CMatrix apply(const Superoperator& l, const CMatrix& a);

// Partial application on one tensor factor, blockwise rather than via the
// lifted (d_a d_b)^2-dimensional superoperator: for side B every d_b x d_b
// block <i| rho |i'> is replaced by its image, and symmetrically for side A.
CMatrix apply_partial(const Superoperator& l, const CMatrix& rho,
                      BipartiteDims dims, Side side);

}  // namespace ence
