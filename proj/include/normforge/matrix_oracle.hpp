#pragma once

#include <normforge/ncring.hpp>

namespace normforge {

// Numeric cross-check for formulas: evaluate polynomials in the matrix ring
// M_n(Z) on which G acts by conjugation with regular-representation
// permutation matrices.  Every subgroup H has the explicit norm-one element
// x_H = sum of e_{r,r} over right coset representatives, so formulas can be
// tested in a ring that is independent of the symbolic rewriting code.

struct IntMatrix {
    int n = 0;
    std::vector<Coef> a;  // row-major

    Coef& at(int i, int j) { return a[(size_t)i * n + j]; }
    const Coef& at(int i, int j) const { return a[(size_t)i * n + j]; }
};

IntMatrix mat_zero(int n);
IntMatrix mat_identity(int n);
IntMatrix mat_add(const IntMatrix& x, const IntMatrix& y);
IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix mat_scale(const Coef& c, const IntMatrix& x);
bool mat_equal(const IntMatrix& x, const IntMatrix& y);
bool mat_is_identity(const IntMatrix& x);

// left regular representation: P_g maps basis vector e_h to e_{gh}
std::vector<IntMatrix> regular_action(const GroupPtr& G);
IntMatrix conjugate_by(const GroupPtr& G, int g, const IntMatrix& x);

IntMatrix model_norm_one(const GroupPtr& G, const Subgroup& H);

IntMatrix evaluate(const NCPoly& p, const std::vector<IntMatrix>& assignment);
IntMatrix evaluate(const NCPoly& p);  // default: model_norm_one per variable
bool oracle_check(const Subgroup& S, const NCPoly& p);

}  // namespace normforge
