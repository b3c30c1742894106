#pragma once

#include <vector>

#include "normforge/group.hpp"
#include "normforge/ncring.hpp"

namespace normforge {

// Library of norm-one elements ("formulas"): closed forms for the small base
// groups plus the reduction steps that assemble formulas for larger groups
// out of formulas for smaller ones.  Every constructor verifies its output
// symbolically before returning it and raises VerificationFailure otherwise.
//
// Closed-form constructors return the classical printed shape of the element
// (monomial counts are part of their contract); the reduction operations
// return normal forms, which are dramatically smaller than the raw
// substitution products.

/// Three-monomial element over C4; the variable is the order-2 subgroup.
NCPoly c4_formula();

/// The general element over the cyclic group of order p^2 (variable: the
/// order-p subgroup) in its canonical four-sum shape; p prime, p <= 7.
NCPoly cp2_formula(int p);

/// Q_{2^{n+2}} for 1 <= n <= 3, over x_U with U = <s> the cyclic half.
NCPoly quaternion_formula(int n);

/// D_{2^{n+1}} for 2 <= n <= 3, over x_U (U = <s^2, t>) and x_2 (U2 = <u, st>
/// with u the central involution).
NCPoly dihedral_formula(int n);

/// The nonabelian group of order 27 with an element of order 9, over x_U
/// with U = <s^3, t>.
NCPoly g27_formula();

/// x_E itself.
NCPoly elementary_formula(const Subgroup& E);

/// Sum of right-coset translates: turns a norm-one element for the whole
/// group into one for the subgroup U.
NCPoly restrict_formula(const Subgroup& U, const NCPoly& phi);

/// g applied to a norm-one element for E gives one for gEg^{-1}.
NCPoly conjugate_formula(int g, const Subgroup& E, const NCPoly& phi);

/// Rewrite a formula over an isomorphic group: elem_map[src element] = dst
/// element must be an isomorphism onto dst, and the context variables are
/// carried along.  SpecError when the map does not respect the variables.
NCPoly relabel_formula(const NCPoly& src, const GroupPtr& dst,
                       const std::vector<int>& elem_map);

/// Integer combination of one norm-one element per prime divisor of |G|
/// (ascending primes, the i-th verified against sylow_subgroup(G, p_i)).
/// The Bezout coefficients are chosen deterministically: the cofactor
/// combination is reduced to least absolute value, positive on ties.
NCPoly sylow_combine(const GroupPtr& G, const std::vector<NCPoly>& sylow_formulas);

/// Quotient-formula substitution: every letter gbar(x_Ebar) of
/// quotient_formula becomes (least lift of gbar)(N_kernel(lift formula)) and
/// the result is multiplied on the right by the kernel variable.
/// lift_formulas[i] matches variable i of quotient_formula and must be
/// norm-one for the preimage of that variable's subgroup.  Rejects quotients
/// that are elementary abelian (the preimages would not be proper).
NCPoly central_reduction(const Quotient& q, const NCPoly& quotient_formula,
                         const std::vector<NCPoly>& lift_formulas);

/// H x C for a prime-order C: every letter h(x_E) of phi_H becomes
/// h(N_C(x_{E x C})), and the result is multiplied on the right by x_C.
/// Returns a formula over product_group(H, C).
NCPoly product_reduction(const GroupPtr& H, const GroupPtr& C, const NCPoly& phiH);

/// Recursive construction for a p-group of order <= 64: elementary abelian
/// groups get x_G, catalogued (almost) extraspecial groups get the library
/// closed form, and everything else reduces through a central order-p
/// subgroup.  UnsupportedBaseGroup when the recursion reaches an (almost)
/// extraspecial group with no library formula.
NCPoly pgroup_formula(const GroupPtr& G);

/// Recursive construction over product_group(G1, G2) for two p-groups with
/// the same prime: elementary abelian factors are peeled off one prime-order
/// slice at a time, and otherwise a central subgroup of G2 is factored out,
/// with the preimage formulas built inside elementary-by-N product subgroups
/// (this keeps the required base formulas to those of the two factors).
NCPoly product_formula(const GroupPtr& G1, const GroupPtr& G2);

}  // namespace normforge
