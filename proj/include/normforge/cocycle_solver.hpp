#pragma once

#include <normforge/ncring.hpp>

namespace normforge {

// Explicit coboundary witnesses: given a 1-cocycle beta on a subgroup U
// (values in the universal ring, with a norm-one element x for U available),
// produce w with beta(g) = (g-1)w for every g in U.  Every witness is
// re-verified symbolically before it is returned; a result that does not
// check out raises VerificationFailure instead of being handed back.

/// Cyclic U = <sigma> of any order N, r the value on sigma:
///   w = sum_{k=1}^{N-1} (1 + sigma + ... + sigma^{k-1})(x * sigma^{-k}(r)).
/// Requires r to have norm zero over U (NormObstruction otherwise); the
/// output degree is bounded by deg(x) + deg(r).
NCPoly witness_cyclic(const Subgroup& U, int sigma, const NCPoly& r,
                      const NCPoly& x);

/// Klein four-group U = <sigma1, sigma2>; r and s are the prescribed values
/// on the two generators.  They must satisfy
///   (1+sigma1)(r) = 0,   (sigma2-1)(r) = (sigma1-1)(s),   (1+sigma2)(s) = 0,
/// i.e. look like restrictions of a single cocycle (CompatibilityFailure
/// otherwise).
NCPoly witness_klein(const Subgroup& U, int sigma1, int sigma2,
                     const NCPoly& r, const NCPoly& s, const NCPoly& x);

/// Arbitrary p-group U: delegates to witness_cyclic when U is cyclic and
/// otherwise splits off the least (by member list) normal subgroup of index
/// p, recursing on it and patching the quotient direction.  Deterministic:
/// fixed subgroup-selection order, byte-identical output across runs.
NCPoly witness(const Subgroup& U, const CocycleOnSubgroup& beta,
               const NCPoly& x);

} // namespace normforge
