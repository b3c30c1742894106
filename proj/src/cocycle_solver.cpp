#include <normforge/cocycle_solver.hpp>

#include <algorithm>
#include <cassert>

namespace normforge {

namespace {

void require_base(const Subgroup& U, const NCPoly& x) {
    if (!x.ctx)
        throw MixedContext("witness needs a ring element, got a bare scalar");
    if (x.ctx->group.get() != U.parent.get())
        throw MixedContext("norm-one element lives over a different group");
    if (!is_norm_one(U, x))
        throw NormFailure("base element is not norm one over the subgroup");
}

void require_value(const NCPoly& r, const NCPoly& x) {
    if (r.ctx && r.ctx.get() != x.ctx.get())
        throw MixedContext("cocycle value from a different context");
}

// sum_{k=1}^{m-1} (1 + sigma + ... + sigma^{k-1})(xw * sigma^{-k}(val)).
// Shared by the cyclic witness (m = |U|) and the recursion's quotient step,
// where xw is a norm-one element for the cyclic group that sigma generates
// on the invariant subring and m is the order of that action.
NCPoly translate_witness(const GroupPtr& G, int sigma, int m,
                         const NCPoly& xw, const NCPoly& val) {
    NCPoly w = nc_zero();
    const int inv = G->inv(sigma);
    int sk = 0; // sigma^{-k}
    for (int k = 1; k < m; k++) {
        sk = G->mul(sk, inv);
        w = w + apply(gr_geom(G, sigma, k), nc_mul(xw, act(sk, val)));
    }
    return w;
}

} // namespace

NCPoly witness_cyclic(const Subgroup& U, int sigma, const NCPoly& r,
                      const NCPoly& x) {
    const GroupPtr& G = U.parent;
    const int N = U.order();
    if (!U.contains(sigma) || G->order_of(sigma) != N)
        throw SpecError("direction element does not generate the subgroup");
    require_base(U, x);
    require_value(r, x);
    if (!normal_form(norm_of(U, r)).is_zero())
        throw NormObstruction("cocycle value has nonzero norm over the subgroup");

    NCPoly w = translate_witness(G, sigma, N, x, r);

    int pw = 0; // sigma^i
    for (int i = 0; i < N; i++) {
        NCPoly lhs = nc_sub(act(pw, w), w);
        NCPoly rhs = apply(gr_geom(G, sigma, i), r);
        if (!normal_form(nc_sub(lhs, rhs)).is_zero())
            throw VerificationFailure("cyclic witness fails at power " +
                                      std::to_string(i));
        pw = G->mul(pw, sigma);
    }
    return w;
}

NCPoly witness_klein(const Subgroup& U, int sigma1, int sigma2,
                     const NCPoly& r, const NCPoly& s, const NCPoly& x) {
    const GroupPtr& G = U.parent;
    if (U.order() != 4 || !U.contains(sigma1) || !U.contains(sigma2) ||
        G->order_of(sigma1) != 2 || G->order_of(sigma2) != 2 ||
        G->mul(sigma1, sigma2) != G->mul(sigma2, sigma1) ||
        G->mul(sigma1, sigma2) == 0)
        throw SpecError("subgroup is not Klein four on the given generators");
    require_base(U, x);
    require_value(r, x);
    require_value(s, x);

    const GroupRingElement one = gr_one(G);
    const GroupRingElement e1 = gr_elem(G, sigma1);
    const GroupRingElement e2 = gr_elem(G, sigma2);
    if (!normal_form(apply(gr_add(one, e1), r)).is_zero())
        throw CompatibilityFailure(
            "first value has nonzero norm for its generator");
    if (!normal_form(apply(gr_add(one, e2), s)).is_zero())
        throw CompatibilityFailure(
            "second value has nonzero norm for its generator");
    // Both values must look like restrictions of one cocycle; for commuting
    // generators that forces (sigma2 - 1)(r) = (sigma1 - 1)(s).
    if (!normal_form(nc_sub(apply(gr_sub(e2, one), r),
                            apply(gr_sub(e1, one), s)))
             .is_zero())
        throw CompatibilityFailure(
            "values are incompatible across the two generators");

    NCPoly xp = apply(gr_add(one, e2), x);  // norm one for <sigma1>
    NCPoly xpp = apply(gr_add(one, e1), x); // norm one for the other direction
    NCPoly w = nc_mul(xp, act(sigma1, r)) + nc_mul(xpp, act(sigma2, s)) +
               nc_mul(nc_mul(xpp, xp),
                      act(sigma1, nc_sub(act(sigma2, r), r)));

    if (!normal_form(nc_sub(nc_sub(act(sigma1, w), w), r)).is_zero())
        throw VerificationFailure("klein witness fails on the first generator");
    if (!normal_form(nc_sub(nc_sub(act(sigma2, w), w), s)).is_zero())
        throw VerificationFailure("klein witness fails on the second generator");
    return w;
}

namespace {

NCPoly witness_impl(const Subgroup& U, const CocycleOnSubgroup& beta,
                    const NCPoly& x, int depth) {
    assert(depth <= 12);
    const GroupPtr& G = U.parent;
    const int n = U.order();
    if (n == 1) {
        if (!normal_form(cocycle_value(beta, 0)).is_zero())
            throw NonzeroCocycleOnTrivialGroup(
                "nonzero value on the trivial subgroup");
        return nc_zero();
    }
    const int p = p_group_prime(n);
    if (p == 0)
        throw NotAPGroup("witness needs a subgroup of prime-power order");

    for (int g : U.members)
        if (G->order_of(g) == n)
            return witness_cyclic(U, g, cocycle_value(beta, g), x);

    // Least normal subgroup of index p; the member lists from all_subgroups
    // come sorted, so the first hit is the canonical choice.
    Subgroup Us;
    bool found = false;
    for (const Subgroup& V : all_subgroups(G)) {
        if (V.order() * p != n) continue;
        if (!std::includes(U.members.begin(), U.members.end(),
                           V.members.begin(), V.members.end()))
            continue;
        bool normal_in_U = true;
        for (int u : U.members)
            if (conjugate_subgroup(G, u, V).members != V.members) {
                normal_in_U = false;
                break;
            }
        if (normal_in_U) {
            Us = V;
            found = true;
            break;
        }
    }
    if (!found) // every p-group has one
        throw SpecError("no normal subgroup of prime index");
    assert(Us.order() * p == n);

    int sigma = -1;
    for (int g : U.members)
        if (!Us.contains(g)) {
            sigma = g;
            break;
        }

    NCPoly xp = apply(gr_geom(G, sigma, p), x); // norm one for Us
    CocycleOnSubgroup gamma{Us, {}};
    for (int g : Us.members) gamma.values[g] = cocycle_value(beta, g);
    NCPoly w1 = witness_impl(Us, gamma, xp, depth + 1);

    // Correct the quotient direction: what is left of beta(sigma) after
    // subtracting the coboundary of w1 is invariant under Us, so the cyclic
    // step applies with the Us-norm of x as its norm-one element.
    NCPoly sp = nc_sub(cocycle_value(beta, sigma),
                       nc_sub(act(sigma, w1), w1));
    NCPoly w2 = translate_witness(G, sigma, p, norm_of(Us, x), sp);
    NCPoly w = w1 + w2;

    for (int g : U.members)
        if (!normal_form(nc_sub(cocycle_value(beta, g),
                                nc_sub(act(g, w), w)))
                 .is_zero())
            throw VerificationFailure("witness fails on element " +
                                      G->names[g]);
    return w;
}

} // namespace

NCPoly witness(const Subgroup& U, const CocycleOnSubgroup& beta,
               const NCPoly& x) {
    if (beta.U.parent.get() != U.parent.get() || beta.U.members != U.members)
        throw SpecError("cocycle is defined on a different subgroup");
    if (U.order() == 1) {
        if (!normal_form(cocycle_value(beta, 0)).is_zero())
            throw NonzeroCocycleOnTrivialGroup(
                "nonzero value on the trivial subgroup");
        return nc_zero();
    }
    if (!cocycle_validate(beta))
        throw CocycleLawFailure("given values do not satisfy the cocycle law");
    require_base(U, x);
    return witness_impl(U, beta, x, 0);
}

} // namespace normforge
