#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <normforge/cocycle_solver.hpp>

#include <random>

using namespace normforge;

namespace {

int idx(const GroupPtr& G, const std::string& name) { return G->index_of(name); }

NCPoly rand_poly(const ContextPtr& ctx, std::mt19937& rng, int max_terms = 4,
                 int max_deg = 2) {
    std::uniform_int_distribution<int> nt(1, max_terms);
    std::uniform_int_distribution<int> nd(0, max_deg);
    std::uniform_int_distribution<int> ng(0, ctx->n - 1);
    std::uniform_int_distribution<int> nv(0, ctx->nvars() - 1);
    std::uniform_int_distribution<int> nc(-2, 2);
    NCPoly p = nc_zero();
    int terms = nt(rng);
    for (int t = 0; t < terms; t++) {
        std::vector<std::pair<int, int>> letters;
        int d = nd(rng);
        for (int i = 0; i < d; i++) letters.push_back({ng(rng), nv(rng)});
        p = nc_add(p, nc_mono(ctx, nc(rng), letters));
    }
    return p;
}

// beta(g) = (g-1)v for every g in U: always a valid cocycle
CocycleOnSubgroup coboundary_of(const Subgroup& U, const NCPoly& v) {
    CocycleOnSubgroup beta{U, {}};
    for (int g : U.members) beta.values[g] = nc_sub(act(g, v), v);
    return beta;
}

bool is_coboundary_witness(const Subgroup& U, const CocycleOnSubgroup& beta,
                           const NCPoly& w) {
    for (int g : U.members) {
        NCPoly diff = nc_sub(cocycle_value(beta, g), nc_sub(act(g, w), w));
        if (!normal_form(diff).is_zero()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("cyclic witness of the zero value is zero") {
    auto G = build_group("C4");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    NCPoly w = witness_cyclic(U, idx(G, "s"), nc_zero(), x);
    CHECK(w.is_zero());
}

TEST_CASE("cyclic witness over the order-four subgroup of the quaternion group") {
    auto G = build_group("Q8");
    Subgroup U = subgroup_generated(G, {idx(G, "s")});
    REQUIRE(U.order() == 4);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    NCPoly r = nc_sub(x, act(idx(G, "st"), x));

    NCPoly w = witness_cyclic(U, idx(G, "s"), r, x);
    PolyStats st = stats(w);
    CHECK(st.monomials == 12);
    CHECK(st.max_degree == 2);

    int s = idx(G, "s");
    CHECK(normal_form(nc_sub(nc_sub(act(s, w), w), r)).is_zero());
}

TEST_CASE("cyclic witness resolves random coboundaries") {
    auto G = build_group("C8");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int s = idx(G, "s");
    std::mt19937 rng(24680);
    for (int trial = 0; trial < 8; trial++) {
        NCPoly v = rand_poly(ctx, rng);
        NCPoly r = nc_sub(act(s, v), v);
        NCPoly w = witness_cyclic(U, s, r, x);
        CHECK(normal_form(nc_sub(nc_sub(act(s, w), w), r)).is_zero());
        CHECK(stats(w).max_degree <= stats(x).max_degree + stats(r).max_degree);
    }
}

TEST_CASE("cyclic witness over an order-two group is a single product") {
    auto G = build_group("C2");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int s = idx(G, "s");
    NCPoly v = nc_mul(x, x);
    NCPoly r = nc_sub(act(s, v), v);
    NCPoly w = witness_cyclic(U, s, r, x);
    CHECK(nc_equal(w, nc_mul(x, act(s, r))));
}

TEST_CASE("cyclic witness rejects a value with nonzero norm") {
    auto G = build_group("C4");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    CHECK_THROWS_AS(witness_cyclic(U, idx(G, "s"), x, x), NormObstruction);
}

TEST_CASE("cyclic witness rejects a non-generator direction") {
    auto G = build_group("C4");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    CHECK_THROWS_AS(witness_cyclic(U, idx(G, "s2"), nc_zero(), x), SpecError);
}

TEST_CASE("klein witness of zero values is zero") {
    auto G = build_group("E(2,2)");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    NCPoly w = witness_klein(U, 1, 2, nc_zero(), nc_zero(), x);
    CHECK(w.is_zero());
}

TEST_CASE("klein witness resolves random coboundary pairs") {
    auto G = build_group("E(2,2)");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int a = 1, b = 2;
    std::mt19937 rng(13579);
    for (int trial = 0; trial < 8; trial++) {
        NCPoly v = rand_poly(ctx, rng);
        NCPoly r = nc_sub(act(a, v), v);
        NCPoly s = nc_sub(act(b, v), v);
        NCPoly w = witness_klein(U, a, b, r, s, x);
        CHECK(normal_form(nc_sub(nc_sub(act(a, w), w), r)).is_zero());
        CHECK(normal_form(nc_sub(nc_sub(act(b, w), w), s)).is_zero());
    }
}

TEST_CASE("klein witness inside a dihedral group") {
    auto G = build_group("D8");
    Subgroup U = subgroup_generated(G, {idx(G, "s2"), idx(G, "t")});
    REQUIRE(U.order() == 4);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int a = idx(G, "s2"), b = idx(G, "t");
    std::mt19937 rng(8642);
    NCPoly v = rand_poly(ctx, rng);
    NCPoly r = nc_sub(act(a, v), v);
    NCPoly s = nc_sub(act(b, v), v);
    NCPoly w = witness_klein(U, a, b, r, s, x);
    // the mixed element is reached through the cocycle law
    int ab = G->mul(a, b);
    NCPoly mixed = nc_add(r, act(a, s));
    CHECK(normal_form(nc_sub(nc_sub(act(ab, w), w), mixed)).is_zero());
}

TEST_CASE("klein witness rejects incompatible values") {
    auto G = build_group("E(2,2)");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int a = 1, b = 2;

    // nonzero norm in the first slot
    CHECK_THROWS_AS(witness_klein(U, a, b, x, nc_zero(), x),
                    CompatibilityFailure);
    // nonzero norm in the second slot
    CHECK_THROWS_AS(witness_klein(U, a, b, nc_zero(), x, x),
                    CompatibilityFailure);
    // each value fine on its own generator but not joinable to one cocycle
    NCPoly s = nc_sub(act(b, x), x);
    CHECK_THROWS_AS(witness_klein(U, a, b, nc_zero(), s, x),
                    CompatibilityFailure);
}

TEST_CASE("klein witness rejects a cyclic subgroup") {
    auto G = build_group("C4");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    CHECK_THROWS_AS(
        witness_klein(U, idx(G, "s"), idx(G, "s3"), nc_zero(), nc_zero(), x),
        SpecError);
}

TEST_CASE("recursive witness on the trivial subgroup") {
    auto G = build_group("C4");
    Subgroup T = trivial_subgroup(G);
    auto ctx = RingContext::make(G, {whole_subgroup(G)});
    NCPoly x = nc_var(ctx, 0);

    CocycleOnSubgroup zero{T, {{0, nc_zero()}}};
    CHECK(witness(T, zero, x).is_zero());

    CocycleOnSubgroup bad{T, {{0, x}}};
    CHECK_THROWS_AS(witness(T, bad, x), NonzeroCocycleOnTrivialGroup);
}

TEST_CASE("recursive witness delegates to the cyclic construction") {
    auto G = build_group("Q8");
    Subgroup U = subgroup_generated(G, {idx(G, "s")});
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    int s = idx(G, "s");
    NCPoly r = nc_sub(x, act(idx(G, "st"), x));

    CocycleOnSubgroup beta{U, {}};
    for (int i = 0, g = 0; i < 4; i++, g = G->mul(g, s))
        beta.values[g] = apply(gr_geom(G, s, i), r);
    REQUIRE(cocycle_validate(beta));

    NCPoly w = witness(U, beta, x);
    NCPoly direct = witness_cyclic(U, s, r, x);
    CHECK(nc_equal(w, direct));
}

TEST_CASE("recursive and direct klein witnesses both resolve the same cocycle") {
    auto G = build_group("E(2,2)");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    std::mt19937 rng(11111);
    NCPoly v = rand_poly(ctx, rng);
    CocycleOnSubgroup beta = coboundary_of(U, v);
    REQUIRE(cocycle_validate(beta));

    NCPoly w_rec = witness(U, beta, x);
    NCPoly w_dir = witness_klein(U, 1, 2, cocycle_value(beta, 1),
                                 cocycle_value(beta, 2), x);
    CHECK(is_coboundary_witness(U, beta, w_rec));
    CHECK(is_coboundary_witness(U, beta, w_dir));
}

TEST_CASE("recursive witness on a nonabelian subgroup of order eight") {
    auto G = build_group("D16");
    Subgroup U = subgroup_generated(G, {idx(G, "s2"), idx(G, "t")});
    REQUIRE(U.order() == 8);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    std::mt19937 rng(555);
    NCPoly v = rand_poly(ctx, rng, 3, 2);
    CocycleOnSubgroup beta = coboundary_of(U, v);
    REQUIRE(cocycle_validate(beta));

    NCPoly w = witness(U, beta, x);
    CHECK(is_coboundary_witness(U, beta, w));

    // byte-identical across runs
    NCPoly w2 = witness(U, beta, x);
    CHECK(w.terms == w2.terms);
}

TEST_CASE("recursive witness on an elementary abelian group of order nine") {
    auto G = build_group("E(3,2)");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);
    std::mt19937 rng(2026);
    NCPoly v = rand_poly(ctx, rng, 3, 1);
    CocycleOnSubgroup beta = coboundary_of(U, v);
    NCPoly w = witness(U, beta, x);
    CHECK(is_coboundary_witness(U, beta, w));
}

TEST_CASE("recursive witness rejects bad inputs") {
    auto G = build_group("C4");
    Subgroup U = whole_subgroup(G);
    auto ctx = RingContext::make(G, {U});
    NCPoly x = nc_var(ctx, 0);

    // values that break the cocycle law
    CocycleOnSubgroup lawless{U, {}};
    for (int g : U.members) lawless.values[g] = nc_zero();
    lawless.values[idx(G, "s")] = x;
    CHECK_THROWS_AS(witness(U, lawless, x), CocycleLawFailure);

    // cocycle carried by a different subgroup
    Subgroup half = subgroup_generated(G, {idx(G, "s2")});
    CocycleOnSubgroup other{half, {}};
    for (int g : half.members) other.values[g] = nc_zero();
    CHECK_THROWS_AS(witness(U, other, x), SpecError);

    // subgroups of composite non-prime-power order are out of scope
    auto S3 = build_group("S3");
    Subgroup W = whole_subgroup(S3);
    auto ctx3 = RingContext::make(S3, {W});
    CocycleOnSubgroup zero = coboundary_of(W, nc_zero());
    CHECK_THROWS_AS(witness(W, zero, nc_var(ctx3, 0)), NotAPGroup);
}
