#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <normforge/cocycle_solver.hpp>
#include <normforge/matrix_oracle.hpp>
#include <normforge/method_engine.hpp>

using namespace normforge;

namespace {

int pw(const GroupPtr& G, int g, int k) {
    int r = 0;
    for (int i = 0; i < k; ++i) r = G->mul(r, g);
    return r;
}

NCPoly nf(const NCPoly& p) { return normal_form(p); }

// the three classical conditions on (b(s), b(t)) for the quaternion groups
std::vector<NormEquation> quaternion_conditions(const GroupPtr& G) {
    const int m = G->n;
    const int s = G->index_of("s");
    const int t = G->index_of("t");
    const auto one = gr_one(G);
    return {
        {{gr_geom(G, s, m / 2), gr_zero(G)}, 0},
        {{gr_add(one, gr_elem(G, G->mul(s, t))), gr_sub(gr_elem(G, s), one)}, 0},
        {{gr_neg(gr_geom(G, s, m / 4)), gr_add(one, gr_elem(G, t))}, 1},
    };
}

// and for the dihedral groups
std::vector<NormEquation> dihedral_conditions(const GroupPtr& G) {
    const int m = G->n;
    const int s = G->index_of("s");
    const int t = G->index_of("t");
    const auto one = gr_one(G);
    return {
        {{gr_zero(G), gr_add(one, gr_elem(G, t))}, 0},
        {{gr_geom(G, s, m / 2), gr_zero(G)}, Coef(m / 4)},
        {{gr_add(one, gr_elem(G, G->mul(s, t))), gr_sub(gr_elem(G, s), one)}, 1},
    };
}

// and for the nonabelian group of order 27 and exponent 9
std::vector<NormEquation> order27_conditions(const GroupPtr& G) {
    const int s = G->index_of("s");
    const int t = G->index_of("t");
    return {
        {{gr_zero(G), gr_geom(G, t, 3)}, 0},
        {{gr_geom(G, s, 9), gr_zero(G)}, 3},
        {{gr_sub(gr_geom(G, s, 4), gr_elem(G, t)), gr_sub(gr_elem(G, pw(G, s, 4)), gr_one(G))},
         1},
    };
}

}  // namespace

TEST_CASE("presentation validation") {
    auto D8 = build_group("D8");
    const int s = D8->index_of("s");
    const int t = D8->index_of("t");

    Presentation good{{"s", "t"}, {{{1, 1}, {}}, {{0, 0, 0, 0}, {}}, {{0, 1, 0, 1}, {}}}};
    CHECK(presentation_elements(D8, good) == std::vector<int>{s, t});

    Presentation unknown{{"q"}, {}};
    CHECK_THROWS_AS(presentation_elements(D8, unknown), BadPresentation);

    Presentation partial{{"t"}, {{{0, 0}, {}}}};
    CHECK_THROWS_AS(presentation_elements(D8, partial), BadPresentation);

    Presentation wrong{{"s", "t"}, {{{0, 0}, {}}}};
    CHECK_THROWS_AS(presentation_elements(D8, wrong), BadPresentation);

    Presentation out_of_range{{"s", "t"}, {{{0, 7}, {}}}};
    CHECK_THROWS_AS(presentation_elements(D8, out_of_range), BadPresentation);
}

TEST_CASE("coset counting map") {
    auto G = build_group("G27");
    const int s = G->index_of("s");
    auto U = subgroup_generated(G, {pw(G, s, 3), G->index_of("t")});
    auto ctx = RingContext::make(G, {U});
    auto alpha = build_alpha(ctx, U, s);

    for (int u : U.members) {
        CHECK(b_coerce(alpha(u)).is_zero());
        CHECK(b_equal(alpha(G->mul(s, u)), alpha(s)));
    }
    // one step of the defining recursion, and the full fold back to 1
    CHECK(b_equal(alpha(pw(G, s, 2)), b_add(alpha(s), b_act(s, alpha(s)))));
    BElement fold = alpha(s);
    for (int k = 1; k < 3; ++k) fold = b_add(fold, b_act(pw(G, s, k), alpha(s)));
    NCPoly folded = b_coerce(fold);
    CHECK(nc_equal(folded, nc_scalar(1)));

    auto D8 = build_group("D8");
    auto refl = subgroup_generated(D8, {D8->index_of("t")});
    auto dctx = RingContext::make(D8, {refl});
    CHECK_THROWS_AS(build_alpha(dctx, refl, D8->index_of("s")), NotNormal);
    auto rot = subgroup_generated(D8, {D8->index_of("s")});
    auto rctx = RingContext::make(D8, {rot});
    CHECK_THROWS_AS(build_alpha(rctx, rot, D8->index_of("s2")), BadQuotient);
}

TEST_CASE("generated systems carry the classical right-hand sides") {
    auto rhs_of = [](const std::string& spec) {
        auto S = pipeline_setup(spec);
        std::vector<Coef> out;
        for (const auto& eq : build_system(S.group, S.U, S.sigma, S.pres))
            out.push_back(eq.rhs);
        return out;
    };
    CHECK(rhs_of("Q8") == std::vector<Coef>{0, 0, 1});
    CHECK(rhs_of("Q16") == std::vector<Coef>{0, 0, 1});
    CHECK(rhs_of("D8") == std::vector<Coef>{0, 2, 1});
    CHECK(rhs_of("D16") == std::vector<Coef>{0, 4, 1});
    CHECK(rhs_of("D32") == std::vector<Coef>{0, 8, 1});
    CHECK(rhs_of("G27") == std::vector<Coef>{0, 3, 1});
    CHECK(rhs_of("C4") == std::vector<Coef>{2});
    CHECK(rhs_of("C8") == std::vector<Coef>{4});
    CHECK(rhs_of("C9") == std::vector<Coef>{3});
}

TEST_CASE("generated equations match the classical coefficients") {
    auto S = pipeline_setup("Q8");
    auto G = S.group;
    const int s = G->index_of("s");
    const int t = G->index_of("t");
    auto eqs = build_system(G, S.U, S.sigma, S.pres);
    REQUIRE(eqs.size() == 3);
    CHECK(identity_check(eqs[0].lhs[0], gr_geom(G, s, 4)));
    CHECK(identity_check(eqs[0].lhs[1], gr_zero(G)));
    CHECK(identity_check(eqs[2].lhs[0], gr_neg(gr_geom(G, s, 2))));
    CHECK(identity_check(eqs[2].lhs[1], gr_add(gr_one(G), gr_elem(G, t))));

    auto SD = pipeline_setup("D8");
    auto D = SD.group;
    const int ds = D->index_of("s");
    const int dt = D->index_of("t");
    auto deq = build_system(D, SD.U, SD.sigma, SD.pres);
    REQUIRE(deq.size() == 3);
    CHECK(identity_check(deq[0].lhs[0], gr_zero(D)));
    CHECK(identity_check(deq[0].lhs[1], gr_add(gr_one(D), gr_elem(D, dt))));
    CHECK(identity_check(deq[1].lhs[0], gr_geom(D, ds, 4)));

    auto SG = pipeline_setup("G27");
    auto M = SG.group;
    const int ms = M->index_of("s");
    const int mt = M->index_of("t");
    auto meq = build_system(M, SG.U, SG.sigma, SG.pres);
    REQUIRE(meq.size() == 3);
    CHECK(identity_check(meq[2].lhs[0], gr_sub(gr_geom(M, ms, 4), gr_elem(M, mt))));
    CHECK(identity_check(meq[2].lhs[1], gr_sub(gr_elem(M, pw(M, ms, 4)), gr_one(M))));
}

TEST_CASE("stocked values satisfy both the generated and the classical systems") {
    for (std::string spec : {"Q8", "Q16", "Q32"}) {
        auto S = pipeline_setup(spec);
        CHECK(check_solution(build_system(S.group, S.U, S.sigma, S.pres), S.b_values));
        CHECK(check_solution(quaternion_conditions(S.group), S.b_values));
    }
    for (std::string spec : {"D8", "D16", "D32"}) {
        auto S = pipeline_setup(spec);
        CHECK(check_solution(build_system(S.group, S.U, S.sigma, S.pres), S.b_values));
        CHECK(check_solution(dihedral_conditions(S.group), S.b_values));
    }
    auto S = pipeline_setup("G27");
    auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    auto sol = ansatz_solve(eqs, S.ctx, S.pool);
    REQUIRE(sol.has_value());
    CHECK(check_solution(eqs, *sol));
    CHECK(check_solution(order27_conditions(S.group), *sol));
}

TEST_CASE("relation orientation does not change the solution set") {
    auto S = pipeline_setup("Q8");
    Presentation flipped = S.pres;
    std::swap(flipped.relations[1].first, flipped.relations[1].second);
    auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    auto feqs = build_system(S.group, S.U, S.sigma, flipped);
    CHECK(check_solution(feqs, S.b_values));
    CHECK(feqs[1].rhs == -eqs[1].rhs);
}

TEST_CASE("zero values satisfy only homogeneous systems") {
    auto S = pipeline_setup("Q8");
    auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    std::vector<NCPoly> zeros{nc_zero(), nc_zero()};
    CHECK_FALSE(check_solution(eqs, zeros));
    CHECK(check_solution({eqs[0], eqs[1]}, zeros));
    CHECK_THROWS_AS(check_solution(eqs, {nc_zero()}), BadSolution);
}

TEST_CASE("ansatz search") {
    auto S = pipeline_setup("Q8");
    auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    auto ctx = RingContext::make(S.group, {S.U});
    auto sol = ansatz_solve(eqs, ctx, {0});
    REQUIRE(sol.has_value());
    CHECK(check_solution(eqs, *sol));
    auto again = ansatz_solve(eqs, ctx, {0});
    REQUIRE(again.has_value());
    for (size_t i = 0; i < sol->size(); ++i) CHECK(nc_equal((*sol)[i], (*again)[i]));

    // homogeneous part alone admits the zero solution, and that is what the
    // canonical reduction returns
    auto hom = ansatz_solve({eqs[0], eqs[1]}, ctx, {0});
    REQUIRE(hom.has_value());
    for (const auto& v : *hom) CHECK(v.is_zero());

    // two-variable pool over the two small stabilizers
    auto SD = pipeline_setup("D8");
    auto deq = build_system(SD.group, SD.U, SD.sigma, SD.pres);
    auto dsol = ansatz_solve(deq, SD.ctx, {0, 1});
    REQUIRE(dsol.has_value());
    CHECK(check_solution(deq, *dsol));

    // norm of a single variable always folds to the coset count, so this
    // equation has no solution of the special shape
    auto C4 = build_group("C4");
    auto cctx = RingContext::make(C4, {subgroup_generated(C4, {C4->index_of("s2")})});
    NormEquation odd{{gr_geom(C4, C4->index_of("s"), 4)}, 1};
    CHECK_FALSE(ansatz_solve({odd}, cctx, {0}).has_value());

    CHECK_THROWS_AS(ansatz_solve(eqs, ctx, {3}), UnknownVariable);
}

TEST_CASE("generator values extend to the whole subgroup") {
    auto S = pipeline_setup("Q8");
    auto G = S.group;
    const int s = G->index_of("s");
    auto c = extend_b(S.ctx, S.U, S.sigma, S.pres, S.b_values);
    CHECK(cocycle_value(c, 0).is_zero());
    for (int k = 1; k < 4; ++k)
        CHECK(nc_equal(nf(cocycle_value(c, pw(G, s, k))),
                       nf(apply(gr_geom(G, s, k), S.b_values[0]))));
    CHECK(cocycle_identities_check(c));

    auto SD = pipeline_setup("D8");
    auto D = SD.group;
    const int ds = D->index_of("s");
    auto dc = extend_b(SD.ctx, SD.U, SD.sigma, SD.pres, SD.b_values);
    NCPoly expected = nc_sub(apply(gr_geom(D, ds, 2), SD.b_values[0]), nc_scalar(1));
    CHECK(nc_equal(nf(cocycle_value(dc, D->index_of("s2"))), nf(expected)));
    CHECK(cocycle_identities_check(dc));

    // a perturbed generator value breaks the wraparound consistency
    std::vector<NCPoly> bad = S.b_values;
    bad[0] = nc_add(bad[0], nc_var(S.ctx, 0));
    CHECK_THROWS_AS(extend_b(S.ctx, S.U, S.sigma, S.pres, bad), CocycleLawFailure);
}

TEST_CASE("assembly verifies before returning") {
    // degenerate quotient: the group norm of x is already invariant with
    // trivial quotient norm, so it assembles with a zero witness
    auto C2 = build_group("C2");
    auto whole = whole_subgroup(C2);
    auto c2ctx = RingContext::make(C2, {whole});
    NCPoly x = nc_var(c2ctx, 0);
    NCPoly y = assemble(whole, 0, norm_of(whole, x), nc_zero(), x);
    CHECK(is_norm_one(whole, y));
    CHECK(stats(y).monomials == 2);

    auto C4 = build_group("C4");
    auto U = subgroup_generated(C4, {C4->index_of("s2")});
    auto cctx = RingContext::make(C4, {U});
    NCPoly cx = nc_var(cctx, 0);
    const int cs = C4->index_of("s");
    CHECK_THROWS_AS(assemble(U, cs, cx, nc_zero(), cx), InvarianceFailure);
    CHECK_THROWS_AS(assemble(U, cs, nc_scalar(1), nc_zero(), cx), NormFailure);

    // a valid invariant element still fails when the base element is wrong
    auto S = pipeline_setup("C4");
    auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    auto sol = ansatz_solve(eqs, S.ctx, S.pool);
    REQUIRE(sol.has_value());
    auto c = extend_b(S.ctx, S.U, S.sigma, S.pres, *sol);
    NCPoly px = nc_var(S.ctx, 0);
    NCPoly w = witness(S.U, c, px);
    CHECK_NOTHROW(assemble(S.U, S.sigma, (*sol)[0], w, px));
    CHECK_THROWS_AS(assemble(S.U, S.sigma, (*sol)[0], w, nc_scalar(1)), NormFailure);
}

TEST_CASE("pipeline produces verified elements for every supported family") {
    const struct {
        const char* spec;
        long long monomials;
        int degree;
    } expected[] = {
        {"C4", 7, 3},   {"C8", 31, 3},   {"C9", 23, 3},   {"C16", 127, 3},
        {"C27", 233, 3}, {"Q8", 26, 3},   {"Q16", 116, 3}, {"Q32", 488, 3},
        {"D8", 32, 3},  {"D16", 670, 4}, {"D32", 4282, 4}, {"G27", 1101, 4},
    };
    for (const auto& e : expected) {
        CAPTURE(e.spec);
        NCPoly y = run_pipeline(e.spec);
        auto st = stats(y);
        CHECK(st.monomials == e.monomials);
        CHECK(st.max_degree == e.degree);
        CHECK(is_norm_one(whole_subgroup(y.ctx->group), y));
        CHECK(oracle_check(whole_subgroup(y.ctx->group), y));
    }
}

TEST_CASE("pipeline is deterministic") {
    NCPoly a = run_pipeline("D8");
    NCPoly b = run_pipeline("D8");
    CHECK(a.terms == b.terms);
}

TEST_CASE("pipeline rejects unsupported base groups") {
    CHECK_THROWS_AS(run_pipeline("C1"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("C5"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("C6"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("S3"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("E(2,2)"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("C4xC2"), UnsupportedBaseGroup);
    CHECK_THROWS_AS(run_pipeline("C64"), BoundExceeded);
}
