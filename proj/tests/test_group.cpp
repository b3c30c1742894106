#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "normforge/group.hpp"

using namespace normforge;

namespace {
int idx(const GroupPtr& G, const std::string& name) { return G->index_of(name); }

std::vector<int> members_by_name(const GroupPtr& G, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(idx(G, n));
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("spec strings parse and reject as documented") {
    CHECK(build_group("C4")->n == 4);
    CHECK(build_group("C1")->n == 1);
    CHECK(build_group("E(2,2)")->n == 4);
    CHECK(build_group("E(3,2)")->n == 9);
    CHECK(build_group("Q8")->n == 8);
    CHECK(build_group("D16")->n == 16);
    CHECK(build_group("G27")->n == 27);
    CHECK(build_group("S3")->n == 6);
    CHECK(build_group("Q8xC3")->n == 24);
    CHECK(build_group("C2xC2xC2")->n == 8);

    CHECK_THROWS_AS(build_group("Q12"), SpecError);
    CHECK_THROWS_AS(build_group("Q4"), SpecError);
    CHECK_THROWS_AS(build_group("D6"), SpecError);
    CHECK_THROWS_AS(build_group("G8"), SpecError);
    CHECK_THROWS_AS(build_group("E(4,2)"), SpecError);
    CHECK_THROWS_AS(build_group("E(2,0)"), SpecError);
    CHECK_THROWS_AS(build_group("Z5"), SpecError);
    CHECK_THROWS_AS(build_group(""), SpecError);
    CHECK_THROWS_AS(build_group("C128"), BoundExceeded);
}

TEST_CASE("quaternion table: relations of Q8") {
    auto G = build_group("Q8");
    int s = idx(G, "s"), t = idx(G, "t");
    CHECK(G->mul(t, t) == idx(G, "s2"));                    // t^2 = s^2
    CHECK(G->mul(t, s) == G->mul(G->mul(s, G->mul(s, s)), t));  // ts = s^3 t
    CHECK(G->mul(s, G->mul(s, G->mul(s, s))) == 0);         // s^4 = e
    CHECK(G->order_of(s) == 4);
    CHECK(G->order_of(t) == 4);
    int involutions = 0;
    for (int a = 0; a < G->n; ++a)
        if (G->order_of(a) == 2) ++involutions;
    CHECK(involutions == 1);
}

TEST_CASE("dihedral table: relations of D8") {
    auto G = build_group("D8");
    int s = idx(G, "s"), t = idx(G, "t");
    CHECK(G->mul(t, t) == 0);
    CHECK(G->mul(t, s) == G->mul(G->mul(s, G->mul(s, s)), t));
    int involutions = 0;
    for (int a = 0; a < G->n; ++a)
        if (G->order_of(a) == 2) ++involutions;
    CHECK(involutions == 5);
}

TEST_CASE("G27 table: relations of the modular group of order 27") {
    auto G = build_group("G27");
    int s = idx(G, "s"), t = idx(G, "t");
    CHECK(G->order_of(s) == 9);
    CHECK(G->order_of(t) == 3);
    // ts = s^4 t
    int s4 = G->mul(G->mul(s, s), G->mul(s, s));
    CHECK(G->mul(t, s) == G->mul(s4, t));
    CHECK(exponent_members(G, whole_subgroup(G).members) == 9);
}

TEST_CASE("product groups use row-major indexing and tuple names") {
    auto G = build_group("Q8xC3");
    CHECK(G->names[0] == "(e,e)");
    CHECK(G->names[4] == "(s,s)");
    auto A = build_group("Q8");
    auto B = build_group("C3");
    auto P = product_group(A, B);
    CHECK(P->table == G->table);
    CHECK(P->names == G->names);

    // ternary spec agrees with a fold of binary products elementwise
    auto T = build_group("C2xC2xC2");
    auto F = product_group(product_group(build_group("C2"), build_group("C2")), build_group("C2"));
    CHECK(T->table == F->table);
}

TEST_CASE("index_of and names invert each other") {
    auto G = build_group("D16");
    for (int a = 0; a < G->n; ++a) CHECK(idx(G, G->names[a]) == a);
    CHECK_THROWS_AS(idx(G, "bogus"), NoSuchElement);
}

TEST_CASE("table validation rejects non-groups") {
    // order 2 with a non-associative/identity-violating table
    CHECK_THROWS_AS(FiniteGroup::make("", 2, {"e", "a"}, {0, 1, 1, 1}, {1}), NotAGroup);
    CHECK_THROWS_AS(FiniteGroup::make("", 2, {"e", "e"}, {0, 1, 1, 0}, {1}), NotAGroup);
    CHECK_THROWS_AS(FiniteGroup::make("", 2, {"e", "a"}, {0, 1, 1, 0}, {}), NotAGroup);
}

TEST_CASE("subgroup generation") {
    auto G = build_group("Q8");
    CHECK(subgroup_generated(G, {}).members == std::vector<int>{0});
    auto C = subgroup_generated(G, {idx(G, "s2")});
    CHECK(C.members == std::vector<int>{0, idx(G, "s2")});

    auto D = build_group("D8");
    auto U = subgroup_generated(D, {idx(D, "s2"), idx(D, "t")});
    CHECK(U.order() == 4);
    CHECK(U.members == members_by_name(D, {"e", "s2", "t", "s2t"}));
}

TEST_CASE("subgroup enumeration counts") {
    CHECK(all_subgroups(build_group("Q8")).size() == 6);
    CHECK(all_subgroups(build_group("D8")).size() == 10);
    CHECK(all_subgroups(build_group("C4")).size() == 3);
    // sorted by (order, members)
    auto subs = all_subgroups(build_group("D8"));
    for (size_t i = 1; i < subs.size(); ++i) {
        CHECK(subs[i - 1].members.size() <= subs[i].members.size());
    }
}

TEST_CASE("elementary abelian subgroup lattice") {
    auto Q = build_group("Q8");
    auto e = elementary_abelian_subgroups(Q);
    REQUIRE(e.size() == 1);
    CHECK(e[0].order() == 2);

    auto D = build_group("D8");
    auto reps = conjugacy_reps_maximal_elementary_abelian(D);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].members == members_by_name(D, {"e", "s2", "t", "s2t"}));
    CHECK(reps[1].members == members_by_name(D, {"e", "s2", "st", "s3t"}));

    auto C = build_group("C3");
    auto ec = elementary_abelian_subgroups(C);
    REQUIRE(ec.size() == 1);
    CHECK(ec[0].order() == 3);

    // brute-force cross-check of membership for a mixed group
    auto G = build_group("D16");
    std::set<std::vector<int>> listed;
    for (auto& S : elementary_abelian_subgroups(G)) listed.insert(S.members);
    for (auto& S : all_subgroups(G)) {
        bool expect = S.order() > 1 && is_abelian_members(G, S.members) &&
                      exponent_members(G, S.members) == 2;
        CHECK(listed.count(S.members) == (expect ? 1u : 0u));
    }
}

TEST_CASE("center and commutator") {
    auto Q16 = build_group("Q16");
    CHECK(center(Q16).members == std::vector<int>{0, 4});
    auto G27 = build_group("G27");
    CHECK(center(G27).members == std::vector<int>{0, 3, 6});

    CHECK(commutator_subgroup(build_group("Q8")).members == std::vector<int>{0, 2});
    CHECK(commutator_subgroup(build_group("S3")).members == std::vector<int>{0, 1, 2});
    CHECK(commutator_subgroup(build_group("E(2,3)")).members == std::vector<int>{0});

    auto A = build_group("C4xC2");
    CHECK(center(A).order() == 8);
}

TEST_CASE("normality and conjugation") {
    auto D = build_group("D8");
    auto T = subgroup_generated(D, {idx(D, "t")});
    CHECK_FALSE(is_normal(D, T));
    auto U = subgroup_generated(D, {idx(D, "s2"), idx(D, "t")});
    CHECK(is_normal(D, U));
    auto Tc = conjugate_subgroup(D, idx(D, "s"), T);
    CHECK(Tc.members == members_by_name(D, {"e", "s2t"}));
}

TEST_CASE("coset representatives partition the group") {
    auto D = build_group("D8");
    auto U2 = subgroup_generated(D, {idx(D, "s2"), idx(D, "st")});
    auto reps = left_coset_reps(D, U2);
    CHECK(reps == std::vector<int>{0, 1});

    CHECK(left_coset_reps(D, trivial_subgroup(D)).size() == 8);
    CHECK(left_coset_reps(D, whole_subgroup(D)) == std::vector<int>{0});

    // translates partition: every element covered exactly once, both sides
    for (auto& S : all_subgroups(D)) {
        for (bool left : {true, false}) {
            auto r = left ? left_coset_reps(D, S) : right_coset_reps(D, S);
            std::vector<int> hit(D->n, 0);
            for (int g : r)
                for (int m : S.members) ++hit[left ? D->mul(g, m) : D->mul(m, g)];
            CHECK(std::count(hit.begin(), hit.end(), 1) == D->n);
        }
    }
}

TEST_CASE("quotient construction and preimage") {
    auto Q = build_group("Q8");
    auto N = subgroup_generated(Q, {idx(Q, "s2")});
    auto q = quotient(Q, N);
    CHECK(q.group->n == 4);
    CHECK(is_elementary_abelian(q.group));
    CHECK(q.group->names == std::vector<std::string>{"e", "s", "t", "st"});

    // projection is a homomorphism
    for (int a = 0; a < Q->n; ++a)
        for (int b = 0; b < Q->n; ++b)
            CHECK(q.proj[Q->mul(a, b)] == q.group->mul(q.proj[a], q.proj[b]));

    // preimage inverts projection on subgroups
    for (auto& Sq : all_subgroups(q.group)) {
        auto S = preimage(q, Sq.members);
        CHECK(S.order() == N.order() * Sq.order());
        std::vector<int> proj_back;
        for (int g : S.members) proj_back.push_back(q.proj[g]);
        std::sort(proj_back.begin(), proj_back.end());
        proj_back.erase(std::unique(proj_back.begin(), proj_back.end()), proj_back.end());
        CHECK(proj_back == Sq.members);
    }

    auto G27 = build_group("G27");
    auto U = subgroup_generated(G27, {idx(G27, "s3"), idx(G27, "t")});
    CHECK(U.order() == 9);
    auto q27 = quotient(G27, U);
    CHECK(q27.group->n == 3);
    CHECK(q27.proj[idx(G27, "s")] != 0);

    auto D = build_group("D8");
    auto Td = subgroup_generated(D, {idx(D, "t")});
    CHECK_THROWS_AS(quotient(D, Td), NotNormal);
}

TEST_CASE("trivial quotients") {
    auto G = build_group("D8");
    auto q1 = quotient(G, trivial_subgroup(G));
    CHECK(q1.group->n == 8);
    CHECK(find_isomorphism(q1.group, G).has_value());
    auto q2 = quotient(G, whole_subgroup(G));
    CHECK(q2.group->n == 1);
}

TEST_CASE("subgroup repackaged as a group") {
    auto Q16 = build_group("Q16");
    auto subs = all_subgroups(Q16);
    bool found_q8 = false;
    for (auto& S : subs) {
        if (S.order() != 8) continue;
        auto E = subgroup_as_group(Q16, S);
        if (find_isomorphism(E.group, build_group("Q8"))) {
            found_q8 = true;
            // embedding respects multiplication
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b)
                    CHECK(E.embed[E.group->mul(a, b)] == Q16->mul(E.embed[a], E.embed[b]));
        }
    }
    CHECK(found_q8);
}

TEST_CASE("isomorphism search separates look-alikes") {
    CHECK_FALSE(find_isomorphism(build_group("Q8"), build_group("D8")).has_value());
    CHECK_FALSE(find_isomorphism(build_group("C8"), build_group("C4xC2")).has_value());
    CHECK(find_isomorphism(build_group("E(2,2)"), build_group("C2xC2")).has_value());
    auto phi = find_isomorphism(build_group("C4xC4"), build_group("C4xC4"));
    REQUIRE(phi.has_value());
    CHECK((*phi)[0] == 0);
}

TEST_CASE("p-group predicates") {
    CHECK(p_group_prime(8) == 2);
    CHECK(p_group_prime(27) == 3);
    CHECK(p_group_prime(1) == 0);
    CHECK(p_group_prime(6) == 0);
    CHECK(p_group_prime(12) == 0);
}

TEST_CASE("sylow subgroups of S3 and Q8xC3") {
    auto S = build_group("S3");
    CHECK(sylow_subgroup(S, 2).members == members_by_name(S, {"e", "t"}));
    CHECK(sylow_subgroup(S, 3).members == members_by_name(S, {"e", "s", "s2"}));

    auto G = build_group("Q8xC3");
    CHECK(sylow_subgroup(G, 2).order() == 8);
    CHECK(sylow_subgroup(G, 3).order() == 3);
    CHECK(sylow_subgroup(G, 5).order() == 1);
}

TEST_CASE("classification of small p-groups") {
    CHECK(classify(build_group("C4")) == GroupClass::AlmostExtraspecial);
    CHECK(classify(build_group("C9")) == GroupClass::AlmostExtraspecial);
    CHECK(classify(build_group("Q8")) == GroupClass::Extraspecial);
    CHECK(classify(build_group("D8")) == GroupClass::Extraspecial);
    CHECK(classify(build_group("G27")) == GroupClass::Extraspecial);
    CHECK(classify(build_group("E(2,2)")) == GroupClass::ElementaryAbelian);
    CHECK(classify(build_group("C2")) == GroupClass::ElementaryAbelian);
    CHECK(classify(build_group("C8")) == GroupClass::Other);
    CHECK(classify(build_group("C4xC2")) == GroupClass::Other);
    CHECK(classify(build_group("Q16")) == GroupClass::Other);
    CHECK_THROWS_AS(classify(build_group("S3")), NotAPGroup);

    // extraspecial implies |Z| = p with elementary abelian central quotient
    for (const char* spec : {"Q8", "D8", "G27"}) {
        auto G = build_group(spec);
        auto Z = center(G);
        CHECK(Z.order() == p_group_prime(G->n));
        CHECK(is_elementary_abelian(quotient(G, Z).group));
    }
}

TEST_CASE("central reduction subgroup choice") {
    auto C8 = build_group("C8");
    CHECK(central_reduction_subgroup(C8).members == std::vector<int>{0, 4});
    auto A = build_group("C4xC2");
    auto N = central_reduction_subgroup(A);
    CHECK(N.order() == 2);
    CHECK_FALSE(is_elementary_abelian(quotient(A, N).group));
    CHECK_THROWS_AS(central_reduction_subgroup(build_group("Q8")), NoSuchElement);
    CHECK_THROWS_AS(central_reduction_subgroup(build_group("S3")), NotAPGroup);
}

TEST_CASE("extraspecial-or-almost subquotient labels") {
    auto labels_q16 = f_set(build_group("Q16"));
    CHECK(labels_q16 == std::vector<std::string>{"C4", "D8", "Q8"});
    auto labels_d16 = f_set(build_group("D16"));
    CHECK(labels_d16 == std::vector<std::string>{"C4", "D8"});
    CHECK(f_set(build_group("E(2,3)")).empty());
    CHECK(f_set(build_group("G27")) == std::vector<std::string>{"C9", "G27"});
    CHECK_THROWS_AS(f_set(build_group("Q16"), 8), BoundExceeded);
}

TEST_CASE("group JSON shape") {
    auto j = group_to_json(build_group("C2"));
    CHECK(j.find("\"spec\": \"C2\"") != std::string::npos);
    CHECK(j.find("\"order\": 2") != std::string::npos);
    CHECK(j.find("\"mul\"") != std::string::npos);
}
