#include "normforge/method_engine.hpp"

#include <algorithm>
#include <deque>

#include "normforge/cocycle_solver.hpp"
#include "normforge/hnf.hpp"

namespace normforge {

namespace {

int pw(const GroupPtr& G, int g, int k) {
    int r = 0;
    for (int i = 0; i < k; ++i) r = G->mul(r, g);
    return r;
}

Coef scalar_of(const NCPoly& p) {
    if (p.is_zero()) return 0;
    if (p.terms.size() == 1 && p.terms[0].first.empty()) return p.terms[0].second;
    throw NonConstantPhiPart("relation right-hand side does not reduce to an integer");
}

// Prefix-weighted expansion of one word: coefficients of the generator
// values, plus the accumulated counting part.
struct WordExpansion {
    std::vector<GroupRingElement> coeff;
    BElement counting;
};

WordExpansion expand_word(const GroupPtr& G, const std::vector<int>& elems,
                          const std::vector<BElement>& alpha_of_gen, const BFramePtr& frame,
                          const GenWord& word) {
    WordExpansion out;
    out.coeff.assign(elems.size(), gr_zero(G));
    out.counting = b_zero(frame);
    int prefix = 0;
    for (int i : word) {
        if (i < 0 || i >= (int)elems.size()) throw BadPresentation("word letter out of range");
        out.coeff[i] = gr_add(out.coeff[i], gr_elem(G, prefix));
        out.counting = b_add(out.counting, b_act(prefix, alpha_of_gen[i]));
        prefix = G->mul(prefix, elems[i]);
    }
    return out;
}

BElement alpha_value(const BFramePtr& frame, int g) {
    const int k = frame->class_of.at(g);
    if (k == 0) return b_zero(frame);
    return b_apply(gr_geom(frame->ctx->group, frame->sigma, k), b_phi(frame));
}

std::vector<Subgroup> maximal_proper_subgroups(const GroupPtr& G) {
    auto all = all_subgroups(G);
    all.pop_back();  // sorted by order: the last entry is G itself
    std::vector<Subgroup> out;
    for (const auto& S : all) {
        bool maximal = true;
        for (const auto& T : all)
            if (T.order() > S.order() &&
                std::includes(T.members.begin(), T.members.end(), S.members.begin(),
                              S.members.end())) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(S);
    }
    return out;
}

}  // namespace

std::vector<int> presentation_elements(const GroupPtr& G, const Presentation& pres) {
    if (pres.gens.empty()) throw BadPresentation("presentation has no generators");
    std::vector<int> elems;
    elems.reserve(pres.gens.size());
    for (const auto& name : pres.gens) {
        try {
            elems.push_back(G->index_of(name));
        } catch (const NoSuchElement&) {
            throw BadPresentation("unknown generator '" + name + "'");
        }
    }
    if (subgroup_generated(G, elems).order() != G->n)
        throw BadPresentation("the listed generators do not generate the group");
    auto eval = [&](const GenWord& w) {
        int g = 0;
        for (int i : w) {
            if (i < 0 || i >= (int)elems.size())
                throw BadPresentation("word letter out of range");
            g = G->mul(g, elems[i]);
        }
        return g;
    };
    for (const auto& rel : pres.relations)
        if (eval(rel.first) != eval(rel.second))
            throw BadPresentation("relation does not hold in the group");
    return elems;
}

std::function<BElement(int)> build_alpha(const ContextPtr& ctx, const Subgroup& U, int sigma) {
    auto frame = bframe_make(ctx, U, sigma);
    return [frame](int g) { return alpha_value(frame, g); };
}

std::vector<NormEquation> build_system(const GroupPtr& G, const Subgroup& U, int sigma,
                                       const Presentation& pres) {
    const auto elems = presentation_elements(G, pres);
    auto ctx = RingContext::make(G, {U});
    auto frame = bframe_make(ctx, U, sigma);
    std::vector<BElement> alpha_of_gen;
    alpha_of_gen.reserve(elems.size());
    for (int e : elems) alpha_of_gen.push_back(alpha_value(frame, e));

    std::vector<NormEquation> eqs;
    eqs.reserve(pres.relations.size());
    for (const auto& rel : pres.relations) {
        auto lhs = expand_word(G, elems, alpha_of_gen, frame, rel.first);
        auto rhs = expand_word(G, elems, alpha_of_gen, frame, rel.second);
        NormEquation eq;
        eq.lhs.reserve(elems.size());
        for (size_t i = 0; i < elems.size(); ++i)
            eq.lhs.push_back(gr_sub(lhs.coeff[i], rhs.coeff[i]));
        eq.rhs = scalar_of(b_coerce(b_sub(lhs.counting, rhs.counting)));
        eqs.push_back(std::move(eq));
    }
    return eqs;
}

bool check_solution(const std::vector<NormEquation>& eqs, const std::vector<NCPoly>& b_values) {
    for (const auto& eq : eqs) {
        if (eq.lhs.size() != b_values.size())
            throw BadSolution("value count does not match the system");
        NCPoly acc = nc_zero();
        for (size_t i = 0; i < eq.lhs.size(); ++i)
            acc = nc_add(acc, apply(eq.lhs[i], b_values[i]));
        if (!normal_form(nc_sub(acc, nc_scalar(eq.rhs))).is_zero()) return false;
    }
    return true;
}

std::optional<std::vector<NCPoly>> ansatz_solve(const std::vector<NormEquation>& eqs,
                                                const ContextPtr& ctx,
                                                const std::vector<int>& pool) {
    if (!ctx) throw SpecError("ansatz needs a ring context");
    const GroupPtr& G = ctx->group;
    const int n = G->n;
    if (n > 32) throw BoundExceeded("ansatz search is bounded to groups of order 32");
    for (int v : pool)
        if (v < 0 || v >= ctx->nvars())
            throw UnknownVariable("ansatz pool index out of range");
    if (eqs.empty()) return std::vector<NCPoly>{};
    const int ngens = (int)eqs[0].lhs.size();
    const int npool = (int)pool.size();

    // row offsets inside one equation block: one row per kept symbol of each
    // pool variable, plus a trailing constant row
    std::vector<std::vector<int>> offset(npool, std::vector<int>(n, -1));
    int kept_rows = 0;
    for (int h = 0; h < npool; ++h)
        for (int g = 0; g < n; ++g)
            if (!ctx->elim[pool[h]][g]) offset[h][g] = kept_rows++;
    const int block = kept_rows + 1;
    const int ncols = ngens * npool * n;

    ZMat A((int)eqs.size() * block, ZVec(ncols, 0));
    ZVec rhs((int)eqs.size() * block, 0);
    for (size_t e = 0; e < eqs.size(); ++e) {
        if ((int)eqs[e].lhs.size() != ngens) throw BadSolution("ragged equation system");
        const int base = (int)e * block;
        rhs[base + kept_rows] = eqs[e].rhs;
        for (int i = 0; i < ngens; ++i) {
            for (const auto& [h, c] : eqs[e].lhs[i].coef) {
                for (int hp = 0; hp < npool; ++hp) {
                    const int var = pool[hp];
                    for (int g = 0; g < n; ++g) {
                        const int col = (i * npool + hp) * n + g;
                        const int t = G->mul(h, g);
                        if (!ctx->elim[var][t]) {
                            A[base + offset[hp][t]][col] += c;
                        } else {
                            // t(x_var) = 1 - sum of the kept symbols of its coset
                            A[base + kept_rows][col] += c;
                            for (int g2 : ctx->cosets[var][ctx->coset_id[var][t]])
                                if (g2 != t) A[base + offset[hp][g2]][col] -= c;
                        }
                    }
                }
            }
        }
    }

    ZVec sol;
    if (!solve_integer(A, rhs, sol)) return std::nullopt;

    std::vector<NCPoly> out(ngens, nc_zero());
    for (int i = 0; i < ngens; ++i)
        for (int hp = 0; hp < npool; ++hp)
            for (int g = 0; g < n; ++g) {
                const Coef& c = sol[(i * npool + hp) * n + g];
                if (c != 0) out[i] = nc_add(out[i], nc_mono(ctx, c, {{g, pool[hp]}}));
            }
    return out;
}

CocycleOnSubgroup extend_b(const ContextPtr& ctx, const Subgroup& U, int sigma,
                           const Presentation& pres, const std::vector<NCPoly>& b_values) {
    if (!ctx) throw SpecError("extend_b needs a ring context");
    const GroupPtr& G = ctx->group;
    const auto elems = presentation_elements(G, pres);
    if (b_values.size() != elems.size())
        throw BadSolution("value count does not match the presentation");
    auto frame = bframe_make(ctx, U, sigma);

    // canonical words: breadth first over right multiplication, generator
    // order breaking ties, so every element gets its least shortest word
    std::vector<GenWord> word(G->n);
    std::vector<char> seen(G->n, 0);
    seen[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int g = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < elems.size(); ++i) {
            const int h = G->mul(g, elems[i]);
            if (seen[h]) continue;
            seen[h] = 1;
            word[h] = word[g];
            word[h].push_back((int)i);
            queue.push_back(h);
        }
    }

    std::vector<BElement> letter;  // alpha(gen) - value(gen), the summand of one step
    letter.reserve(elems.size());
    for (size_t i = 0; i < elems.size(); ++i)
        letter.push_back(b_sub(alpha_value(frame, elems[i]), b_from_poly(frame, b_values[i])));

    CocycleOnSubgroup c;
    c.U = U;
    for (int u : U.members) {
        BElement acc = b_zero(frame);
        int prefix = 0;
        for (int i : word[u]) {
            acc = b_add(acc, b_act(prefix, letter[i]));
            prefix = G->mul(prefix, elems[i]);
        }
        c.values[u] = nc_neg(b_coerce(acc));
    }
    if (!cocycle_validate(c))
        throw CocycleLawFailure("extended subgroup values break the cocycle law");
    return c;
}

NCPoly assemble(const Subgroup& U, int sigma, const NCPoly& b_sigma, const NCPoly& w,
                const NCPoly& x) {
    const GroupPtr& G = U.parent;
    if (!G) throw SpecError("assemble needs a subgroup with a parent group");
    const int p = G->n / U.order();
    NCPoly a = nc_add(b_sigma, nc_sub(w, act(sigma, w)));
    for (int u : U.members)
        if (!normal_form(nc_sub(act(u, a), a)).is_zero())
            throw InvarianceFailure("assembled element moves under " + G->names[u]);
    if (!normal_form(nc_sub(apply(gr_geom(G, sigma, p), a), nc_scalar(1))).is_zero())
        throw NormFailure("quotient norm of the assembled element is not 1");
    NCPoly y = nc_mul(a, x);
    if (!is_norm_one(whole_subgroup(G), y))
        throw NormFailure("assembled element is not norm one over the group");
    return y;
}

PipelineSetup pipeline_setup(const std::string& spec) {
    const GroupSpec gs = parse_spec(spec);
    GroupPtr G = build_group(gs);
    PipelineSetup S;
    S.group = G;
    switch (gs.family) {
        case Family::Quaternion: {
            const int m = gs.n;
            const int s = G->index_of("s");
            const int t = G->index_of("t");
            S.U = subgroup_generated(G, {s});
            S.sigma = t;
            S.pres.gens = {"s", "t"};
            GenWord flipped(m / 2 - 1, 0);  // t s = s^(m/2-1) t
            flipped.push_back(1);
            S.pres.relations = {{GenWord(m / 2, 0), {}},
                                {{1, 0}, flipped},
                                {{1, 1}, GenWord(m / 4, 0)}};
            S.ctx = RingContext::make(G, {S.U});
            const NCPoly x = nc_var(S.ctx, 0);
            S.b_values = {nc_sub(x, act(G->mul(s, t), x)),
                          apply(gr_geom(G, s, m / 4), x)};
            return S;
        }
        case Family::Dihedral: {
            const int m = gs.n;
            const int s = G->index_of("s");
            const int t = G->index_of("t");
            const int u = pw(G, s, m / 4);  // the central involution
            S.U = subgroup_generated(G, {G->mul(s, s), t});
            S.sigma = s;
            S.pres.gens = {"s", "t"};
            S.pres.relations = {
                {{1, 1}, {}},
                {GenWord(m / 2, 0), {}},
                {{0, 1, 0, 1}, {}},
            };
            const Subgroup U2 = subgroup_generated(G, {u, G->mul(s, t)});
            S.ctx = RingContext::make(G, {S.U, U2});
            const NCPoly x2 = nc_var(S.ctx, 1);
            S.b_values = {nc_add(act(s, x2), act(G->mul(u, t), x2)),
                          apply(gr_mul(gr_sub(gr_elem(G, t), gr_one(G)),
                                       gr_add(gr_one(G), gr_elem(G, u))),
                                x2)};
            return S;
        }
        case Family::ModMax: {
            if (gs.n != 27)
                throw UnsupportedBaseGroup("only the order-27 member of this family is handled");
            const int s = G->index_of("s");
            const int t = G->index_of("t");
            S.U = subgroup_generated(G, {pw(G, s, 3), t});
            S.sigma = s;
            S.pres.gens = {"s", "t"};
            S.pres.relations = {
                {{1, 1, 1}, {}},
                {GenWord(9, 0), {}},
                {{0, 0, 0, 0, 1}, {1, 0}},
            };
            break;  // ansatz route below
        }
        case Family::Cyclic: {
            const int m = gs.n;
            const int p = p_group_prime(m);
            if (m == 1 || p == 0 || m == p)
                throw UnsupportedBaseGroup(
                    "pipeline needs a cyclic group of order p^k with k >= 2");
            const int s = G->index_of("s");
            S.U = subgroup_generated(G, {pw(G, s, p)});
            S.sigma = s;
            S.pres.gens = {"s"};
            S.pres.relations = {{GenWord(m, 0), {}}};
            break;  // ansatz route below
        }
        default:
            throw UnsupportedBaseGroup("no pipeline route for '" + spec + "'");
    }

    // ansatz route: solve over all maximal proper subgroups, keeping x over U
    // as variable 0
    std::vector<Subgroup> vars = {S.U};
    std::vector<int> pool;
    for (const auto& M : maximal_proper_subgroups(G)) {
        if (M == S.U) {
            pool.push_back(0);
        } else {
            pool.push_back((int)vars.size());
            vars.push_back(M);
        }
    }
    S.ctx = RingContext::make(G, std::move(vars));
    S.pool = std::move(pool);
    return S;
}

NCPoly run_pipeline(const std::string& spec) {
    PipelineSetup S = pipeline_setup(spec);
    const auto eqs = build_system(S.group, S.U, S.sigma, S.pres);
    std::vector<NCPoly> values;
    if (!S.b_values.empty()) {
        values = S.b_values;
        if (!check_solution(eqs, values))
            throw BadSolution("stocked values rejected by the generated system");
    } else {
        auto found = ansatz_solve(eqs, S.ctx, S.pool);
        if (!found)
            throw UnsupportedBaseGroup("no solution of the expected shape for '" + spec + "'");
        values = std::move(*found);
        if (!check_solution(eqs, values))
            throw BadSolution("ansatz solution fails the system re-check");
    }
    const auto bU = extend_b(S.ctx, S.U, S.sigma, S.pres, values);
    const NCPoly x = nc_var(S.ctx, 0);
    const NCPoly w = witness(S.U, bU, x);
    const auto elems = presentation_elements(S.group, S.pres);
    int pos = -1;
    for (size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == S.sigma) pos = (int)i;
    if (pos < 0) throw BadPresentation("direction element is not a presentation generator");
    return assemble(S.U, S.sigma, values[pos], w, x);
}

}  // namespace normforge
