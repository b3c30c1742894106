#include <normforge/matrix_oracle.hpp>

#include <cstdint>

namespace normforge {

IntMatrix mat_zero(int n) {
    IntMatrix m;
    m.n = n;
    m.a.assign((size_t)n * n, 0);
    return m;
}

IntMatrix mat_identity(int n) {
    IntMatrix m = mat_zero(n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

static void mat_check(const IntMatrix& x, const IntMatrix& y) {
    if (x.n != y.n) throw DimensionMismatch("matrices of sizes " + std::to_string(x.n) +
                                            " and " + std::to_string(y.n));
}

IntMatrix mat_add(const IntMatrix& x, const IntMatrix& y) {
    mat_check(x, y);
    IntMatrix r = x;
    for (size_t i = 0; i < r.a.size(); i++) r.a[i] += y.a[i];
    return r;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
    mat_check(x, y);
    IntMatrix r = mat_zero(x.n);
    for (int i = 0; i < x.n; i++)
        for (int k = 0; k < x.n; k++) {
            const Coef& c = x.at(i, k);
            if (c == 0) continue;
            for (int j = 0; j < x.n; j++) {
                const Coef& d = y.at(k, j);
                if (d != 0) r.at(i, j) += c * d;
            }
        }
    return r;
}

IntMatrix mat_scale(const Coef& c, const IntMatrix& x) {
    IntMatrix r = x;
    for (auto& v : r.a) v *= c;
    return r;
}

bool mat_equal(const IntMatrix& x, const IntMatrix& y) {
    return x.n == y.n && x.a == y.a;
}

bool mat_is_identity(const IntMatrix& x) {
    for (int i = 0; i < x.n; i++)
        for (int j = 0; j < x.n; j++)
            if (x.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::vector<IntMatrix> regular_action(const GroupPtr& G) {
    std::vector<IntMatrix> ps;
    ps.reserve(G->n);
    for (int g = 0; g < G->n; g++) {
        IntMatrix m = mat_zero(G->n);
        for (int h = 0; h < G->n; h++) m.at(G->mul(g, h), h) = 1;
        ps.push_back(std::move(m));
    }
    return ps;
}

IntMatrix conjugate_by(const GroupPtr& G, int g, const IntMatrix& x) {
    if (x.n != G->n) throw DimensionMismatch("matrix does not match the group order");
    // (P_g X P_g^{-1})[i][j] = X[g^{-1} i][g^{-1} j]
    int gi = G->inv(g);
    IntMatrix r = mat_zero(x.n);
    for (int i = 0; i < x.n; i++)
        for (int j = 0; j < x.n; j++) r.at(i, j) = x.at(G->mul(gi, i), G->mul(gi, j));
    return r;
}

IntMatrix model_norm_one(const GroupPtr& G, const Subgroup& H) {
    if (H.parent.get() != G.get()) throw MixedContext("subgroup of a different group");
    IntMatrix m = mat_zero(G->n);
    for (int r : right_coset_reps(G, H)) m.at(r, r) = 1;
    return m;
}

static bool diag01(const IntMatrix& m) {
    for (int i = 0; i < m.n; i++)
        for (int j = 0; j < m.n; j++) {
            const Coef& v = m.at(i, j);
            if (i != j ? v != 0 : (v != 0 && v != 1)) return false;
        }
    return true;
}

// products of conjugated 0/1 diagonals stay diagonal, so words reduce to
// bitwise intersections of diagonal supports
static IntMatrix evaluate_diag(const NCPoly& p, const GroupPtr& G,
                               const std::vector<IntMatrix>& assignment) {
    const RingContext& C = *p.ctx;
    int n = G->n;
    std::vector<uint64_t> base(assignment.size(), 0);
    for (size_t v = 0; v < assignment.size(); v++)
        for (int i = 0; i < n; i++)
            if (assignment[v].at(i, i) == 1) base[v] |= uint64_t(1) << i;
    std::vector<uint64_t> sym_mask(C.nsyms, 0);
    std::vector<char> have(C.nsyms, 0);
    const uint64_t full = n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    std::vector<Coef> diag(n, 0);
    for (const auto& [w, c] : p.terms) {
        uint64_t mask = full;
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            if (!have[s]) {
                int g = C.sym_elem(s), v = C.sym_var(s);
                uint64_t m = 0;
                int gi = G->inv(g);
                for (int i = 0; i < n; i++)
                    if (base[v] >> G->mul(gi, i) & 1) m |= uint64_t(1) << i;
                sym_mask[s] = m;
                have[s] = 1;
            }
            mask &= sym_mask[s];
            if (!mask) break;
        }
        while (mask) {
            int i = __builtin_ctzll(mask);
            mask &= mask - 1;
            diag[i] += c;
        }
    }
    IntMatrix r = mat_zero(n);
    for (int i = 0; i < n; i++) r.at(i, i) = diag[i];
    return r;
}

static IntMatrix evaluate_general(const NCPoly& p, const GroupPtr& G,
                                  const std::vector<IntMatrix>& assignment) {
    const RingContext& C = *p.ctx;
    int n = G->n;
    std::vector<IntMatrix> sym_val(C.nsyms);
    std::vector<char> have(C.nsyms, 0);
    IntMatrix acc = mat_zero(n);
    for (const auto& [w, c] : p.terms) {
        IntMatrix term = mat_identity(n);
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            if (!have[s]) {
                sym_val[s] = conjugate_by(G, C.sym_elem(s), assignment[C.sym_var(s)]);
                have[s] = 1;
            }
            term = mat_mul(term, sym_val[s]);
        }
        acc = mat_add(acc, mat_scale(c, term));
    }
    return acc;
}

IntMatrix evaluate(const NCPoly& p, const std::vector<IntMatrix>& assignment) {
    if (!p.ctx) {
        if (assignment.empty())
            throw DimensionMismatch("scalar polynomial with no assignment to size the result");
        Coef c = p.terms.empty() ? Coef(0) : p.terms[0].second;
        return mat_scale(c, mat_identity(assignment[0].n));
    }
    const RingContext& C = *p.ctx;
    if ((int)assignment.size() != C.nvars())
        throw DimensionMismatch("assignment covers " + std::to_string(assignment.size()) +
                                " of " + std::to_string(C.nvars()) + " variables");
    for (const auto& m : assignment)
        if (m.n != C.n) throw DimensionMismatch("assignment matrix of size " +
                                                std::to_string(m.n) + " for a group of order " +
                                                std::to_string(C.n));
    bool fast = C.n <= 64;
    for (const auto& m : assignment)
        if (fast && !diag01(m)) fast = false;
    return fast ? evaluate_diag(p, C.group, assignment)
                : evaluate_general(p, C.group, assignment);
}

IntMatrix evaluate(const NCPoly& p) {
    if (!p.ctx) throw DimensionMismatch("scalar polynomial with no context to size the result");
    std::vector<IntMatrix> assignment;
    for (const auto& H : p.ctx->vars) assignment.push_back(model_norm_one(p.ctx->group, H));
    return evaluate(p, assignment);
}

bool oracle_check(const Subgroup& S, const NCPoly& p) {
    const GroupPtr& G = S.parent;
    if (p.ctx && p.ctx->group.get() != G.get())
        throw MixedContext("subgroup of a different group");
    IntMatrix val = p.ctx ? evaluate(p)
                          : mat_scale(p.terms.empty() ? Coef(0) : p.terms[0].second,
                                      mat_identity(G->n));
    IntMatrix acc = mat_zero(G->n);
    for (int u : S.members) acc = mat_add(acc, conjugate_by(G, u, val));
    return mat_is_identity(acc);
}

}  // namespace normforge
