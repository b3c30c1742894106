#include "normforge/hnf.hpp"

#include <cassert>
#include <utility>

namespace normforge {

namespace {

Coef abs_c(const Coef& a) { return a < 0 ? Coef(-a) : a; }

Coef floor_div(const Coef& a, const Coef& d) {
    Coef q = a / d;
    if (a % d != 0 && (a < 0) != (d < 0)) --q;
    return q;
}

struct Pivot {
    int row;
    int col;
};

// Column echelon form by unimodular column operations, mirrored on T when
// given.  Afterwards every pivot column is zero above its pivot row, pivot
// entries are positive, pivot columns are 0..#pivots-1, and all remaining
// columns are identically zero.
std::vector<Pivot> col_echelon(ZMat& W, ZMat* T) {
    const int m = (int)W.size();
    const int n = m ? (int)W[0].size() : 0;

    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (auto& row : W) std::swap(row[a], row[b]);
        if (T)
            for (auto& row : *T) std::swap(row[a], row[b]);
    };
    auto submul_col = [&](int dst, int src, const Coef& q) {  // col dst -= q * col src
        if (q == 0) return;
        for (auto& row : W) row[dst] -= q * row[src];
        if (T)
            for (auto& row : *T) row[dst] -= q * row[src];
    };
    auto negate_col = [&](int c) {
        for (auto& row : W) row[c] = -row[c];
        if (T)
            for (auto& row : *T) row[c] = -row[c];
    };

    std::vector<Pivot> pivots;
    int lead = 0;
    for (int r = 0; r < m && lead < n; ++r) {
        for (;;) {
            int best = -1;
            for (int c = lead; c < n; ++c)
                if (W[r][c] != 0 && (best < 0 || abs_c(W[r][c]) < abs_c(W[r][best]))) best = c;
            if (best < 0) break;  // row has no pivot among the free columns
            swap_cols(lead, best);
            bool clean = true;
            for (int c = lead + 1; c < n; ++c) {
                if (W[r][c] == 0) continue;
                submul_col(c, lead, W[r][c] / W[r][lead]);
                if (W[r][c] != 0) clean = false;  // remainder left; run another gcd round
            }
            if (clean) {
                if (W[r][lead] < 0) negate_col(lead);
                pivots.push_back({r, lead});
                ++lead;
                break;
            }
        }
    }
    return pivots;
}

}  // namespace

bool solve_integer(const ZMat& A, const ZVec& b, ZVec& x) {
    const int m = (int)A.size();
    const int n = m ? (int)A[0].size() : 0;
    assert((int)b.size() == m);
    for (const auto& row : A) {
        assert((int)row.size() == n);
        (void)row;
    }

    ZMat W = A;
    ZMat T(n, ZVec(n, 0));
    for (int i = 0; i < n; ++i) T[i][i] = 1;
    const auto pivots = col_echelon(W, &T);

    // Forward substitution in pivot order; pivot columns vanish above their
    // pivot row, so earlier rows never involve later pivots.
    ZVec y(n, 0);
    std::vector<int> pivot_col(m, -1);
    for (const auto& pv : pivots) pivot_col[pv.row] = pv.col;
    for (int r = 0; r < m; ++r) {
        Coef s = b[r];
        for (const auto& pv : pivots) {
            if (pv.row >= r) break;
            if (y[pv.col] != 0) s -= W[r][pv.col] * y[pv.col];
        }
        const int c = pivot_col[r];
        if (c >= 0) {
            if (s % W[r][c] != 0) return false;
            y[c] = s / W[r][c];
        } else if (s != 0) {
            return false;
        }
    }

    x.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        Coef s = 0;
        for (int j = 0; j < n; ++j)
            if (y[j] != 0) s += T[i][j] * y[j];
        x[i] = std::move(s);
    }

    // The T columns matching the zero columns of W span the solution lattice;
    // reduce the particular solution against an echelon basis of it.
    const int rank = (int)pivots.size();
    const int k = n - rank;
    if (k > 0) {
        ZMat K(n, ZVec(k));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) K[i][j] = T[i][rank + j];
        const auto kp = col_echelon(K, nullptr);
        for (const auto& pv : kp) {
            const Coef& d = K[pv.row][pv.col];
            const Coef t = floor_div(x[pv.row], d);
            if (t != 0)
                for (int i = 0; i < n; ++i) x[i] -= t * K[i][pv.col];
        }
    }
    return true;
}

}  // namespace normforge
