#pragma once

#include <normforge/group.hpp>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace normforge {

// Ring of integer noncommutative polynomials in symbols g(x_H), where H runs
// over a fixed list of subgroups ("variables") and g over the group.  Each
// variable x_H is a formal norm-one element for H: for every left coset gH the
// relation sum_{h in gH} h(x_H) = 1 holds.  normal_form() eliminates, per
// coset, the symbol with the largest element index, so polynomials in the
// remaining symbols are canonical representatives.

struct RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

struct RingContext {
    GroupPtr group;
    std::vector<Subgroup> vars;

    // per variable: coset id of each element, coset member lists (ascending),
    // and whether the element is the eliminated (maximal) one of its coset
    std::vector<std::vector<int>> coset_id;
    std::vector<std::vector<std::vector<int>>> cosets;
    std::vector<std::vector<char>> elim;

    int n = 0;      // |group|
    int nsyms = 0;  // n * vars.size(), must fit in a byte

    static ContextPtr make(GroupPtr group, std::vector<Subgroup> vars);

    int nvars() const { return (int)vars.size(); }
    unsigned char sym(int g, int var) const { return (unsigned char)(var * n + g); }
    int sym_elem(unsigned char s) const { return s % n; }
    int sym_var(unsigned char s) const { return s / n; }
};

// Term = (word, coefficient); a word is a byte string of symbols.  Terms are
// kept sorted in deglex order (length, then bytes) with no zero coefficients.
// ctx == nullptr marks a scalar (all words empty); mixing two distinct
// contexts in one operation throws MixedContext.
struct NCPoly {
    ContextPtr ctx;
    std::vector<std::pair<std::string, Coef>> terms;

    bool is_zero() const { return terms.empty(); }
};

bool word_less(const std::string& a, const std::string& b);
void canon_terms(std::vector<std::pair<std::string, Coef>>& terms);

NCPoly nc_zero();
NCPoly nc_scalar(const Coef& c);
NCPoly nc_sym(const ContextPtr& ctx, int g, int var);  // g(x_var)
NCPoly nc_var(const ContextPtr& ctx, int var);         // x_var
// monomial c * g1(x_v1) g2(x_v2) ...
NCPoly nc_mono(const ContextPtr& ctx, const Coef& c,
               const std::vector<std::pair<int, int>>& letters);

NCPoly nc_add(const NCPoly& a, const NCPoly& b);
NCPoly nc_neg(const NCPoly& a);
NCPoly nc_sub(const NCPoly& a, const NCPoly& b);
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);
NCPoly nc_scale(const Coef& c, const NCPoly& a);
bool nc_equal(const NCPoly& a, const NCPoly& b);

NCPoly operator+(const NCPoly& a, const NCPoly& b);
NCPoly operator-(const NCPoly& a, const NCPoly& b);
NCPoly operator-(const NCPoly& a);
NCPoly operator*(const NCPoly& a, const NCPoly& b);

NCPoly act(int g, const NCPoly& p);

// element of Z[G]
struct GroupRingElement {
    GroupPtr group;
    std::map<int, Coef> coef;
};

GroupRingElement gr_zero(const GroupPtr& G);
GroupRingElement gr_elem(const GroupPtr& G, int g, const Coef& c = 1);
GroupRingElement gr_one(const GroupPtr& G);
GroupRingElement gr_norm(const Subgroup& S);
// 1 + g + g^2 + ... + g^(k-1)
GroupRingElement gr_geom(const GroupPtr& G, int g, int k);
GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_neg(const GroupRingElement& a);
GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_scale(const Coef& c, const GroupRingElement& a);
bool identity_check(const GroupRingElement& lhs, const GroupRingElement& rhs);

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator-(const GroupRingElement& a);
GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

NCPoly apply(const GroupRingElement& A, const NCPoly& p);
NCPoly norm_of(const Subgroup& S, const NCPoly& p);

NCPoly normal_form(const NCPoly& p);
NCPoly normal_form(const NCPoly& p, const ContextPtr& ctx);
bool is_norm_one(const Subgroup& S, const NCPoly& p);
NCPoly substitute(const NCPoly& p, int var, const NCPoly& replacement);

struct PolyStats {
    long long monomials = 0;
    int max_degree = 0;
};
PolyStats stats(const NCPoly& p);
std::string to_latex(const NCPoly& p);

std::string formula_to_json(const NCPoly& p);
NCPoly formula_from_json(const std::string& text);

// Finite fragment of the G-module Hom_Z(Z[G], R) used while translating group
// relations: ring_part plus an integer combination of the translates
// sigma^k(phi) of the indicator function phi of a normal subgroup U of prime
// index p.  Canonical form keeps phi_part[0] == 0 by folding constant vectors
// through sum_k sigma^k(phi) = 1.
struct BFrame {
    ContextPtr ctx;
    Subgroup U;
    int sigma = 0;
    int p = 0;                  // index of U in G
    std::vector<int> class_of;  // g -> k with g in sigma^k U
};
using BFramePtr = std::shared_ptr<const BFrame>;

BFramePtr bframe_make(const ContextPtr& ctx, const Subgroup& U, int sigma);

struct BElement {
    BFramePtr frame;
    NCPoly ring_part;
    std::vector<Coef> phi_part;
};

BElement b_zero(const BFramePtr& f);
BElement b_phi(const BFramePtr& f);                      // phi itself
BElement b_from_poly(const BFramePtr& f, const NCPoly& p);
BElement b_canonicalize(const BElement& x);
BElement b_add(const BElement& x, const BElement& y);
BElement b_neg(const BElement& x);
BElement b_sub(const BElement& x, const BElement& y);
BElement b_act(int g, const BElement& x);
BElement b_apply(const GroupRingElement& A, const BElement& x);
bool b_equal(const BElement& x, const BElement& y);
NCPoly b_coerce(const BElement& x);  // NonConstantPhiPart if phi survives

// map U -> R_univ satisfying beta(gh) = beta(g) + g beta(h)
struct CocycleOnSubgroup {
    Subgroup U;
    std::map<int, NCPoly> values;
};

NCPoly cocycle_value(const CocycleOnSubgroup& c, int g);
bool cocycle_validate(const CocycleOnSubgroup& c);
bool cocycle_identities_check(const CocycleOnSubgroup& c);

}  // namespace normforge
