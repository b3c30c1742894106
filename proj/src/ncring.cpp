#include <normforge/ncring.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace normforge {

ContextPtr RingContext::make(GroupPtr group, std::vector<Subgroup> vars) {
    if (!group) throw SpecError("ring context needs a group");
    for (size_t i = 0; i < vars.size(); i++) {
        if (vars[i].parent.get() != group.get())
            throw ContextMismatch("variable subgroup belongs to a different group");
        for (size_t j = 0; j < i; j++)
            if (vars[j].members == vars[i].members)
                throw SpecError("duplicate variable subgroup in ring context");
    }
    long long nsyms = (long long)group->n * (long long)vars.size();
    if (nsyms > 256)
        throw BoundExceeded("ring context needs " + std::to_string(nsyms) +
                            " symbols; the byte encoding allows 256");
    auto C = std::make_shared<RingContext>();
    C->group = group;
    C->n = group->n;
    C->nsyms = (int)nsyms;
    C->vars = std::move(vars);
    for (const auto& H : C->vars) {
        std::vector<int> cid(C->n, -1);
        std::vector<std::vector<int>> cs;
        std::vector<char> el(C->n, 0);
        for (int g = 0; g < C->n; g++) {
            if (cid[g] >= 0) continue;
            std::vector<int> coset;
            coset.reserve(H.members.size());
            for (int h : H.members) coset.push_back(group->mul(g, h));
            std::sort(coset.begin(), coset.end());
            int id = (int)cs.size();
            for (int k : coset) cid[k] = id;
            el[coset.back()] = 1;
            cs.push_back(std::move(coset));
        }
        C->coset_id.push_back(std::move(cid));
        C->cosets.push_back(std::move(cs));
        C->elim.push_back(std::move(el));
    }
    return C;
}

bool word_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void canon_terms(std::vector<std::pair<std::string, Coef>>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return word_less(x.first, y.first); });
    size_t out = 0;
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i + 1;
        Coef c = std::move(terms[i].second);
        while (j < terms.size() && terms[j].first == terms[i].first) {
            c += terms[j].second;
            j++;
        }
        if (c != 0) {
            if (out != i) terms[out].first = std::move(terms[i].first);
            terms[out].second = std::move(c);
            out++;
        }
        i = j;
    }
    terms.resize(out);
}

NCPoly nc_zero() { return NCPoly{}; }

NCPoly nc_scalar(const Coef& c) {
    NCPoly p;
    if (c != 0) p.terms.emplace_back(std::string(), c);
    return p;
}

static void check_sym(const ContextPtr& ctx, int g, int var) {
    if (!ctx) throw UnknownVariable("symbol requested without a ring context");
    if (var < 0 || var >= ctx->nvars())
        throw UnknownVariable("variable index " + std::to_string(var) + " not in context");
    if (g < 0 || g >= ctx->n)
        throw NoSuchElement("element index " + std::to_string(g) + " out of range");
}

NCPoly nc_sym(const ContextPtr& ctx, int g, int var) {
    check_sym(ctx, g, var);
    NCPoly p;
    p.ctx = ctx;
    p.terms.emplace_back(std::string(1, (char)ctx->sym(g, var)), Coef(1));
    return p;
}

NCPoly nc_var(const ContextPtr& ctx, int var) { return nc_sym(ctx, 0, var); }

NCPoly nc_mono(const ContextPtr& ctx, const Coef& c,
               const std::vector<std::pair<int, int>>& letters) {
    if (c == 0) return nc_zero();
    NCPoly p;
    std::string w;
    for (const auto& [g, v] : letters) {
        check_sym(ctx, g, v);
        w.push_back((char)ctx->sym(g, v));
    }
    if (!letters.empty()) p.ctx = ctx;
    p.terms.emplace_back(std::move(w), c);
    return p;
}

static ContextPtr merge_ctx(const NCPoly& a, const NCPoly& b) {
    if (a.ctx && b.ctx && a.ctx != b.ctx)
        throw MixedContext("operands come from different ring contexts");
    return a.ctx ? a.ctx : b.ctx;
}

NCPoly nc_add(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    r.ctx = merge_ctx(a, b);
    r.terms.reserve(a.terms.size() + b.terms.size());
    r.terms.insert(r.terms.end(), a.terms.begin(), a.terms.end());
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    canon_terms(r.terms);
    return r;
}

NCPoly nc_neg(const NCPoly& a) {
    NCPoly r = a;
    for (auto& t : r.terms) t.second = -t.second;
    return r;
}

NCPoly nc_sub(const NCPoly& a, const NCPoly& b) { return nc_add(a, nc_neg(b)); }

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    r.ctx = merge_ctx(a, b);
    r.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) r.terms.emplace_back(wa + wb, ca * cb);
    canon_terms(r.terms);
    return r;
}

NCPoly nc_scale(const Coef& c, const NCPoly& a) {
    if (c == 0) return nc_zero();
    NCPoly r = a;
    for (auto& t : r.terms) t.second *= c;
    return r;
}

bool nc_equal(const NCPoly& a, const NCPoly& b) { return nc_sub(a, b).is_zero(); }

NCPoly operator+(const NCPoly& a, const NCPoly& b) { return nc_add(a, b); }
NCPoly operator-(const NCPoly& a, const NCPoly& b) { return nc_sub(a, b); }
NCPoly operator-(const NCPoly& a) { return nc_neg(a); }
NCPoly operator*(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b); }

NCPoly act(int g, const NCPoly& p) {
    if (!p.ctx) return p;
    const RingContext& C = *p.ctx;
    if (g < 0 || g >= C.n)
        throw NoSuchElement("element index " + std::to_string(g) + " out of range");
    if (g == 0) return p;
    NCPoly r;
    r.ctx = p.ctx;
    r.terms.reserve(p.terms.size());
    for (const auto& [w, c] : p.terms) {
        std::string v = w;
        for (auto& ch : v) {
            unsigned char s = (unsigned char)ch;
            ch = (char)C.sym(C.group->mul(g, C.sym_elem(s)), C.sym_var(s));
        }
        r.terms.emplace_back(std::move(v), c);
    }
    canon_terms(r.terms);
    return r;
}

GroupRingElement gr_zero(const GroupPtr& G) { return GroupRingElement{G, {}}; }

GroupRingElement gr_elem(const GroupPtr& G, int g, const Coef& c) {
    if (g < 0 || g >= G->n)
        throw NoSuchElement("element index " + std::to_string(g) + " out of range");
    GroupRingElement r{G, {}};
    if (c != 0) r.coef[g] = c;
    return r;
}

GroupRingElement gr_one(const GroupPtr& G) { return gr_elem(G, 0); }

GroupRingElement gr_norm(const Subgroup& S) {
    GroupRingElement r{S.parent, {}};
    for (int g : S.members) r.coef[g] = 1;
    return r;
}

GroupRingElement gr_geom(const GroupPtr& G, int g, int k) {
    GroupRingElement r{G, {}};
    int pw = 0;
    for (int i = 0; i < k; i++) {
        r.coef[pw] += 1;
        if (r.coef[pw] == 0) r.coef.erase(pw);
        pw = G->mul(pw, g);
    }
    return r;
}

static void gr_check(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.group.get() != b.group.get())
        throw MixedContext("group ring elements over different groups");
}

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
    gr_check(a, b);
    GroupRingElement r = a;
    for (const auto& [g, c] : b.coef) {
        r.coef[g] += c;
        if (r.coef[g] == 0) r.coef.erase(g);
    }
    return r;
}

GroupRingElement gr_neg(const GroupRingElement& a) {
    GroupRingElement r = a;
    for (auto& [g, c] : r.coef) c = -c;
    return r;
}

GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b) {
    return gr_add(a, gr_neg(b));
}

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) {
    gr_check(a, b);
    GroupRingElement r{a.group, {}};
    for (const auto& [g, cg] : a.coef)
        for (const auto& [h, ch] : b.coef) {
            int k = a.group->mul(g, h);
            r.coef[k] += cg * ch;
            if (r.coef[k] == 0) r.coef.erase(k);
        }
    return r;
}

GroupRingElement gr_scale(const Coef& c, const GroupRingElement& a) {
    if (c == 0) return gr_zero(a.group);
    GroupRingElement r = a;
    for (auto& [g, v] : r.coef) v *= c;
    return r;
}

bool identity_check(const GroupRingElement& lhs, const GroupRingElement& rhs) {
    gr_check(lhs, rhs);
    return lhs.coef == rhs.coef;
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    return gr_add(a, b);
}
GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    return gr_sub(a, b);
}
GroupRingElement operator-(const GroupRingElement& a) { return gr_neg(a); }
GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    return gr_mul(a, b);
}

NCPoly apply(const GroupRingElement& A, const NCPoly& p) {
    if (p.ctx && A.group.get() != p.ctx->group.get())
        throw MixedContext("group ring element over a different group");
    NCPoly r;
    r.ctx = p.ctx;
    for (const auto& [g, c] : A.coef) {
        NCPoly t = act(g, p);
        for (auto& [w, tc] : t.terms) r.terms.emplace_back(std::move(w), tc * c);
    }
    canon_terms(r.terms);
    return r;
}

NCPoly norm_of(const Subgroup& S, const NCPoly& p) {
    if (p.ctx && S.parent.get() != p.ctx->group.get())
        throw MixedContext("subgroup of a different group");
    NCPoly r;
    r.ctx = p.ctx;
    for (int u : S.members) {
        NCPoly t = act(u, p);
        r.terms.insert(r.terms.end(), t.terms.begin(), t.terms.end());
    }
    canon_terms(r.terms);
    return r;
}

NCPoly normal_form(const NCPoly& p) {
    if (!p.ctx) return p;
    const RingContext& C = *p.ctx;
    std::vector<std::pair<std::string, Coef>> out;
    std::vector<std::pair<std::string, Coef>> parts, next;
    const size_t kMergeAt = size_t(1) << 21;
    for (const auto& [w, c] : p.terms) {
        for (char ch : w)
            if ((unsigned char)ch >= (unsigned)C.nsyms)
                throw UnknownVariable("symbol outside the ring context");
        parts.clear();
        parts.emplace_back(std::string(), c);
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            int v = C.sym_var(s), g = C.sym_elem(s);
            if (!C.elim[v][g]) {
                for (auto& pr : parts) pr.first.push_back((char)s);
            } else {
                // g(x_v) = 1 - sum of the kept symbols of its coset
                const auto& coset = C.cosets[v][C.coset_id[v][g]];
                next.clear();
                next.reserve(parts.size() * coset.size());
                for (auto& pr : parts) {
                    next.push_back(pr);
                    for (int k : coset) {
                        if (k == g) continue;
                        next.emplace_back(pr.first + (char)C.sym(k, v), -pr.second);
                    }
                }
                parts.swap(next);
            }
        }
        out.insert(out.end(), std::make_move_iterator(parts.begin()),
                   std::make_move_iterator(parts.end()));
        if (out.size() >= kMergeAt) canon_terms(out);
    }
    canon_terms(out);
    NCPoly r;
    r.ctx = p.ctx;
    r.terms = std::move(out);
    return r;
}

NCPoly normal_form(const NCPoly& p, const ContextPtr& ctx) {
    if (p.ctx && ctx && p.ctx != ctx)
        throw MixedContext("polynomial belongs to a different ring context");
    return normal_form(p);
}

bool is_norm_one(const Subgroup& S, const NCPoly& p) {
    if (p.ctx && S.parent.get() != p.ctx->group.get())
        throw MixedContext("subgroup of a different group");
    // reduce once up front: translating a reduced element keeps the per-member
    // reductions small, and the action permutes the coset relations
    NCPoly q = normal_form(p);
    std::vector<std::pair<std::string, Coef>> acc;
    acc.emplace_back(std::string(), Coef(-1));
    for (int u : S.members) {
        NCPoly t = normal_form(act(u, q));
        acc.insert(acc.end(), std::make_move_iterator(t.terms.begin()),
                   std::make_move_iterator(t.terms.end()));
        canon_terms(acc);
        }
    return acc.empty();
}

NCPoly substitute(const NCPoly& p, int var, const NCPoly& replacement) {
    if (!p.ctx) return p;
    const RingContext& C = *p.ctx;
    if (var < 0 || var >= C.nvars())
        throw ContextMismatch("substituted variable index out of range");
    ContextPtr target = replacement.ctx ? replacement.ctx : p.ctx;
    std::vector<int> vmap(C.nvars(), -1);
    if (target == p.ctx) {
        for (int v = 0; v < C.nvars(); v++) vmap[v] = v;
    } else {
        if (target->group.get() != C.group.get())
            throw ContextMismatch("replacement lives over a different group");
        for (int v = 0; v < C.nvars(); v++) {
            if (v == var) continue;
            for (int tv = 0; tv < target->nvars(); tv++)
                if (target->vars[tv].members == C.vars[v].members) {
                    vmap[v] = tv;
                    break;
                }
        }
    }
    std::vector<NCPoly> rep_g(C.n);
    std::vector<char> have(C.n, 0);
    std::vector<std::pair<std::string, Coef>> out, parts, next;
    const size_t kMergeAt = size_t(1) << 21;
    for (const auto& [w, c] : p.terms) {
        parts.clear();
        parts.emplace_back(std::string(), c);
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            int v = C.sym_var(s), g = C.sym_elem(s);
            if (v != var) {
                if (vmap[v] < 0)
                    throw ContextMismatch("variable " + std::to_string(v) +
                                          " has no counterpart in the target context");
                char t = (char)target->sym(g, vmap[v]);
                for (auto& pr : parts) pr.first.push_back(t);
            } else {
                if (!have[g]) {
                    rep_g[g] = act(g, replacement);
                    have[g] = 1;
                }
                const auto& rt = rep_g[g].terms;
                next.clear();
                next.reserve(parts.size() * rt.size());
                for (auto& pr : parts)
                    for (const auto& [rw, rc] : rt)
                        next.emplace_back(pr.first + rw, pr.second * rc);
                parts.swap(next);
            }
        }
        out.insert(out.end(), std::make_move_iterator(parts.begin()),
                   std::make_move_iterator(parts.end()));
        if (out.size() >= kMergeAt) canon_terms(out);
    }
    canon_terms(out);
    NCPoly r;
    r.ctx = replacement.ctx ? target : p.ctx;
    r.terms = std::move(out);
    return r;
}

PolyStats stats(const NCPoly& p) {
    PolyStats s;
    s.monomials = (long long)p.terms.size();
    for (const auto& [w, c] : p.terms) s.max_degree = std::max(s.max_degree, (int)w.size());
    return s;
}

static std::string latex_elem(const std::string& name) {
    if (name == "e") return "";
    std::string out;
    size_t i = 0;
    while (i < name.size()) {
        const char* sym = name[i] == 's' ? "\\sigma" : name[i] == 't' ? "\\tau" : nullptr;
        if (!sym) return "\\mathrm{" + name + "}";
        i++;
        std::string digits;
        while (i < name.size() && std::isdigit((unsigned char)name[i])) digits.push_back(name[i++]);
        out += sym;
        if (!digits.empty()) out += "^{" + digits + "}";
    }
    return out;
}

std::string to_latex(const NCPoly& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < p.terms.size(); i++) {
        const auto& [w, c] = p.terms[i];
        Coef a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (i == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (a != 1 || w.empty()) out += a.str();
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            std::string g = latex_elem(p.ctx->group->names[p.ctx->sym_elem(s)]);
            std::string v = "x_{" + std::to_string(p.ctx->sym_var(s)) + "}";
            out += g.empty() ? v : g + "(" + v + ")";
        }
    }
    return out;
}

std::string formula_to_json(const NCPoly& p) {
    if (!p.ctx) throw BadFormulaFile("formula has no ring context to serialize");
    const RingContext& C = *p.ctx;
    nlohmann::ordered_json j;
    j["group"] = C.group->spec;
    auto vars = nlohmann::ordered_json::array();
    for (int v = 0; v < C.nvars(); v++) {
        nlohmann::ordered_json jv;
        jv["id"] = v;
        auto mem = nlohmann::ordered_json::array();
        for (int m : C.vars[v].members) mem.push_back(C.group->names[m]);
        jv["subgroup"] = mem;
        vars.push_back(jv);
    }
    j["vars"] = vars;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [w, c] : p.terms) {
        nlohmann::ordered_json jt;
        jt["c"] = c.str();
        auto jw = nlohmann::ordered_json::array();
        for (char ch : w) {
            unsigned char s = (unsigned char)ch;
            jw.push_back(nlohmann::ordered_json::array(
                {C.group->names[C.sym_elem(s)], C.sym_var(s)}));
        }
        jt["w"] = jw;
        terms.push_back(jt);
    }
    j["terms"] = terms;
    return j.dump(2) + "\n";
}

NCPoly formula_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        GroupPtr G = build_group(j.at("group").get<std::string>());
        std::vector<Subgroup> vars;
        int next_id = 0;
        for (const auto& jv : j.at("vars")) {
            if (jv.at("id").get<int>() != next_id++)
                throw BadFormulaFile("variable ids must be consecutive from 0");
            std::vector<int> members;
            for (const auto& nm : jv.at("subgroup"))
                members.push_back(G->index_of(nm.get<std::string>()));
            std::sort(members.begin(), members.end());
            Subgroup H = subgroup_generated(G, members);
            if (H.members != members)
                throw BadFormulaFile("variable member list is not a subgroup");
            vars.push_back(std::move(H));
        }
        ContextPtr ctx = RingContext::make(G, std::move(vars));
        NCPoly p;
        p.ctx = ctx;
        for (const auto& jt : j.at("terms")) {
            Coef c(jt.at("c").get<std::string>());
            std::string w;
            for (const auto& jl : jt.at("w")) {
                int g = G->index_of(jl.at(0).get<std::string>());
                int v = jl.at(1).get<int>();
                if (v < 0 || v >= ctx->nvars())
                    throw BadFormulaFile("term refers to undeclared variable");
                w.push_back((char)ctx->sym(g, v));
            }
            p.terms.emplace_back(std::move(w), std::move(c));
        }
        canon_terms(p.terms);
        return p;
    } catch (const BadFormulaFile&) {
        throw;
    } catch (const std::exception& e) {
        throw BadFormulaFile(std::string("cannot read formula: ") + e.what());
    }
}

BFramePtr bframe_make(const ContextPtr& ctx, const Subgroup& U, int sigma) {
    if (!ctx) throw ContextMismatch("frame needs a ring context");
    const GroupPtr& G = ctx->group;
    if (U.parent.get() != G.get()) throw ContextMismatch("subgroup of a different group");
    if (!is_normal(G, U)) throw NotNormal("frame subgroup must be normal");
    int p = G->n / U.order();
    bool prime = p >= 2;
    for (int d = 2; d * d <= p; d++)
        if (p % d == 0) prime = false;
    if (!prime) throw BadQuotient("subgroup index " + std::to_string(p) + " is not prime");
    if (sigma < 0 || sigma >= G->n)
        throw NoSuchElement("element index " + std::to_string(sigma) + " out of range");
    if (U.contains(sigma)) throw BadQuotient("direction element lies in the subgroup");
    auto f = std::make_shared<BFrame>();
    f->ctx = ctx;
    f->U = U;
    f->sigma = sigma;
    f->p = p;
    f->class_of.assign(G->n, -1);
    int pw = 0;
    for (int k = 0; k < p; k++) {
        for (int u : U.members) {
            int g = G->mul(pw, u);
            if (f->class_of[g] != -1)
                throw BadQuotient("direction element does not generate the quotient");
            f->class_of[g] = k;
        }
        pw = G->mul(pw, sigma);
    }
    return f;
}

static void bf_check(const BElement& x, const BElement& y) {
    if (x.frame != y.frame) throw MixedContext("b-elements from different frames");
}

BElement b_canonicalize(const BElement& x) {
    BElement r = x;
    if (r.phi_part.empty()) r.phi_part.assign(r.frame->p, 0);
    Coef c = r.phi_part[0];
    if (c != 0) {
        for (auto& v : r.phi_part) v -= c;
        r.ring_part = nc_add(r.ring_part, nc_scalar(c));
    }
    return r;
}

BElement b_zero(const BFramePtr& f) {
    BElement r;
    r.frame = f;
    r.ring_part = nc_zero();
    r.phi_part.assign(f->p, 0);
    return r;
}

BElement b_phi(const BFramePtr& f) {
    BElement r = b_zero(f);
    r.phi_part[0] = 1;
    return b_canonicalize(r);
}

BElement b_from_poly(const BFramePtr& f, const NCPoly& p) {
    if (p.ctx && p.ctx != f->ctx)
        throw MixedContext("polynomial belongs to a different ring context");
    BElement r = b_zero(f);
    r.ring_part = p;
    return r;
}

BElement b_add(const BElement& x, const BElement& y) {
    bf_check(x, y);
    BElement r;
    r.frame = x.frame;
    r.ring_part = nc_add(x.ring_part, y.ring_part);
    r.phi_part = x.phi_part;
    for (int k = 0; k < x.frame->p; k++) r.phi_part[k] += y.phi_part[k];
    return b_canonicalize(r);
}

BElement b_neg(const BElement& x) {
    BElement r = x;
    r.ring_part = nc_neg(r.ring_part);
    for (auto& v : r.phi_part) v = -v;
    return b_canonicalize(r);
}

BElement b_sub(const BElement& x, const BElement& y) { return b_add(x, b_neg(y)); }

BElement b_act(int g, const BElement& x) {
    const BFrame& F = *x.frame;
    if (g < 0 || g >= (int)F.class_of.size())
        throw NoSuchElement("element index " + std::to_string(g) + " out of range");
    BElement r;
    r.frame = x.frame;
    r.ring_part = act(g, x.ring_part);
    r.phi_part.assign(F.p, 0);
    int k = F.class_of[g];
    for (int j = 0; j < F.p; j++) r.phi_part[(j + k) % F.p] = x.phi_part[j];
    return b_canonicalize(r);
}

BElement b_apply(const GroupRingElement& A, const BElement& x) {
    if (A.group.get() != x.frame->ctx->group.get())
        throw MixedContext("group ring element over a different group");
    BElement r = b_zero(x.frame);
    for (const auto& [g, c] : A.coef) {
        BElement t = b_act(g, x);
        t.ring_part = nc_scale(c, t.ring_part);
        for (auto& v : t.phi_part) v *= c;
        r = b_add(r, t);
    }
    return r;
}

bool b_equal(const BElement& x, const BElement& y) {
    BElement d = b_sub(x, y);
    if (!d.ring_part.is_zero()) return false;
    for (const auto& v : d.phi_part)
        if (v != 0) return false;
    return true;
}

NCPoly b_coerce(const BElement& x) {
    BElement c = b_canonicalize(x);
    for (const auto& v : c.phi_part)
        if (v != 0)
            throw NonConstantPhiPart("translate coefficients " +
                                     [&] {
                                         std::string s = "(";
                                         for (size_t i = 0; i < c.phi_part.size(); i++)
                                             s += (i ? "," : "") + c.phi_part[i].str();
                                         return s + ")";
                                     }() +
                                     " do not cancel");
    return c.ring_part;
}

NCPoly cocycle_value(const CocycleOnSubgroup& c, int g) {
    auto it = c.values.find(g);
    if (it == c.values.end())
        throw NoSuchElement("no cocycle value stored for element " + std::to_string(g));
    return it->second;
}

bool cocycle_validate(const CocycleOnSubgroup& c) {
    const GroupPtr& G = c.U.parent;
    if (!normal_form(cocycle_value(c, 0)).is_zero()) return false;
    for (int g : c.U.members)
        for (int h : c.U.members) {
            NCPoly lhs = cocycle_value(c, G->mul(g, h));
            NCPoly rhs = nc_add(cocycle_value(c, g), act(g, cocycle_value(c, h)));
            if (!normal_form(nc_sub(lhs, rhs)).is_zero()) return false;
        }
    return true;
}

bool cocycle_identities_check(const CocycleOnSubgroup& c) {
    const GroupPtr& G = c.U.parent;
    if (!normal_form(cocycle_value(c, 0)).is_zero()) return false;
    for (int g : c.U.members) {
        NCPoly bg = cocycle_value(c, g);
        int N = G->order_of(g);
        int pw = 0;
        for (int i = 0; i < N; i++) {
            NCPoly rhs = apply(gr_geom(G, g, i), bg);
            if (!normal_form(nc_sub(cocycle_value(c, pw), rhs)).is_zero()) return false;
            pw = G->mul(pw, g);
        }
        if (!normal_form(apply(gr_geom(G, g, N), bg)).is_zero()) return false;
        int gi = G->inv(g);
        if (!normal_form(nc_add(cocycle_value(c, gi), act(gi, bg))).is_zero()) return false;
    }
    for (int s : c.U.members)
        for (int t : c.U.members) {
            if (G->mul(t, s) != G->mul(G->inv(s), t)) continue;
            NCPoly v = nc_add(apply(gr_sub(gr_elem(G, s), gr_one(G)), cocycle_value(c, t)),
                              apply(gr_add(gr_one(G), gr_elem(G, G->mul(s, t))),
                                    cocycle_value(c, s)));
            if (!normal_form(v).is_zero()) return false;
        }
    return true;
}

}  // namespace normforge
