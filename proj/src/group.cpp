#include "normforge/group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace normforge {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// name of sigma^i tau^j in the two-generator families
std::string power_name(int i, int j) {
    std::string s;
    if (i == 1) s += "s";
    else if (i > 1) s += "s" + std::to_string(i);
    if (j == 1) s += "t";
    else if (j > 1) s += "t" + std::to_string(j);
    return s.empty() ? "e" : s;
}

// sigma^ns = 1, tau^nt = sigma^wrap, tau sigma tau^-1 = sigma^conj
GroupPtr metacyclic(const std::string& spec, int ns, int nt, int conj, int wrap) {
    const int n = ns * nt;
    std::vector<std::string> names(n);
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < ns; ++i) names[i + ns * j] = power_name(i, j);

    // tau^j sigma^k = sigma^(k*conj^j) tau^j
    std::vector<int> conj_pow(nt, 1);
    for (int j = 1; j < nt; ++j) conj_pow[j] = (conj_pow[j - 1] * conj) % ns;

    std::vector<int> table(n * n);
    for (int a = 0; a < n; ++a) {
        int i = a % ns, j = a / ns;
        for (int b = 0; b < n; ++b) {
            int k = b % ns, l = b / ns;
            int ii = (i + k * conj_pow[j]) % ns;
            int jj = j + l;
            if (jj >= nt) {
                jj -= nt;
                ii = (ii + wrap) % ns;
            }
            table[a * n + b] = ii + ns * jj;
        }
    }
    std::vector<int> gens = {1};
    if (nt > 1) gens.push_back(ns);
    return FiniteGroup::make(spec, n, std::move(names), std::move(table), std::move(gens));
}

GroupPtr cyclic_group(const std::string& spec, int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = power_name(i, 0);
    std::vector<int> table(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
    std::vector<int> gens;
    if (n > 1) gens.push_back(1);
    return FiniteGroup::make(spec, n, std::move(names), std::move(table), std::move(gens));
}

GroupPtr product_group_flat(const std::string& spec, const std::vector<GroupPtr>& factors) {
    long long order = 1;
    for (const auto& f : factors) {
        order *= f->n;
        if (order > max_group_order())
            throw BoundExceeded("product order exceeds NORMFORGE_MAX_ORDER");
    }
    const int n = static_cast<int>(order);
    const int k = static_cast<int>(factors.size());

    auto decode = [&](int idx) {
        std::vector<int> parts(k);
        for (int f = k - 1; f >= 0; --f) {
            parts[f] = idx % factors[f]->n;
            idx /= factors[f]->n;
        }
        return parts;
    };
    auto encode = [&](const std::vector<int>& parts) {
        int idx = 0;
        for (int f = 0; f < k; ++f) idx = idx * factors[f]->n + parts[f];
        return idx;
    };

    std::vector<std::string> names(n);
    for (int a = 0; a < n; ++a) {
        auto parts = decode(a);
        std::string nm = "(";
        for (int f = 0; f < k; ++f) {
            if (f) nm += ",";
            nm += factors[f]->names[parts[f]];
        }
        names[a] = nm + ")";
    }

    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        auto pa = decode(a);
        for (int b = 0; b < n; ++b) {
            auto pb = decode(b);
            std::vector<int> pc(k);
            for (int f = 0; f < k; ++f) pc[f] = factors[f]->mul(pa[f], pb[f]);
            table[static_cast<size_t>(a) * n + b] = encode(pc);
        }
    }

    std::vector<int> gens;
    for (int f = 0; f < k; ++f) {
        for (int g : factors[f]->generators) {
            std::vector<int> parts(k, 0);
            parts[f] = g;
            gens.push_back(encode(parts));
        }
    }
    return FiniteGroup::make(spec, n, std::move(names), std::move(table), std::move(gens));
}

std::vector<int> closure(const FiniteGroup& G, const std::vector<int>& seed) {
    std::vector<char> in(G.n, 0);
    std::vector<int> work = {0};
    in[0] = 1;
    for (int g : seed)
        if (!in[g]) {
            in[g] = 1;
            work.push_back(g);
        }
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j < work.size(); ++j) {
            int p = G.mul(work[i], work[j]);
            if (!in[p]) {
                in[p] = 1;
                work.push_back(p);
            }
        }
    std::sort(work.begin(), work.end());
    return work;
}

std::vector<int> minimal_generators(const FiniteGroup& G, const std::vector<int>& members) {
    std::vector<int> gens;
    std::vector<int> have = {0};
    while (static_cast<int>(have.size()) < static_cast<int>(members.size())) {
        for (int m : members) {
            if (!std::binary_search(have.begin(), have.end(), m)) {
                gens.push_back(m);
                have = closure(G, gens);
                break;
            }
        }
    }
    return gens;
}

}  // namespace

// ---------------------------------------------------------------------------

int FiniteGroup::index_of(const std::string& name) const {
    for (int i = 0; i < n; ++i)
        if (names[i] == name) return i;
    throw NoSuchElement("no element named '" + name + "'");
}

GroupPtr FiniteGroup::make(std::string spec, int n, std::vector<std::string> names,
                           std::vector<int> table, std::vector<int> generators) {
    if (n < 1) throw NotAGroup("empty element set");
    if (n > max_group_order())
        throw BoundExceeded("group order " + std::to_string(n) + " exceeds bound " +
                            std::to_string(max_group_order()));
    if (static_cast<int>(names.size()) != n || static_cast<int>(table.size()) != n * n)
        throw NotAGroup("table/name dimensions disagree with order");
    {
        std::set<std::string> uniq(names.begin(), names.end());
        if (static_cast<int>(uniq.size()) != n) throw NotAGroup("duplicate element names");
    }
    for (int v : table)
        if (v < 0 || v >= n) throw NotAGroup("table entry out of range");
    for (int a = 0; a < n; ++a)
        if (table[a] != a || table[static_cast<size_t>(a) * n] != a)
            throw NotAGroup("element 0 is not a two-sided identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[static_cast<size_t>(table[static_cast<size_t>(a) * n + b]) * n + c] !=
                    table[static_cast<size_t>(a) * n + table[static_cast<size_t>(b) * n + c]])
                    throw NotAGroup("associativity fails");

    auto G = std::make_shared<FiniteGroup>();
    G->spec = std::move(spec);
    G->n = n;
    G->names = std::move(names);
    G->table = std::move(table);

    G->inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (G->mul(a, b) == 0 && G->mul(b, a) == 0) {
                G->inverse[a] = b;
                break;
            }
        if (G->inverse[a] < 0) throw NotAGroup("missing inverse");
    }

    G->elt_order.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int x = a, k = 1;
        while (x != 0) {
            x = G->mul(x, a);
            ++k;
        }
        G->elt_order[a] = k;
    }

    G->generators = std::move(generators);
    if (n > 1) {
        if (closure(*G, G->generators) != [&] {
                std::vector<int> all(n);
                std::iota(all.begin(), all.end(), 0);
                return all;
            }())
            throw NotAGroup("declared generators do not generate");
    }
    return G;
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

// ---------------------------------------------------------------------------
// spec parsing

GroupSpec parse_spec(const std::string& text) {
    // split on 'x' for direct products
    std::vector<std::string> parts;
    {
        std::string cur;
        int depth = 0;
        for (char c : text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == 'x' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
    }
    if (parts.size() > 1) {
        GroupSpec s;
        s.family = Family::Product;
        s.text = text;
        for (const auto& p : parts) s.factors.push_back(parse_spec(p));
        return s;
    }

    const std::string& t = parts[0];
    if (t.empty()) throw SpecError("empty group spec");
    GroupSpec s;
    s.text = t;

    auto tail_int = [&](size_t from) -> int {
        if (from >= t.size()) throw SpecError("missing numeric parameter in '" + t + "'");
        for (size_t i = from; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i])))
                throw SpecError("bad numeric parameter in '" + t + "'");
        return std::stoi(t.substr(from));
    };

    if (t == "S3") {
        s.family = Family::Symmetric3;
        s.n = 6;
        return s;
    }
    switch (t[0]) {
        case 'C': {
            s.family = Family::Cyclic;
            s.n = tail_int(1);
            if (s.n < 1) throw SpecError("cyclic order must be positive");
            return s;
        }
        case 'E': {
            if (t.size() < 6 || t[1] != '(' || t.back() != ')')
                throw SpecError("elementary abelian spec must look like E(p,r)");
            auto comma = t.find(',');
            if (comma == std::string::npos) throw SpecError("E(p,r) needs two parameters");
            auto ps = t.substr(2, comma - 2);
            auto rs = t.substr(comma + 1, t.size() - comma - 2);
            auto numeric = [](const std::string& u) {
                return !u.empty() && std::all_of(u.begin(), u.end(), [](unsigned char c) {
                    return std::isdigit(c);
                });
            };
            if (!numeric(ps) || !numeric(rs)) throw SpecError("E(p,r): parameters must be numeric");
            int p = std::stoi(ps);
            int r = std::stoi(rs);
            if (!is_prime(p)) throw SpecError("E(p,r): p must be prime");
            if (r < 1) throw SpecError("E(p,r): r must be >= 1");
            s.family = Family::ElemAbelian;
            s.p = p;
            s.n = r;
            return s;
        }
        case 'Q': {
            int m = tail_int(1);
            if (m < 8 || (m & (m - 1)) != 0)
                throw SpecError("quaternion order must be 2^k with k >= 3");
            s.family = Family::Quaternion;
            s.n = m;
            return s;
        }
        case 'D': {
            int m = tail_int(1);
            if (m < 8 || (m & (m - 1)) != 0)
                throw SpecError("dihedral order must be 2^k with k >= 3");
            s.family = Family::Dihedral;
            s.n = m;
            return s;
        }
        case 'G': {
            int m = tail_int(1);
            int p = 0;
            for (int q = 2; q * q * q <= m; ++q)
                if (q * q * q == m) p = q;
            if (p == 0 || !is_prime(p) || p == 2)
                throw SpecError("G<m>: m must be p^3 for an odd prime p");
            s.family = Family::ModMax;
            s.p = p;
            s.n = m;
            return s;
        }
        default:
            throw SpecError("unrecognized group spec '" + t + "'");
    }
}

GroupPtr build_group(const GroupSpec& s) {
    switch (s.family) {
        case Family::Cyclic:
            return cyclic_group(s.text, s.n);
        case Family::ElemAbelian: {
            if (s.n == 1) return cyclic_group(s.text, s.p);
            std::vector<GroupPtr> fs(s.n);
            for (int i = 0; i < s.n; ++i) fs[i] = cyclic_group("C" + std::to_string(s.p), s.p);
            return product_group_flat(s.text, fs);
        }
        case Family::Quaternion:
            // sigma^(m/2) = 1, tau^2 = sigma^(m/4), tau sigma tau^-1 = sigma^-1
            return metacyclic(s.text, s.n / 2, 2, s.n / 2 - 1, s.n / 4);
        case Family::Dihedral:
            return metacyclic(s.text, s.n / 2, 2, s.n / 2 - 1, 0);
        case Family::Symmetric3:
            return metacyclic(s.text, 3, 2, 2, 0);
        case Family::ModMax:
            // sigma^(p^2) = 1, tau^p = 1, tau sigma tau^-1 = sigma^(p+1)
            return metacyclic(s.text, s.p * s.p, s.p, s.p + 1, 0);
        case Family::Product: {
            std::vector<GroupPtr> fs;
            for (const auto& f : s.factors) fs.push_back(build_group(f));
            return product_group_flat(s.text, fs);
        }
    }
    throw SpecError("unreachable");
}

GroupPtr build_group(const std::string& spec) { return build_group(parse_spec(spec)); }

GroupPtr product_group(const GroupPtr& A, const GroupPtr& B) {
    std::string spec;
    if (!A->spec.empty() && !B->spec.empty()) spec = A->spec + "x" + B->spec;
    return product_group_flat(spec, {A, B});
}

std::vector<std::string> catalog_specs() {
    return {"C2",  "C3",  "C4",  "C8",    "C9",     "C16",   "C27", "E(2,2)",
            "E(2,3)", "E(3,2)", "Q8",  "Q16",   "Q32",    "D8",    "D16", "D32",
            "G27", "S3",  "C4xC2", "Q8xC2", "Q8xC3", "C4xC4"};
}

// ---------------------------------------------------------------------------
// subgroups

Subgroup subgroup_generated(const GroupPtr& G, const std::vector<int>& gens) {
    for (int g : gens)
        if (g < 0 || g >= G->n) throw NoSuchElement("generator index out of range");
    Subgroup S;
    S.parent = G;
    S.members = closure(*G, gens);
    for (int g : gens)
        if (g != 0 && std::find(S.gens.begin(), S.gens.end(), g) == S.gens.end())
            S.gens.push_back(g);
    return S;
}

Subgroup whole_subgroup(const GroupPtr& G) {
    std::vector<int> all(G->n);
    std::iota(all.begin(), all.end(), 0);
    Subgroup S;
    S.parent = G;
    S.members = std::move(all);
    S.gens = G->generators;
    return S;
}

Subgroup trivial_subgroup(const GroupPtr& G) {
    Subgroup S;
    S.parent = G;
    S.members = {0};
    return S;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& G) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    work.push_back({0});
    seen.insert(work[0]);
    for (size_t i = 0; i < work.size(); ++i) {
        std::vector<int> base = work[i];
        for (int g = 1; g < G->n; ++g) {
            if (std::binary_search(base.begin(), base.end(), g)) continue;
            auto ext = base;
            ext.push_back(g);
            auto cl = closure(*G, ext);
            if (seen.insert(cl).second) work.push_back(std::move(cl));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(work.size());
    for (auto& m : seen) {
        Subgroup S;
        S.parent = G;
        S.members = m;
        S.gens = minimal_generators(*G, m);
        out.push_back(std::move(S));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

bool is_abelian_members(const GroupPtr& G, const std::vector<int>& members) {
    for (int a : members)
        for (int b : members)
            if (G->mul(a, b) != G->mul(b, a)) return false;
    return true;
}

bool is_abelian(const GroupPtr& G) { return is_abelian_members(G, whole_subgroup(G).members); }

int exponent_members(const GroupPtr& G, const std::vector<int>& members) {
    long long e = 1;
    for (int a : members) e = std::lcm(e, static_cast<long long>(G->order_of(a)));
    return static_cast<int>(e);
}

bool is_elementary_abelian_members(const GroupPtr& G, const std::vector<int>& members) {
    if (members.size() < 2) return false;
    int p = p_group_prime(static_cast<int>(members.size()));
    if (p == 0) return false;
    return is_abelian_members(G, members) && exponent_members(G, members) == p;
}

bool is_elementary_abelian(const GroupPtr& G) {
    return is_elementary_abelian_members(G, whole_subgroup(G).members);
}

std::vector<Subgroup> elementary_abelian_subgroups(const GroupPtr& G) {
    std::vector<Subgroup> out;
    for (auto& S : all_subgroups(G))
        if (is_elementary_abelian_members(G, S.members)) out.push_back(S);
    return out;
}

std::vector<Subgroup> maximal_elementary_abelian(const GroupPtr& G) {
    auto all = elementary_abelian_subgroups(G);
    std::vector<Subgroup> out;
    for (const auto& S : all) {
        bool maximal = true;
        for (const auto& T : all) {
            if (T.members.size() <= S.members.size()) continue;
            if (std::includes(T.members.begin(), T.members.end(), S.members.begin(),
                              S.members.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(S);
    }
    return out;
}

Subgroup conjugate_subgroup(const GroupPtr& G, int g, const Subgroup& S) {
    Subgroup T;
    T.parent = G;
    int gi = G->inv(g);
    for (int m : S.members) T.members.push_back(G->mul(G->mul(g, m), gi));
    std::sort(T.members.begin(), T.members.end());
    for (int m : S.gens) T.gens.push_back(G->mul(G->mul(g, m), gi));
    return T;
}

std::vector<Subgroup> conjugacy_reps_maximal_elementary_abelian(const GroupPtr& G) {
    auto maxes = maximal_elementary_abelian(G);
    std::set<std::vector<int>> done;
    std::vector<Subgroup> reps;
    for (const auto& S : maxes) {
        if (done.count(S.members)) continue;
        std::set<std::vector<int>> orbit;
        for (int g = 0; g < G->n; ++g) orbit.insert(conjugate_subgroup(G, g, S).members);
        // S has the least member list in its orbit: maxes is sorted and we scan in order
        for (auto& m : orbit) done.insert(m);
        reps.push_back(S);
    }
    return reps;
}

Subgroup center(const GroupPtr& G) {
    std::vector<int> z;
    for (int a = 0; a < G->n; ++a) {
        bool central = true;
        for (int b = 0; b < G->n && central; ++b) central = G->mul(a, b) == G->mul(b, a);
        if (central) z.push_back(a);
    }
    Subgroup S;
    S.parent = G;
    S.members = std::move(z);
    S.gens = minimal_generators(*G, S.members);
    return S;
}

Subgroup commutator_subgroup(const GroupPtr& G) {
    std::vector<int> comms;
    for (int a = 0; a < G->n; ++a)
        for (int b = 0; b < G->n; ++b)
            comms.push_back(G->mul(G->mul(G->inv(a), G->inv(b)), G->mul(a, b)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    Subgroup S;
    S.parent = G;
    S.members = closure(*G, comms);
    S.gens = minimal_generators(*G, S.members);
    return S;
}

bool is_normal(const GroupPtr& G, const Subgroup& S) {
    for (int g = 0; g < G->n; ++g) {
        int gi = G->inv(g);
        for (int m : S.members)
            if (!S.contains(G->mul(G->mul(g, m), gi))) return false;
    }
    return true;
}

std::vector<int> left_coset_reps(const GroupPtr& G, const Subgroup& S) {
    std::vector<char> covered(G->n, 0);
    std::vector<int> reps;
    for (int g = 0; g < G->n; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int m : S.members) covered[G->mul(g, m)] = 1;
    }
    return reps;
}

std::vector<int> right_coset_reps(const GroupPtr& G, const Subgroup& S) {
    std::vector<char> covered(G->n, 0);
    std::vector<int> reps;
    for (int g = 0; g < G->n; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int m : S.members) covered[G->mul(m, g)] = 1;
    }
    return reps;
}

int p_group_prime(int order) {
    if (order < 2) return 0;
    for (int p = 2; p <= order; ++p) {
        if (!is_prime(p)) continue;
        if (order % p) continue;
        int m = order;
        while (m % p == 0) m /= p;
        return m == 1 ? p : 0;
    }
    return 0;
}

Subgroup sylow_subgroup(const GroupPtr& G, int p) {
    if (!is_prime(p)) throw SpecError("sylow_subgroup: p must be prime");
    int pa = 1;
    while (G->n % (pa * p) == 0) pa *= p;
    for (const auto& S : all_subgroups(G))
        if (static_cast<int>(S.members.size()) == pa) return S;
    throw NotASubgroup("no Sylow subgroup found");  // unreachable for valid groups
}

// ---------------------------------------------------------------------------
// quotients, embeddings, isomorphisms

Quotient quotient(const GroupPtr& G, const Subgroup& N) {
    if (N.parent.get() != G.get()) throw NotASubgroup("quotient: subgroup of a different group");
    if (!is_normal(G, N)) throw NotNormal("quotient by a non-normal subgroup");

    std::vector<int> coset_min(G->n, -1);
    std::vector<int> reps;
    for (int g = 0; g < G->n; ++g) {
        if (coset_min[g] >= 0) continue;
        reps.push_back(g);
        for (int m : N.members) coset_min[G->mul(g, m)] = g;
    }
    std::sort(reps.begin(), reps.end());

    const int q = static_cast<int>(reps.size());
    std::map<int, int> rep_index;
    for (int i = 0; i < q; ++i) rep_index[reps[i]] = i;

    std::vector<int> proj(G->n);
    for (int g = 0; g < G->n; ++g) proj[g] = rep_index[coset_min[g]];

    std::vector<std::string> names(q);
    for (int i = 0; i < q; ++i) names[i] = G->names[reps[i]];
    std::vector<int> table(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) table[a * q + b] = proj[G->mul(reps[a], reps[b])];

    std::vector<int> gens;
    for (int g : G->generators) {
        int image = proj[g];
        if (image != 0 && std::find(gens.begin(), gens.end(), image) == gens.end())
            gens.push_back(image);
    }

    Quotient out;
    out.group = FiniteGroup::make("", q, std::move(names), std::move(table), std::move(gens));
    out.proj = std::move(proj);
    out.section = std::move(reps);
    out.parent = G;
    return out;
}

Subgroup preimage(const Quotient& q, const std::vector<int>& quotient_members) {
    Subgroup S;
    S.parent = q.parent;
    for (int g = 0; g < q.parent->n; ++g)
        if (std::find(quotient_members.begin(), quotient_members.end(), q.proj[g]) !=
            quotient_members.end())
            S.members.push_back(g);
    S.gens = minimal_generators(*q.parent, S.members);
    return S;
}

EmbeddedGroup subgroup_as_group(const GroupPtr& G, const Subgroup& S) {
    if (S.parent.get() != G.get())
        throw NotASubgroup("subgroup_as_group: subgroup of a different group");
    const int m = S.order();
    std::map<int, int> down;
    for (int i = 0; i < m; ++i) down[S.members[i]] = i;

    std::vector<std::string> names(m);
    for (int i = 0; i < m; ++i) names[i] = G->names[S.members[i]];
    std::vector<int> table(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int prod = G->mul(S.members[a], S.members[b]);
            auto it = down.find(prod);
            if (it == down.end()) throw NotASubgroup("member set is not closed");
            table[a * m + b] = it->second;
        }

    std::vector<int> gens;
    auto src_gens = S.gens.empty() ? minimal_generators(*G, S.members) : S.gens;
    for (int g : src_gens)
        if (g != 0) gens.push_back(down.at(g));

    EmbeddedGroup out;
    out.group = FiniteGroup::make("", m, std::move(names), std::move(table), std::move(gens));
    out.embed = S.members;
    out.parent = G;
    return out;
}

std::optional<std::vector<int>> find_isomorphism(const GroupPtr& A, const GroupPtr& B) {
    if (A->n != B->n) return std::nullopt;
    {
        auto oa = A->elt_order, ob = B->elt_order;
        std::sort(oa.begin(), oa.end());
        std::sort(ob.begin(), ob.end());
        if (oa != ob) return std::nullopt;
    }
    const auto& gens = A->generators;
    if (A->n == 1) return std::vector<int>{0};

    std::vector<int> images(gens.size(), -1);
    std::vector<int> phi(A->n, -1);

    auto try_complete = [&]() -> bool {
        std::fill(phi.begin(), phi.end(), -1);
        phi[0] = 0;
        // fill in BFS order so predecessors are ready
        std::vector<int> order = {0};
        std::vector<char> seen(A->n, 0);
        seen[0] = 1;
        for (size_t i = 0; i < order.size(); ++i)
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                int nxt = A->mul(order[i], gens[gi]);
                if (!seen[nxt]) {
                    seen[nxt] = 1;
                    phi[nxt] = B->mul(phi[order[i]], images[gi]);
                    order.push_back(nxt);
                }
            }
        std::vector<char> hit(B->n, 0);
        for (int v : phi) {
            if (v < 0 || hit[v]) return false;
            hit[v] = 1;
        }
        for (int a = 0; a < A->n; ++a)
            for (int b = 0; b < A->n; ++b)
                if (phi[A->mul(a, b)] != B->mul(phi[a], phi[b])) return false;
        return true;
    };

    std::function<bool(size_t)> dfs = [&](size_t k) -> bool {
        if (k == gens.size()) return try_complete();
        for (int cand = 0; cand < B->n; ++cand) {
            if (B->order_of(cand) != A->order_of(gens[k])) continue;
            images[k] = cand;
            if (dfs(k + 1)) return true;
        }
        images[k] = -1;
        return false;
    };
    if (!dfs(0)) return std::nullopt;
    return phi;
}

// ---------------------------------------------------------------------------
// classification

GroupClass classify(const GroupPtr& G) {
    if (G->n == 1) return GroupClass::Other;
    int p = p_group_prime(G->n);
    if (p == 0) throw NotAPGroup("classify: order " + std::to_string(G->n) + " is not a prime power");
    if (is_elementary_abelian(G)) return GroupClass::ElementaryAbelian;

    Subgroup Z = center(G);
    bool has_elem_ab_quotient = false;
    for (int h : Z.members) {
        if (G->order_of(h) != p) continue;
        auto N = subgroup_generated(G, {h});
        if (is_elementary_abelian(quotient(G, N).group)) {
            has_elem_ab_quotient = true;
            break;
        }
    }
    if (has_elem_ab_quotient) {
        if (Z.order() == p) return GroupClass::Extraspecial;
        if (Z.order() == p * p && exponent_members(G, Z.members) == p * p)
            return GroupClass::AlmostExtraspecial;
    }
    return GroupClass::Other;
}

std::string group_class_name(GroupClass c) {
    switch (c) {
        case GroupClass::ElementaryAbelian: return "elementary-abelian";
        case GroupClass::Extraspecial: return "extraspecial";
        case GroupClass::AlmostExtraspecial: return "almost-extraspecial";
        case GroupClass::Other: return "other";
    }
    return "?";
}

Subgroup central_reduction_subgroup(const GroupPtr& G) {
    int p = p_group_prime(G->n);
    if (p == 0) throw NotAPGroup("central_reduction_subgroup: not a p-group");
    if (classify(G) != GroupClass::Other)
        throw NoSuchElement("central_reduction_subgroup: group is already a base case");
    for (int h : center(G).members) {
        if (G->order_of(h) != p) continue;
        auto N = subgroup_generated(G, {h});
        if (!is_elementary_abelian(quotient(G, N).group)) return N;
    }
    throw NoSuchElement("central_reduction_subgroup: no admissible central element");
}

std::string subquotient_label(const GroupPtr& Q, GroupClass c) {
    const int n = Q->n;
    int p = p_group_prime(n);
    if (is_abelian(Q)) return "C" + std::to_string(n);  // almost extraspecial abelian = C_{p^2}
    int expo = exponent_members(Q, whole_subgroup(Q).members);
    int np = 0;
    for (int a = 0; a < n; ++a)
        if (Q->order_of(a) == p) ++np;
    if (c == GroupClass::Extraspecial && n == 8) return np == 1 ? "Q8" : "D8";
    if (c == GroupClass::Extraspecial && p > 2 && n == p * p * p)
        return (expo == p * p ? "G" : "H") + std::to_string(n);
    const char* kind = c == GroupClass::Extraspecial ? "ES" : "AES";
    return std::string(kind) + "(" + std::to_string(n) + ",exp" + std::to_string(expo) + ",np" +
           std::to_string(np) + ")";
}

std::vector<std::string> f_set(const GroupPtr& G, int bound) {
    if (G->n > bound)
        throw BoundExceeded("f_set: order " + std::to_string(G->n) + " exceeds bound " +
                            std::to_string(bound));
    std::set<std::string> labels;
    for (const auto& S : all_subgroups(G)) {
        auto SG = subgroup_as_group(G, S);
        for (const auto& N : all_subgroups(SG.group)) {
            if (!is_normal(SG.group, N)) continue;
            auto Q = quotient(SG.group, N).group;
            if (Q->n == 1 || p_group_prime(Q->n) == 0) continue;
            GroupClass c = classify(Q);
            if (c == GroupClass::Extraspecial || c == GroupClass::AlmostExtraspecial)
                labels.insert(subquotient_label(Q, c));
        }
    }
    return {labels.begin(), labels.end()};
}

std::string group_to_json(const GroupPtr& G) {
    nlohmann::ordered_json j;
    j["spec"] = G->spec;
    j["order"] = G->n;
    j["elements"] = G->names;
    auto rows = nlohmann::ordered_json::array();
    for (int a = 0; a < G->n; ++a) {
        auto row = nlohmann::ordered_json::array();
        for (int b = 0; b < G->n; ++b) row.push_back(G->mul(a, b));
        rows.push_back(std::move(row));
    }
    j["mul"] = std::move(rows);
    return j.dump(2);
}

}  // namespace normforge
