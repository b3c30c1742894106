#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normforge/common.hpp"

namespace normforge {

/// Finite group given by its full multiplication table.
/// Element 0 is always the identity.  Construction validates the axioms.
struct FiniteGroup {
    std::string spec;                 // parseable spec string, or "" for derived groups
    int n = 0;                        // order
    std::vector<std::string> names;   // canonical element names, unique
    std::vector<int> table;           // row-major: table[a*n+b] = a*b
    std::vector<int> inverse;
    std::vector<int> elt_order;
    std::vector<int> generators;      // canonical generating set (may be empty for |G|=1)

    int mul(int a, int b) const { return table[a * n + b]; }
    int inv(int a) const { return inverse[a]; }
    int order_of(int a) const { return elt_order[a]; }
    int index_of(const std::string& name) const;  // NoSuchElement if absent

    /// Validates identity/associativity/inverses and fills derived tables.
    static std::shared_ptr<const FiniteGroup> make(std::string spec, int n,
                                                   std::vector<std::string> names,
                                                   std::vector<int> table,
                                                   std::vector<int> generators);
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup of a fixed parent group: sorted member list, members[0] == 0.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;
    std::vector<int> gens;

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    bool operator==(const Subgroup& o) const { return members == o.members; }
};

// ---------------------------------------------------------------------------
// specs and construction

enum class Family { Cyclic, ElemAbelian, Quaternion, Dihedral, ModMax, Symmetric3, Product };

struct GroupSpec {
    Family family = Family::Cyclic;
    int p = 0;  // prime parameter (ElemAbelian, ModMax)
    int n = 0;  // order-ish parameter: Cyclic order, ElemAbelian rank, Q/D index n
    std::vector<GroupSpec> factors;
    std::string text;
};

/// Accepts "C<n>", "E(p,r)", "Q<2^(n+2)>", "D<2^(n+1)>", "G27"/"G<p^3>", "S3",
/// and "x"-separated direct products such as "Q8xC3".
GroupSpec parse_spec(const std::string& text);
GroupPtr build_group(const GroupSpec& spec);
GroupPtr build_group(const std::string& spec);

/// Row-major direct product (index = a*|B| + b) with "(a,b)" names.
GroupPtr product_group(const GroupPtr& A, const GroupPtr& B);

/// The specs `groups list` advertises.
std::vector<std::string> catalog_specs();

// ---------------------------------------------------------------------------
// subgroup machinery

Subgroup subgroup_generated(const GroupPtr& G, const std::vector<int>& gens);
Subgroup whole_subgroup(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);

/// All subgroups, sorted by (order, member list).
std::vector<Subgroup> all_subgroups(const GroupPtr& G);

bool is_abelian_members(const GroupPtr& G, const std::vector<int>& members);
bool is_abelian(const GroupPtr& G);
int exponent_members(const GroupPtr& G, const std::vector<int>& members);

/// Elementary abelian means isomorphic to (C_p)^r with r >= 1.
bool is_elementary_abelian_members(const GroupPtr& G, const std::vector<int>& members);
bool is_elementary_abelian(const GroupPtr& G);

/// Nontrivial elementary abelian subgroups, sorted.
std::vector<Subgroup> elementary_abelian_subgroups(const GroupPtr& G);
/// The inclusion-maximal ones among the above.
std::vector<Subgroup> maximal_elementary_abelian(const GroupPtr& G);
/// Least member of each conjugacy class of maximal elementary abelian subgroups.
std::vector<Subgroup> conjugacy_reps_maximal_elementary_abelian(const GroupPtr& G);

Subgroup center(const GroupPtr& G);
Subgroup commutator_subgroup(const GroupPtr& G);
bool is_normal(const GroupPtr& G, const Subgroup& S);
Subgroup conjugate_subgroup(const GroupPtr& G, int g, const Subgroup& S);

/// Representatives (least element of each coset), ascending; identity coset first.
std::vector<int> left_coset_reps(const GroupPtr& G, const Subgroup& S);
std::vector<int> right_coset_reps(const GroupPtr& G, const Subgroup& S);

/// 0 if |G| is not a prime power (or |G| = 1), else the prime.
int p_group_prime(int order);

/// Least Sylow p-subgroup under (member list) order.
Subgroup sylow_subgroup(const GroupPtr& G, int p);

// ---------------------------------------------------------------------------
// quotients and embeddings

struct Quotient {
    GroupPtr group;
    std::vector<int> proj;        // parent element -> quotient element
    std::vector<int> section;     // quotient element -> least parent representative
    GroupPtr parent;
};

/// Canonical quotient: cosets indexed by least representative, NotNormal if N is not.
Quotient quotient(const GroupPtr& G, const Subgroup& N);

Subgroup preimage(const Quotient& q, const std::vector<int>& quotient_members);

struct EmbeddedGroup {
    GroupPtr group;
    std::vector<int> embed;       // new index -> parent index
    GroupPtr parent;
};

/// A subgroup repackaged as a standalone group (names inherited).
EmbeddedGroup subgroup_as_group(const GroupPtr& G, const Subgroup& S);

/// Isomorphism A -> B as image vector, or nullopt.  Deterministic search order.
std::optional<std::vector<int>> find_isomorphism(const GroupPtr& A, const GroupPtr& B);

// ---------------------------------------------------------------------------
// classification

enum class GroupClass { ElementaryAbelian, Extraspecial, AlmostExtraspecial, Other };

/// NotAPGroup unless |G| is a positive power of a prime (|G| = 1 classifies Other).
GroupClass classify(const GroupPtr& G);

std::string group_class_name(GroupClass c);

/// Least central subgroup <h> of order p such that G/<h> is not elementary
/// abelian.  Pre: p-group classified Other.
Subgroup central_reduction_subgroup(const GroupPtr& G);

/// Sorted labels of the extraspecial / almost extraspecial subquotients of G.
std::vector<std::string> f_set(const GroupPtr& G, int bound = 64);

/// Catalog label for a classified subquotient ("C4", "Q8", "D8", "G27", ...).
std::string subquotient_label(const GroupPtr& Q, GroupClass c);

std::string group_to_json(const GroupPtr& G);

}  // namespace normforge
