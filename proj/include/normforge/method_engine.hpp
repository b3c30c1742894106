#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normforge/ncring.hpp"

namespace normforge {

// Word in presentation generators, as indices into Presentation::gens.
using GenWord = std::vector<int>;

/// Finite presentation on named elements of the group.  Each relation is a
/// pair of positive words (w1, w2) asserting w1 = w2; a relator R = 1 is
/// encoded as (R, {}).  Inverses never appear.
struct Presentation {
    std::vector<std::string> gens;
    std::vector<std::pair<GenWord, GenWord>> relations;
};

/// Resolve the generator names and validate: the names must exist, the
/// resolved elements must generate the group, and every relation must hold in
/// the multiplication table.  Returns the resolved elements, aligned with
/// Presentation::gens.  BadPresentation on any violation.
std::vector<int> presentation_elements(const GroupPtr& G, const Presentation& pres);

/// One linear condition sum_i lhs[i] * b(gen_i) = rhs * 1 on the unknown
/// generator values; lhs is aligned with Presentation::gens.
struct NormEquation {
    std::vector<GroupRingElement> lhs;
    Coef rhs = 0;
};

/// The coset-counting side of the translation: alpha(g) = 0 for g in U, and
/// (1 + sigma + ... + sigma^(k-1))(phi) when g lies in the k-th sigma-coset.
/// Values have zero ring part.  BadQuotient when (U, sigma) is not a prime
/// quotient setup.
std::function<BElement(int)> build_alpha(const ContextPtr& ctx, const Subgroup& U, int sigma);

/// Translate each relation w1 = w2 into a NormEquation by expanding both
/// sides letter by letter (prefix-weighted) and moving the phi carrying part
/// to the right-hand side, which must collapse to an integer
/// (NonConstantPhiPart otherwise — the (U, sigma, pres) combination is bad).
std::vector<NormEquation> build_system(const GroupPtr& G, const Subgroup& U, int sigma,
                                       const Presentation& pres);

/// True when every equation reduces to zero after substituting the given
/// generator values (aligned with the presentation generators).
bool check_solution(const std::vector<NormEquation>& eqs, const std::vector<NCPoly>& b_values);

/// Search for generator values of the shape sum_{H in pool} A_H(x_H) with
/// unknown integer group-ring coefficients A_H.  Expands each equation to its
/// degree <= 1 normal form, matches coefficients of the kept symbols and the
/// constant, and solves the resulting Z-linear system exactly.  Returns the
/// canonical least solution (see hnf.hpp), or nullopt when the shape admits
/// none — which says nothing about solvability outside the shape.
std::optional<std::vector<NCPoly>> ansatz_solve(const std::vector<NormEquation>& eqs,
                                                const ContextPtr& ctx,
                                                const std::vector<int>& pool);

/// Extend solved generator values to the full map b on U: expand the
/// canonical shortest word of each member (letter order breaking ties),
/// coerce — the phi parts must cancel on U — and negate.  The result is
/// validated against the cocycle law (CocycleLawFailure).
CocycleOnSubgroup extend_b(const ContextPtr& ctx, const Subgroup& U, int sigma,
                           const Presentation& pres, const std::vector<NCPoly>& b_values);

/// Final assembly step: a = b_sigma + (1 - sigma)(w) must be U-invariant
/// (InvarianceFailure) with (1 + sigma + ... + sigma^(p-1))(a) = 1 where p is
/// the index of U (NormFailure); returns y = a * x after checking that its
/// norm over the whole group is 1 (NormFailure).
NCPoly assemble(const Subgroup& U, int sigma, const NCPoly& b_sigma, const NCPoly& w,
                const NCPoly& x);

/// Everything run_pipeline needs for one supported group: the quotient setup
/// (U, sigma), the canonical presentation, and either stocked generator
/// values or an ansatz pool of variable indices to solve over.  Variable 0 of
/// ctx is always x over U, the element the final formula is built on.
struct PipelineSetup {
    GroupPtr group;
    ContextPtr ctx;
    Subgroup U;
    int sigma = 0;
    Presentation pres;
    std::vector<NCPoly> b_values;  // empty: solve by ansatz over pool
    std::vector<int> pool;
};

/// Canonical setup for the supported base groups: Q8/Q16/Q32..., D8/D16/...,
/// G27, and cyclic p-power orders p^k with k >= 2 (ansatz route).
/// UnsupportedBaseGroup otherwise.
PipelineSetup pipeline_setup(const std::string& spec);

/// End to end: build the system, take the stocked solution (re-checked) or
/// the ansatz one, extend to the subgroup, solve for a witness, assemble.
/// The returned element is fully verified.
NCPoly run_pipeline(const std::string& spec);

}  // namespace normforge
