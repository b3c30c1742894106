#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace normforge {

// Exact integer coefficients everywhere; no fixed-width arithmetic on the math path.
using Coef = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NORMFORGE_ERROR(Name)                                                  \
    struct Name : Error {                                                      \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

// group layer
NORMFORGE_ERROR(SpecError);
NORMFORGE_ERROR(BoundExceeded);
NORMFORGE_ERROR(NotAGroup);
NORMFORGE_ERROR(NoSuchElement);
NORMFORGE_ERROR(NotASubgroup);
NORMFORGE_ERROR(NotNormal);
NORMFORGE_ERROR(NotAPGroup);
NORMFORGE_ERROR(BadQuotient);

// ring layer
NORMFORGE_ERROR(MixedContext);
NORMFORGE_ERROR(UnknownVariable);
NORMFORGE_ERROR(ContextMismatch);
NORMFORGE_ERROR(NonConstantPhiPart);

// solver / method layer
NORMFORGE_ERROR(NormObstruction);
NORMFORGE_ERROR(CompatibilityFailure);
NORMFORGE_ERROR(NonzeroCocycleOnTrivialGroup);
NORMFORGE_ERROR(VerificationFailure);
NORMFORGE_ERROR(CocycleLawFailure);
NORMFORGE_ERROR(InvarianceFailure);
NORMFORGE_ERROR(NormFailure);
NORMFORGE_ERROR(BadPresentation);
NORMFORGE_ERROR(BadSolution);

// formula library
NORMFORGE_ERROR(QuotientElementaryAbelian);
NORMFORGE_ERROR(UnsupportedBaseGroup);
NORMFORGE_ERROR(BadFormulaFile);

// oracle
NORMFORGE_ERROR(DimensionMismatch);

#undef NORMFORGE_ERROR

// Desk-scale bound on group orders, overridable via NORMFORGE_MAX_ORDER.
int max_group_order();

}  // namespace normforge
