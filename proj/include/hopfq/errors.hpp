#pragma once

#include <stdexcept>
#include <string>

namespace hopfq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when input data violates a structural precondition.
struct InvalidInput : Error {
    using Error::Error;
};

// Thrown when an exhaustive search or iteration runs past its budget.
struct BudgetError : Error {
    using Error::Error;
};

#define HOPFQ_ERROR(name, base)        \
    struct name : base {               \
        using base::base;              \
    }

HOPFQ_ERROR(NotPrime, InvalidInput);
HOPFQ_ERROR(ReduciblePolynomial, InvalidInput);
HOPFQ_ERROR(NotInvertible, Error);
HOPFQ_ERROR(DimensionMismatch, InvalidInput);
HOPFQ_ERROR(FieldMismatch, InvalidInput);
HOPFQ_ERROR(NoSolution, Error);
HOPFQ_ERROR(AntipodeNotInvertible, Error);
HOPFQ_ERROR(NotAGroup, InvalidInput);
HOPFQ_ERROR(CharZero, InvalidInput);
HOPFQ_ERROR(NotRestrictedLie, InvalidInput);
HOPFQ_ERROR(ClosureNotHopf, Error);
HOPFQ_ERROR(NotNormal, InvalidInput);
HOPFQ_ERROR(NoSection, Error);
HOPFQ_ERROR(MissingRibbonElement, InvalidInput);
HOPFQ_ERROR(InvalidTriple, InvalidInput);
HOPFQ_ERROR(NotSurjective, InvalidInput);
HOPFQ_ERROR(NotHopfMorphism, InvalidInput);
HOPFQ_ERROR(NoFactorization, Error);
HOPFQ_ERROR(NotConstant, InvalidInput);
HOPFQ_ERROR(SchemaError, InvalidInput);
HOPFQ_ERROR(FieldTooLargeForEnumeration, BudgetError);
HOPFQ_ERROR(NoInvertibleSectionFound, BudgetError);
HOPFQ_ERROR(BudgetExceeded, BudgetError);

// An internal consistency check failed; indicates a bug, never bad input.
HOPFQ_ERROR(AssertionFailure, Error);

#undef HOPFQ_ERROR

inline void check(bool cond, const std::string& what) {
    if (!cond) throw AssertionFailure(what);
}

}  // namespace hopfq
