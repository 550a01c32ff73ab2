#pragma once

#include <stdexcept>
#include <string>

namespace mec {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MEC_DEFINE_ERROR(Name)                                                 \
    struct Name : Error {                                                      \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}     \
    }

MEC_DEFINE_ERROR(NonPrimeCharacteristic);
MEC_DEFINE_ERROR(ReducibleModulus);
MEC_DEFINE_ERROR(DivisionByZero);
MEC_DEFINE_ERROR(MixedContexts);
MEC_DEFINE_ERROR(NotASubfield);
MEC_DEFINE_ERROR(DegenerateEquation);
MEC_DEFINE_ERROR(FieldTooLarge);

MEC_DEFINE_ERROR(SingularCurve);
MEC_DEFINE_ERROR(PointNotOnCurve);
MEC_DEFINE_ERROR(InadmissibleCount);
MEC_DEFINE_ERROR(SearchExhausted);

MEC_DEFINE_ERROR(BudgetExceeded);
MEC_DEFINE_ERROR(DuplicateElements);
MEC_DEFINE_ERROR(OddGroupOrder);

MEC_DEFINE_ERROR(SumNotRational);
MEC_DEFINE_ERROR(SampleBudgetExhausted);
MEC_DEFINE_ERROR(NoWitnessFound);
MEC_DEFINE_ERROR(WrongCurveShape);
MEC_DEFINE_ERROR(NotDegreeThree);

MEC_DEFINE_ERROR(DegenerateStep);
MEC_DEFINE_ERROR(DimensionMismatch);
MEC_DEFINE_ERROR(PoleAtPoint);
MEC_DEFINE_ERROR(EchelonNotRational);

MEC_DEFINE_ERROR(PreconditionFailed);
MEC_DEFINE_ERROR(ConstructionFailedMDS);
MEC_DEFINE_ERROR(FormatError);

#undef MEC_DEFINE_ERROR

}  // namespace mec
