#pragma once

#include <stdexcept>
#include <string>

namespace nshift {

#define NSHIFT_ERROR(Name)                                        \
    struct Name : std::runtime_error {                            \
        explicit Name(const std::string& what_arg)                \
            : std::runtime_error(std::string(#Name ": ") + what_arg) {} \
    }

NSHIFT_ERROR(DivisionByZero);
NSHIFT_ERROR(PoleAtSpecialization);
NSHIFT_ERROR(NonRepresentableExponent);
NSHIFT_ERROR(ParseError);
NSHIFT_ERROR(UnsupportedType);
NSHIFT_ERROR(UnsupportedCase);
NSHIFT_ERROR(UnavailableCharacter);
NSHIFT_ERROR(DivisionRemainder);
NSHIFT_ERROR(HalfWeightNotInLattice);
NSHIFT_ERROR(NonIntegerMultiplicity);
NSHIFT_ERROR(ResonantSpectrum);
NSHIFT_ERROR(ProbeNotSeparating);
NSHIFT_ERROR(WeightNotInLattice);
NSHIFT_ERROR(NonCancellingDenominator);
NSHIFT_ERROR(SingularSteinbergMatrix);
NSHIFT_ERROR(PoleAtEvaluation);
NSHIFT_ERROR(NotInvariantInput);
NSHIFT_ERROR(NonRegularWeight);
NSHIFT_ERROR(TruncationTooSmall);
NSHIFT_ERROR(ZeroSymmetrization);
NSHIFT_ERROR(VariantMismatch);

#undef NSHIFT_ERROR

}  // namespace nshift
