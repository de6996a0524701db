#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define QMETRO_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                           \
        explicit Name(const std::string& msg) : Error(msg) {}       \
    }

// quantum-core
QMETRO_DEFINE_ERROR(NonHermitianInput);
QMETRO_DEFINE_ERROR(DimensionMismatch);
QMETRO_DEFINE_ERROR(NotNormalized);
QMETRO_DEFINE_ERROR(LengthMismatch);
QMETRO_DEFINE_ERROR(NotCompletelyPositive);
QMETRO_DEFINE_ERROR(InvalidState);

// dynamics
QMETRO_DEFINE_ERROR(NegativeTime);
QMETRO_DEFINE_ERROR(RateTableOutOfRange);
QMETRO_DEFINE_ERROR(IntegrationDiverged);
QMETRO_DEFINE_ERROR(NotCPTP);
QMETRO_DEFINE_ERROR(InvalidModel);

// fisher
QMETRO_DEFINE_ERROR(SingularOutcome);
QMETRO_DEFINE_ERROR(ZeroInformation);
QMETRO_DEFINE_ERROR(NonHermitianDerivative);
QMETRO_DEFINE_ERROR(ZeroSlope);
QMETRO_DEFINE_ERROR(StepTooLarge);

// bounds
QMETRO_DEFINE_ERROR(RankMismatch);
QMETRO_DEFINE_ERROR(OptimizerFailed);
QMETRO_DEFINE_ERROR(FlatObjective);

// protocols
QMETRO_DEFINE_ERROR(WrongAngle);
QMETRO_DEFINE_ERROR(BracketFailed);
QMETRO_DEFINE_ERROR(NotSingleQubit);
QMETRO_DEFINE_ERROR(LikelihoodDegenerate);

// scaling / CLI
QMETRO_DEFINE_ERROR(EngineModelMismatch);
QMETRO_DEFINE_ERROR(AllRowsInvalid);
QMETRO_DEFINE_ERROR(InsufficientRows);
QMETRO_DEFINE_ERROR(ConfigError);

#undef QMETRO_DEFINE_ERROR

}  // namespace qmetro
