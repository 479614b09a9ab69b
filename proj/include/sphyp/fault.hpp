#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphyp {

enum class FaultKind {
    NonFiniteCoordinate,
    ParseError,
    InvalidDomain,
    PointNotInDomain,
    InfinityHasNoEuclideanDistance,
    SampleTooSmall,
    DensityUndefinedAtInfinity,
    UnknownCoveringDescriptor,
    StepTooLargeForPoint,
    EuclideanKindAtInfinity,
    BudgetTooSmall,
    DegenerateSet,
    LevelOutOfRange,
    BadParameters,
    EmptyCorpus,
    SuiteInapplicable,
};

std::string_view fault_name(FaultKind kind);

// Every recoverable error in the library is reported as a Fault.
class Fault : public std::runtime_error {
public:
    Fault(FaultKind kind, const std::string& what)
        : std::runtime_error(std::string(fault_name(kind)) + ": " + what), kind_(kind) {}

    FaultKind kind() const noexcept { return kind_; }

private:
    FaultKind kind_;
};

}  // namespace sphyp
