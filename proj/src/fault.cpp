#include "sphyp/fault.hpp"

namespace sphyp {

std::string_view fault_name(FaultKind kind) {
    switch (kind) {
        case FaultKind::NonFiniteCoordinate: return "NonFiniteCoordinate";
        case FaultKind::ParseError: return "ParseError";
        case FaultKind::InvalidDomain: return "InvalidDomain";
        case FaultKind::PointNotInDomain: return "PointNotInDomain";
        case FaultKind::InfinityHasNoEuclideanDistance: return "InfinityHasNoEuclideanDistance";
        case FaultKind::SampleTooSmall: return "SampleTooSmall";
        case FaultKind::DensityUndefinedAtInfinity: return "DensityUndefinedAtInfinity";
        case FaultKind::UnknownCoveringDescriptor: return "UnknownCoveringDescriptor";
        case FaultKind::StepTooLargeForPoint: return "StepTooLargeForPoint";
        case FaultKind::EuclideanKindAtInfinity: return "EuclideanKindAtInfinity";
        case FaultKind::BudgetTooSmall: return "BudgetTooSmall";
        case FaultKind::DegenerateSet: return "DegenerateSet";
        case FaultKind::LevelOutOfRange: return "LevelOutOfRange";
        case FaultKind::BadParameters: return "BadParameters";
        case FaultKind::EmptyCorpus: return "EmptyCorpus";
        case FaultKind::SuiteInapplicable: return "SuiteInapplicable";
    }
    return "Unknown";
}

}  // namespace sphyp
