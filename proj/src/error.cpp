#include "sepscan/error.hpp"

namespace sepscan {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotUnitTrace: return "NotUnitTrace";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NoSplit: return "NoSplit";
        case ErrorKind::WrongDim: return "WrongDim";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::RngExhausted: return "RngExhausted";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NoCrossing: return "NoCrossing";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::Discontinuous: return "Discontinuous";
        case ErrorKind::NoData: return "NoData";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace sepscan
