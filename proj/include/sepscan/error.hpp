#pragma once

#include <stdexcept>
#include <string>

namespace sepscan {

enum class ErrorKind {
    NotHermitian,
    NotUnitTrace,
    NotPositive,
    NotSquare,
    NoSplit,
    WrongDim,
    InvalidSpec,
    RngExhausted,
    OutOfRange,
    ShapeMismatch,
    NoCrossing,
    InsufficientData,
    NoSignChange,
    ToleranceNotReached,
    DomainError,
    Discontinuous,
    NoData,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sepscan
