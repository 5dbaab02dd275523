#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace priceforge {

enum class ErrorCode {
    MalformedRow,
    GapError,
    MisalignedSeries,
    NoFullWeek,
    EmptyInput,
    BadFraction,
    DegenerateSample,
    TooShort,
    NonpositiveBeta,
    DegenerateAverage,
    ZeroDeviation,
    UnreachableTarget,
    BadK,
    BadKMax,
    BadWeights,
    DimensionMismatch,
    NumericalFailure,
    InfeasibleSchedule,
    MissingIdPrices,
    BadSpec,
    BadConfig,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
/// `line()` is set for parse errors (1-based, 0 when not applicable).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::size_t line = 0);

    ErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    ErrorCode code_;
    std::size_t line_;
};

}  // namespace priceforge
