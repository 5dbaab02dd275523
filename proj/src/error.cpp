#include "priceforge/error.hpp"

namespace priceforge {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::GapError: return "GapError";
        case ErrorCode::MisalignedSeries: return "MisalignedSeries";
        case ErrorCode::NoFullWeek: return "NoFullWeek";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::BadFraction: return "BadFraction";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NonpositiveBeta: return "NonpositiveBeta";
        case ErrorCode::DegenerateAverage: return "DegenerateAverage";
        case ErrorCode::ZeroDeviation: return "ZeroDeviation";
        case ErrorCode::UnreachableTarget: return "UnreachableTarget";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::BadKMax: return "BadKMax";
        case ErrorCode::BadWeights: return "BadWeights";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::InfeasibleSchedule: return "InfeasibleSchedule";
        case ErrorCode::MissingIdPrices: return "MissingIdPrices";
        case ErrorCode::BadSpec: return "BadSpec";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::size_t line) {
    std::string out(to_string(code));
    if (line != 0) {
        out += " (line " + std::to_string(line) + ")";
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace priceforge
