#include "trilemma/error.hpp"

namespace trilemma {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnparsableDate: return "UnparsableDate";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::DuplicateFrame: return "DuplicateFrame";
    case ErrorCode::UnknownFrame: return "UnknownFrame";
    case ErrorCode::NoFramesFound: return "NoFramesFound";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::FrameMissing: return "FrameMissing";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::NonPositiveBlockTime: return "NonPositiveBlockTime";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

}  // namespace trilemma
