#ifndef GBP_ERROR_HPP
#define GBP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gbp {

/// Stable codes for every rejected input. The CLI maps any of these to exit code 2.
enum class ErrorCode {
    kVertexOutOfRange,
    kSelfLoop,
    kDuplicateEdge,
    kNotAnEdge,
    kEmptyHabitat,
    kDuplicateMember,
    kHabitatOutOfRange,
    kInvalidDistance,
    kWrongVariant,
    kUnknownVariant,
    kMissingDistance,
    kMissingField,
    kMissingHeader,
    kUnsupportedVersion,
    kBadNumber,
    kSyntax,
    kNotRegular,
    kInvalidSource,
    kInfeasibleSolution,
    kInvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kVertexOutOfRange: return "vertex-out-of-range";
        case ErrorCode::kSelfLoop: return "self-loop";
        case ErrorCode::kDuplicateEdge: return "duplicate-edge";
        case ErrorCode::kNotAnEdge: return "not-an-edge";
        case ErrorCode::kEmptyHabitat: return "empty-habitat";
        case ErrorCode::kDuplicateMember: return "duplicate-member";
        case ErrorCode::kHabitatOutOfRange: return "habitat-out-of-range";
        case ErrorCode::kInvalidDistance: return "invalid-distance";
        case ErrorCode::kWrongVariant: return "wrong-variant";
        case ErrorCode::kUnknownVariant: return "unknown-variant";
        case ErrorCode::kMissingDistance: return "missing-distance";
        case ErrorCode::kMissingField: return "missing-field";
        case ErrorCode::kMissingHeader: return "missing-header";
        case ErrorCode::kUnsupportedVersion: return "unsupported-version";
        case ErrorCode::kBadNumber: return "bad-number";
        case ErrorCode::kSyntax: return "syntax";
        case ErrorCode::kNotRegular: return "not-regular";
        case ErrorCode::kInvalidSource: return "invalid-source";
        case ErrorCode::kInfeasibleSolution: return "infeasible-solution";
        case ErrorCode::kInvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

/// Thrown for malformed or out-of-contract input. `line()` is 0 when the error
/// does not come from a text document.
class InputError : public std::invalid_argument {
public:
    InputError(ErrorCode code, const std::string& message, std::size_t line = 0)
        : std::invalid_argument(format(code, message, line)), code_(code), line_(line) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    static std::string format(ErrorCode code, const std::string& message, std::size_t line) {
        std::string out;
        if (line != 0) {
            out += "line " + std::to_string(line) + ": ";
        }
        out += std::string(to_string(code));
        out += ": ";
        out += message;
        return out;
    }

    ErrorCode code_;
    std::size_t line_;
};

}  // namespace gbp

#endif  // GBP_ERROR_HPP
