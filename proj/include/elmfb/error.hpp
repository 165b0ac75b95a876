#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elmfb {

enum class ErrorCategory {
    InvalidParams,
    CoverageGap,
    IndexOutOfRange,
    DegenerateRow,
    NumericalFailure,
    DimensionMismatch,
    UnknownTarget,
    ConfigParse,
};

/// Machine-parsable name, e.g. "coverage-gap".
std::string_view to_string(ErrorCategory category) noexcept;

/// All library failures are reported through this exception type. The
/// category is stable and is what the CLI prints on failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

} // namespace elmfb
