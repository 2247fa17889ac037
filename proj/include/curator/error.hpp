#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curator {

/// 1-based position into a source text.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ErrorCode {
    UnknownArgument,
    TooLargeFramework,
    SyntaxError,
    UndeclaredArgument,
    EmptyPromotes,
    Unclassifiable,
    EmptyRequest,
    UnknownField,
    UnknownValue,
    UnknownStance,
    BadHeader,
    CorruptEntry,
    IoError,
    ValidationError,
    BadRequest,
    KbConflict,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code is stable and machine-readable;
/// the span is present for errors that point into a source text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// The message without the position prefix that what() carries.
    const std::string& message() const noexcept { return message_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }

private:
    ErrorCode code_;
    std::string message_;
    std::optional<SourceSpan> span_;
};

} // namespace curator
