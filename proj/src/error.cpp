#include "curator/error.hpp"

namespace curator {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownArgument:    return "unknown-argument";
        case ErrorCode::TooLargeFramework:  return "too-large-framework";
        case ErrorCode::SyntaxError:        return "syntax-error";
        case ErrorCode::UndeclaredArgument: return "undeclared-argument";
        case ErrorCode::EmptyPromotes:      return "empty-promotes";
        case ErrorCode::Unclassifiable:     return "unclassifiable";
        case ErrorCode::EmptyRequest:       return "empty-request";
        case ErrorCode::UnknownField:       return "unknown-field";
        case ErrorCode::UnknownValue:       return "unknown-value";
        case ErrorCode::UnknownStance:      return "unknown-stance";
        case ErrorCode::BadHeader:          return "bad-header";
        case ErrorCode::CorruptEntry:       return "corrupt-entry";
        case ErrorCode::IoError:            return "io-error";
        case ErrorCode::ValidationError:    return "validation-error";
        case ErrorCode::BadRequest:         return "bad-request";
        case ErrorCode::KbConflict:         return "kb-conflict";
    }
    return "unknown";
}

static std::string with_span(const std::string& message, const std::optional<SourceSpan>& span) {
    if (!span) return message;
    return std::to_string(span->line) + ":" + std::to_string(span->column) + ": " + message;
}

Error::Error(ErrorCode code, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(with_span(message, span)), code_(code), message_(message), span_(span) {}

} // namespace curator
