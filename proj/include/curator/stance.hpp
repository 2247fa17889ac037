#pragma once

#include <optional>
#include <string_view>

namespace curator {

/// What an ethical argument says about limiting respondent diversity.
enum class Stance {
    MustLimit,        // "imperative to limit"
    MustNotLimit,     // "unethical to limit"
    MayLimit,         // "not unethical to limit"
    MayLimitCaution,  // "possibly problematic but not strictly unethical"
    RejectRequest,    // the curation question is moot; the request itself is the problem
};

std::string_view to_string(Stance stance);
std::optional<Stance> stance_from_string(std::string_view text);

/// Symmetric conflict table. Pro-limiting stances never conflict with each
/// other; reject-request conflicts with every other stance.
bool stances_conflict(Stance a, Stance b);

/// Higher is more protective: reject-request > must-limit > must-not-limit
/// > may-limit-caution > may-limit.
int protectiveness(Stance stance);

} // namespace curator
