#include "curator/stance.hpp"

namespace curator {

std::string_view to_string(Stance stance) {
    switch (stance) {
        case Stance::MustLimit:       return "must-limit";
        case Stance::MustNotLimit:    return "must-not-limit";
        case Stance::MayLimit:        return "may-limit";
        case Stance::MayLimitCaution: return "may-limit-caution";
        case Stance::RejectRequest:   return "reject-request";
    }
    return "may-limit";
}

std::optional<Stance> stance_from_string(std::string_view text) {
    for (auto s : {Stance::MustLimit, Stance::MustNotLimit, Stance::MayLimit, Stance::MayLimitCaution,
                   Stance::RejectRequest}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

bool stances_conflict(Stance a, Stance b) {
    if (a == b) return false;
    if (a == Stance::RejectRequest || b == Stance::RejectRequest) return true;
    return a == Stance::MustNotLimit || b == Stance::MustNotLimit;
}

int protectiveness(Stance stance) {
    switch (stance) {
        case Stance::RejectRequest:   return 4;
        case Stance::MustLimit:       return 3;
        case Stance::MustNotLimit:    return 2;
        case Stance::MayLimitCaution: return 1;
        case Stance::MayLimit:        return 0;
    }
    return 0;
}

} // namespace curator
