#include "curator/values.hpp"

#include <algorithm>
#include <map>

namespace curator {

std::string_view to_string(ValueClass klass) {
    switch (klass) {
        case ValueClass::Instrumental: return "instrumental";
        case ValueClass::Fundamental:  return "fundamental";
        case ValueClass::Paramount:    return "paramount";
    }
    return "instrumental";
}

std::string_view to_string(EthicalValue value) {
    switch (value) {
        case EthicalValue::Inclusion:       return "inclusion";
        case EthicalValue::Tolerance:       return "tolerance";
        case EthicalValue::FreedomOfChoice: return "freedom-of-choice";
        case EthicalValue::Efficiency:      return "efficiency";
        case EthicalValue::Autonomy:        return "autonomy";
        case EthicalValue::WellBeing:       return "well-being";
        case EthicalValue::Health:          return "health";
        case EthicalValue::Dignity:         return "dignity";
        case EthicalValue::Justice:         return "justice";
        case EthicalValue::NoHarmPrinciple: return "no-harm-principle";
    }
    return "inclusion";
}

std::optional<EthicalValue> value_from_string(std::string_view text) {
    for (int i = 0; i <= static_cast<int>(EthicalValue::NoHarmPrinciple); ++i) {
        auto v = static_cast<EthicalValue>(i);
        if (to_string(v) == text) return v;
    }
    return std::nullopt;
}

ValueClass rank_of(EthicalValue value) {
    switch (value) {
        case EthicalValue::Inclusion:
        case EthicalValue::Tolerance:
        case EthicalValue::FreedomOfChoice:
        case EthicalValue::Efficiency:
            return ValueClass::Instrumental;
        case EthicalValue::Autonomy:
        case EthicalValue::WellBeing:
        case EthicalValue::Health:
        case EthicalValue::Dignity:
        case EthicalValue::Justice:
            return ValueClass::Fundamental;
        case EthicalValue::NoHarmPrinciple:
            return ValueClass::Paramount;
    }
    return ValueClass::Instrumental;
}

ValueClass effective_rank(const std::set<EthicalValue>& promotes) {
    if (promotes.empty()) throw Error(ErrorCode::EmptyPromotes, "argument promotes no value");
    ValueClass best = ValueClass::Instrumental;
    for (auto v : promotes) {
        if (ordinal(rank_of(v)) > ordinal(best)) best = rank_of(v);
    }
    return best;
}

ValueClass effective_rank(const DomainArgument& arg) {
    return effective_rank(arg.promotes);
}

bool defeats(const DomainArgument& attacker, const DomainArgument& target) {
    return ordinal(effective_rank(attacker)) >= ordinal(effective_rank(target));
}

DefeatDerivation derive_defeats(const std::vector<DomainArgument>& args, const std::set<Attack>& raw_attacks) {
    DefeatDerivation out;
    std::map<ArgumentId, const DomainArgument*> by_id;
    for (const auto& a : args) {
        by_id.emplace(a.id, &a);
        out.framework.add_argument(a.id);
    }
    for (const auto& [from, to] : raw_attacks) {
        auto f = by_id.find(from);
        auto t = by_id.find(to);
        if (f == by_id.end() || t == by_id.end()) {
            const auto& missing = f == by_id.end() ? from : to;
            throw Error(ErrorCode::UnknownArgument, "raw attack references unknown argument '" + missing.str() + "'");
        }
        if (defeats(*f->second, *t->second)) {
            out.framework.add_attack(from, to);
        } else {
            out.removed.push_back({from, to, effective_rank(*f->second), effective_rank(*t->second)});
        }
    }
    return out;
}

ArgumentationFramework derive_defeat_graph(const std::vector<DomainArgument>& args,
                                           const std::set<Attack>& raw_attacks) {
    return derive_defeats(args, raw_attacks).framework;
}

} // namespace curator
