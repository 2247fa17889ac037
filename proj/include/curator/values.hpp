#pragma once

// Value-based defeat: arguments promote ethical values, values carry a rank,
// and a raw attack only becomes a defeat when the attacker is not strictly
// lower-ranked than its target.

#include "curator/af.hpp"
#include "curator/stance.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace curator {

enum class ValueClass { Instrumental = 0, Fundamental = 1, Paramount = 2 };

std::string_view to_string(ValueClass klass);
constexpr int ordinal(ValueClass klass) { return static_cast<int>(klass); }

enum class EthicalValue {
    Inclusion,
    Tolerance,
    FreedomOfChoice,
    Efficiency,
    Autonomy,
    WellBeing,
    Health,
    Dignity,
    Justice,
    NoHarmPrinciple,
};

std::string_view to_string(EthicalValue value);
std::optional<EthicalValue> value_from_string(std::string_view text);
ValueClass rank_of(EthicalValue value);

/// An ethical argument instantiated against one request.
struct DomainArgument {
    ArgumentId id;
    Stance stance;
    std::set<EthicalValue> promotes;
    /// Context atoms that made the argument applicable, rendered as DSL text.
    std::vector<std::string> premises;
};

/// Strongest class among the promoted values. Throws empty-promotes.
ValueClass effective_rank(const DomainArgument& arg);
ValueClass effective_rank(const std::set<EthicalValue>& promotes);

bool defeats(const DomainArgument& attacker, const DomainArgument& target);

/// A raw attack dropped because the attacker ranks strictly below its target.
struct RemovedAttack {
    ArgumentId attacker;
    ArgumentId target;
    ValueClass attacker_rank;
    ValueClass target_rank;
};

struct DefeatDerivation {
    ArgumentationFramework framework;
    std::vector<RemovedAttack> removed;
};

DefeatDerivation derive_defeats(const std::vector<DomainArgument>& args, const std::set<Attack>& raw_attacks);

ArgumentationFramework derive_defeat_graph(const std::vector<DomainArgument>& args,
                                           const std::set<Attack>& raw_attacks);

} // namespace curator
