#pragma once

// Abstract argumentation frameworks and the standard Dung semantics.
//
// Everything here is a pure function over an immutable framework. The
// labelling-based algorithms work on an index-compiled copy of the graph;
// the set-based helpers (attackers, characteristic, ...) work on ids directly.

#include "curator/error.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curator {

bool is_valid_argument_name(std::string_view name);

/// Argument name: a non-empty token of letters, digits, '-' and '_'.
class ArgumentId {
public:
    explicit ArgumentId(std::string name);

    const std::string& str() const noexcept { return name_; }

    friend auto operator<=>(const ArgumentId&, const ArgumentId&) = default;
    friend bool operator==(const ArgumentId&, const ArgumentId&) = default;

private:
    std::string name_;
};

using Attack = std::pair<ArgumentId, ArgumentId>;
using Extension = std::set<ArgumentId>;

class ArgumentationFramework {
public:
    ArgumentationFramework() = default;
    ArgumentationFramework(std::set<ArgumentId> arguments, std::set<Attack> attacks);

    void add_argument(ArgumentId id);
    /// Both endpoints must already be arguments. Duplicates are absorbed.
    void add_attack(const ArgumentId& attacker, const ArgumentId& target);

    bool contains(const ArgumentId& id) const { return arguments_.count(id) != 0; }
    bool has_attack(const ArgumentId& attacker, const ArgumentId& target) const;

    const std::set<ArgumentId>& arguments() const noexcept { return arguments_; }
    const std::set<Attack>& attacks() const noexcept { return attacks_; }
    std::size_t size() const noexcept { return arguments_.size(); }

    friend bool operator==(const ArgumentationFramework&, const ArgumentationFramework&) = default;

private:
    std::set<ArgumentId> arguments_;
    std::set<Attack> attacks_;
};

enum class Label { In, Out, Undec };

std::string_view to_string(Label label);

/// Total map from the framework's arguments to IN/OUT/UNDEC.
struct Labelling {
    std::map<ArgumentId, Label> assignment;

    Label at(const ArgumentId& id) const;
    Extension in_set() const { return with_label(Label::In); }
    Extension out_set() const { return with_label(Label::Out); }
    Extension undec_set() const { return with_label(Label::Undec); }
    Extension with_label(Label label) const;

    friend bool operator==(const Labelling&, const Labelling&) = default;
    friend bool operator<(const Labelling& a, const Labelling& b) { return a.assignment < b.assignment; }
};

enum class Semantics { Grounded, Complete, Preferred, Stable };

std::string_view to_string(Semantics semantics);
std::optional<Semantics> semantics_from_string(std::string_view text);

/// Upper bound on framework size for the enumerating semantics.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

Extension attackers(const ArgumentationFramework& af, const ArgumentId& target);

bool is_conflict_free(const ArgumentationFramework& af, const Extension& s);

/// Conflict-free and defends each of its members.
bool is_admissible(const ArgumentationFramework& af, const Extension& s);

/// The arguments defended by `s`: every attacker is attacked by some member of `s`.
Extension characteristic(const ArgumentationFramework& af, const Extension& s);

/// Grounded labelling by label propagation from the unattacked arguments.
Labelling grounded(const ArgumentationFramework& af);

/// Grounded extension as the least fixpoint of `characteristic` from the empty set.
/// Kept as a second, independent route to the grounded IN-set.
Extension grounded_fixpoint(const ArgumentationFramework& af);

/// Labelling built from an extension: members IN, their targets OUT, the rest UNDEC.
Labelling labelling_from_extension(const ArgumentationFramework& af, const Extension& in);

bool is_complete_labelling(const ArgumentationFramework& af, const Labelling& labelling);

std::vector<Labelling> complete_labellings(const ArgumentationFramework& af,
                                           std::size_t cap = kDefaultEnumerationCap);

std::set<Extension> preferred(const ArgumentationFramework& af, std::size_t cap = kDefaultEnumerationCap);
std::set<Extension> stable(const ArgumentationFramework& af, std::size_t cap = kDefaultEnumerationCap);

/// Extensions under any semantics; grounded yields exactly one.
std::set<Extension> extensions(const ArgumentationFramework& af, Semantics semantics,
                               std::size_t cap = kDefaultEnumerationCap);

// ICCMA apx text format: `arg(a).` and `att(a,b).` lines, `%` comments.
ArgumentationFramework parse_apx(std::string_view text);
std::string emit_apx(const ArgumentationFramework& af);

} // namespace curator
