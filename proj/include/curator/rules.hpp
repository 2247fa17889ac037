#pragma once

// Ethical argument rules and the decision pipeline:
//
//   instantiate -> raw_attacks -> derive_defeats -> grounded -> action mapping
//
// Every step is recorded in the decision trace so the outcome can be audited.

#include "curator/af.hpp"
#include "curator/domain.hpp"
#include "curator/stance.hpp"
#include "curator/values.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace curator {

// ---------------------------------------------------------------------------
// Conditions

enum class ContextField { Sphere, Sensitive, Harm, DemographicTarget, SkillSpecific, Preference };

std::string_view to_string(ContextField field);
std::optional<ContextField> context_field_from_string(std::string_view text);

using AtomValue = std::variant<bool, Sphere, DiversityPreference>;

struct Atom {
    ContextField field = ContextField::Harm;
    bool negated = false;  // `!=` instead of `=`
    AtomValue value = true;
    SourceSpan span;

    /// Checks the literal against the field's domain; throws unknown-value.
    static Atom make(ContextField field, bool negated, std::string_view literal, SourceSpan span = {});

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.field == b.field && a.negated == b.negated && a.value == b.value;
    }
};

/// Boolean expression over context atoms. And/Or nodes hold two or more children,
/// Not holds exactly one.
struct Condition {
    enum class Kind { Atom, Not, And, Or };

    Kind kind = Kind::Atom;
    Atom atom;
    std::vector<Condition> children;

    static Condition leaf(Atom atom);
    static Condition negation(Condition child);
    static Condition all_of(std::vector<Condition> children);
    static Condition any_of(std::vector<Condition> children);

    friend bool operator==(const Condition&, const Condition&) = default;
};

/// Canonical DSL rendering, parenthesized so it reparses to the same tree.
std::string to_string(const Condition& condition);

bool eval_condition(const Condition& condition, const RequestContext& ctx);

// ---------------------------------------------------------------------------
// Rules and knowledge base

struct ArgumentRule {
    ArgumentId name;
    Condition applies_if;
    Stance stance = Stance::MayLimit;
    std::set<EthicalValue> promotes;
    SourceSpan span;

    friend bool operator==(const ArgumentRule& a, const ArgumentRule& b) {
        return a.name == b.name && a.applies_if == b.applies_if && a.stance == b.stance && a.promotes == b.promotes;
    }
};

/// Throws validation-error for an empty promotes set.
void validate_rule(const ArgumentRule& rule);

class KnowledgeBase {
public:
    /// Number of blocks (rules or topics) that built this KB, in order.
    std::uint64_t version = 0;

    const std::vector<ArgumentRule>& rules() const noexcept { return rules_; }
    const SphereMap& topic_extensions() const noexcept { return topics_; }
    /// Default topic map overlaid with this KB's extensions.
    const SphereMap& sphere_map() const noexcept { return sphere_map_; }

    /// A rule with an existing name shadows the earlier one in place.
    void add_rule(ArgumentRule rule);
    void add_topic(std::string topic, Sphere sphere);

    const ArgumentRule* find(const ArgumentId& name) const;

    /// Structural equality: rules and topic extensions; the version is not compared.
    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
        return a.rules_ == b.rules_ && a.topics_ == b.topics_;
    }

private:
    std::vector<ArgumentRule> rules_;
    SphereMap topics_;
    SphereMap sphere_map_ = default_sphere_map();
};

/// The five built-in arguments: efficiency, protection, inclusion,
/// freedom-of-choice and no-harm.
KnowledgeBase default_kb();

// ---------------------------------------------------------------------------
// Decisions

struct ApplicableStep {
    ArgumentId argument;
    Stance stance;
    std::set<EthicalValue> promotes;
    ValueClass rank;
    std::vector<std::string> premises;
};

struct AttackStep {
    ArgumentId attacker;
    ArgumentId target;
    ValueClass attacker_rank;
    ValueClass target_rank;
    bool defeat;
};

struct SemanticsStep {
    Semantics semantics;
};

struct LabelStep {
    ArgumentId argument;
    Label label;
};

/// Mapping rule that produced the action. No stance means nothing was applicable.
struct MappingStep {
    std::optional<Stance> stance;
    CurationAction action;
};

struct FallbackStep {
    std::vector<ArgumentId> undecided;
    Stance chosen;
    CurationAction action;
};

using TraceEntry = std::variant<ApplicableStep, AttackStep, SemanticsStep, LabelStep, MappingStep, FallbackStep>;

std::string_view step_name(const TraceEntry& entry);
std::string render(const TraceEntry& entry);

struct Decision {
    CurationAction action = CurationAction::PermitLimit;
    std::vector<Instrument> instruments;
    Extension prevailing;
    Labelling labelling;
    bool contested = false;
    std::vector<TraceEntry> trace;

    // Working state kept for coaching diffs; not part of the serialized form.
    std::vector<DomainArgument> arguments;
    ArgumentationFramework defeat_graph;
};

std::vector<DomainArgument> instantiate(const KnowledgeBase& kb, const RequestContext& ctx);

/// Symmetric attacks between every pair of arguments whose stances conflict.
std::set<Attack> raw_attacks(const std::vector<DomainArgument>& args);

CurationAction action_for(Stance stance);
std::vector<Instrument> instruments_for(CurationAction action);

/// Validates `ctx` against the KB's sphere map, then runs the pipeline.
Decision decide(const RequestContext& ctx, const KnowledgeBase& kb);

/// Deterministic, human-readable rendering of the decision trace.
std::vector<std::string> explain(const Decision& decision);
std::string explain_text(const Decision& decision);

} // namespace curator
