#include "curator/rules.hpp"

#include <algorithm>

namespace curator {

// ---------------------------------------------------------------------------
// Conditions

std::string_view to_string(ContextField field) {
    switch (field) {
        case ContextField::Sphere:            return "sphere";
        case ContextField::Sensitive:         return "sensitive";
        case ContextField::Harm:              return "harm";
        case ContextField::DemographicTarget: return "demographic_target";
        case ContextField::SkillSpecific:     return "skill_specific";
        case ContextField::Preference:        return "preference";
    }
    return "harm";
}

std::optional<ContextField> context_field_from_string(std::string_view text) {
    for (auto f : {ContextField::Sphere, ContextField::Sensitive, ContextField::Harm, ContextField::DemographicTarget,
                   ContextField::SkillSpecific, ContextField::Preference}) {
        if (to_string(f) == text) return f;
    }
    return std::nullopt;
}

Atom Atom::make(ContextField field, bool negated, std::string_view literal, SourceSpan span) {
    Atom atom;
    atom.field = field;
    atom.negated = negated;
    atom.span = span;
    auto bad = [&]() -> Error {
        return Error(ErrorCode::UnknownValue,
                     "'" + std::string(literal) + "' is not a valid value for " + std::string(to_string(field)), span);
    };
    switch (field) {
        case ContextField::Sphere:
            if (auto s = sphere_from_string(literal)) atom.value = *s;
            else throw bad();
            break;
        case ContextField::Preference:
            if (auto p = preference_from_string(literal)) atom.value = *p;
            else throw bad();
            break;
        default:
            if (literal == "true") atom.value = true;
            else if (literal == "false") atom.value = false;
            else throw bad();
            break;
    }
    return atom;
}

Condition Condition::leaf(Atom atom) {
    Condition c;
    c.kind = Kind::Atom;
    c.atom = std::move(atom);
    return c;
}

Condition Condition::negation(Condition child) {
    Condition c;
    c.kind = Kind::Not;
    c.children.push_back(std::move(child));
    return c;
}

Condition Condition::all_of(std::vector<Condition> children) {
    if (children.size() == 1) return std::move(children.front());
    Condition c;
    c.kind = Kind::And;
    c.children = std::move(children);
    return c;
}

Condition Condition::any_of(std::vector<Condition> children) {
    if (children.size() == 1) return std::move(children.front());
    Condition c;
    c.kind = Kind::Or;
    c.children = std::move(children);
    return c;
}

static std::string value_text(const AtomValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::string(to_string(v));
        },
        value);
}

static std::string atom_text(const Atom& atom) {
    return std::string(to_string(atom.field)) + (atom.negated ? " != " : " = ") + value_text(atom.value);
}

std::string to_string(const Condition& condition) {
    using Kind = Condition::Kind;
    auto wrapped = [](const Condition& c, bool wrap) { return wrap ? "(" + to_string(c) + ")" : to_string(c); };
    switch (condition.kind) {
        case Kind::Atom:
            return atom_text(condition.atom);
        case Kind::Not:
            return "not " + wrapped(condition.children.front(), condition.children.front().kind != Kind::Atom);
        case Kind::And:
        case Kind::Or: {
            const bool is_and = condition.kind == Kind::And;
            std::string out;
            for (std::size_t i = 0; i < condition.children.size(); ++i) {
                const auto& child = condition.children[i];
                if (i) out += is_and ? " and " : " or ";
                bool wrap = child.kind == Kind::Or || (is_and && child.kind == Kind::And);
                out += wrapped(child, wrap);
            }
            return out;
        }
    }
    return {};
}

static bool eval_atom(const Atom& atom, const RequestContext& ctx) {
    bool equal = false;
    switch (atom.field) {
        case ContextField::Sphere:
            if (!ctx.sphere) throw Error(ErrorCode::ValidationError, "context has no resolved sphere");
            equal = std::get<Sphere>(atom.value) == *ctx.sphere;
            break;
        case ContextField::Preference:
            equal = std::get<DiversityPreference>(atom.value) == ctx.diversity_preference;
            break;
        case ContextField::Sensitive:         equal = std::get<bool>(atom.value) == ctx.sensitive; break;
        case ContextField::Harm:              equal = std::get<bool>(atom.value) == ctx.harm; break;
        case ContextField::DemographicTarget: equal = std::get<bool>(atom.value) == ctx.demographic_target; break;
        case ContextField::SkillSpecific:     equal = std::get<bool>(atom.value) == ctx.skill_specific; break;
    }
    return equal != atom.negated;
}

bool eval_condition(const Condition& condition, const RequestContext& ctx) {
    using Kind = Condition::Kind;
    switch (condition.kind) {
        case Kind::Atom:
            return eval_atom(condition.atom, ctx);
        case Kind::Not:
            return !eval_condition(condition.children.front(), ctx);
        case Kind::And:
            return std::all_of(condition.children.begin(), condition.children.end(),
                               [&](const Condition& c) { return eval_condition(c, ctx); });
        case Kind::Or:
            return std::any_of(condition.children.begin(), condition.children.end(),
                               [&](const Condition& c) { return eval_condition(c, ctx); });
    }
    return false;
}

// Atoms that justify a true condition.
static void collect_support(const Condition& condition, const RequestContext& ctx, std::vector<std::string>& out) {
    using Kind = Condition::Kind;
    switch (condition.kind) {
        case Kind::Atom:
        case Kind::Not:
            out.push_back(to_string(condition));
            break;
        case Kind::And:
            for (const auto& c : condition.children) collect_support(c, ctx, out);
            break;
        case Kind::Or:
            for (const auto& c : condition.children) {
                if (eval_condition(c, ctx)) collect_support(c, ctx, out);
            }
            break;
    }
}

// ---------------------------------------------------------------------------
// Knowledge base

void validate_rule(const ArgumentRule& rule) {
    if (rule.promotes.empty()) {
        throw Error(ErrorCode::ValidationError, "rule '" + rule.name.str() + "' promotes no value", rule.span);
    }
}

void KnowledgeBase::add_rule(ArgumentRule rule) {
    validate_rule(rule);
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const ArgumentRule& r) { return r.name == rule.name; });
    if (it != rules_.end()) *it = std::move(rule);
    else rules_.push_back(std::move(rule));
}

void KnowledgeBase::add_topic(std::string topic, Sphere sphere) {
    sphere_map_[topic] = sphere;
    topics_[std::move(topic)] = sphere;
}

const ArgumentRule* KnowledgeBase::find(const ArgumentId& name) const {
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const ArgumentRule& r) { return r.name == name; });
    return it == rules_.end() ? nullptr : &*it;
}

KnowledgeBase default_kb() {
    auto atom = [](ContextField f, std::string_view literal) { return Condition::leaf(Atom::make(f, false, literal)); };
    KnowledgeBase kb;
    kb.add_rule({ArgumentId("efficiency"),
                 Condition::any_of({atom(ContextField::DemographicTarget, "true"),
                                    atom(ContextField::SkillSpecific, "true")}),
                 Stance::MayLimit,
                 {EthicalValue::Efficiency},
                 {}});
    kb.add_rule({ArgumentId("protection"),
                 Condition::any_of({atom(ContextField::Sphere, "protection-sensitive"),
                                    atom(ContextField::Sensitive, "true")}),
                 Stance::MustLimit,
                 {EthicalValue::WellBeing, EthicalValue::Health, EthicalValue::Dignity},
                 {}});
    kb.add_rule({ArgumentId("inclusion"),
                 atom(ContextField::Sphere, "shared-resources"),
                 Stance::MustNotLimit,
                 {EthicalValue::Inclusion, EthicalValue::Justice},
                 {}});
    kb.add_rule({ArgumentId("freedom-of-choice"),
                 atom(ContextField::Sphere, "maximum-freedom"),
                 Stance::MayLimitCaution,
                 {EthicalValue::FreedomOfChoice},
                 {}});
    kb.add_rule({ArgumentId("no-harm"),
                 atom(ContextField::Harm, "true"),
                 Stance::RejectRequest,
                 {EthicalValue::NoHarmPrinciple},
                 {}});
    kb.version = kb.rules().size();
    return kb;
}

// ---------------------------------------------------------------------------
// Pipeline

std::vector<DomainArgument> instantiate(const KnowledgeBase& kb, const RequestContext& ctx) {
    std::vector<DomainArgument> out;
    for (const auto& rule : kb.rules()) {
        if (!eval_condition(rule.applies_if, ctx)) continue;
        DomainArgument arg{rule.name, rule.stance, rule.promotes, {}};
        collect_support(rule.applies_if, ctx, arg.premises);
        out.push_back(std::move(arg));
    }
    return out;
}

std::set<Attack> raw_attacks(const std::vector<DomainArgument>& args) {
    std::set<Attack> out;
    for (const auto& a : args) {
        for (const auto& b : args) {
            if (a.id != b.id && stances_conflict(a.stance, b.stance)) out.emplace(a.id, b.id);
        }
    }
    return out;
}

CurationAction action_for(Stance stance) {
    switch (stance) {
        case Stance::RejectRequest:   return CurationAction::RejectRequest;
        case Stance::MustLimit:       return CurationAction::LimitDiversity;
        case Stance::MustNotLimit:    return CurationAction::DoNotLimit;
        case Stance::MayLimitCaution: return CurationAction::PermitLimitWithNudge;
        case Stance::MayLimit:        return CurationAction::PermitLimit;
    }
    return CurationAction::PermitLimit;
}

std::vector<Instrument> instruments_for(CurationAction action) {
    switch (action) {
        case CurationAction::RejectRequest:        return {Instrument::BlockRequest, Instrument::ReportComplaint};
        case CurationAction::DoNotLimit:           return {Instrument::ScopeOptions};
        case CurationAction::PermitLimitWithNudge: return {Instrument::NudgeRevise, Instrument::ScopeOptions};
        case CurationAction::LimitDiversity:
        case CurationAction::PermitLimit:
            return {};
    }
    return {};
}

namespace {

const DomainArgument* most_protective(const std::vector<DomainArgument>& args, const Labelling& labelling, Label label) {
    const DomainArgument* best = nullptr;
    for (const auto& a : args) {
        if (labelling.at(a.id) != label) continue;
        if (!best || protectiveness(a.stance) > protectiveness(best->stance)) best = &a;
    }
    return best;
}

} // namespace

Decision decide(const RequestContext& request, const KnowledgeBase& kb) {
    const auto ctx = validate_context(request, kb.sphere_map());

    Decision d;
    d.arguments = instantiate(kb, ctx);
    for (const auto& a : d.arguments) {
        d.trace.emplace_back(ApplicableStep{a.id, a.stance, a.promotes, effective_rank(a), a.premises});
    }

    const auto attacks = raw_attacks(d.arguments);
    auto derivation = derive_defeats(d.arguments, attacks);
    std::map<ArgumentId, ValueClass> ranks;
    for (const auto& a : d.arguments) ranks.emplace(a.id, effective_rank(a));
    for (const auto& [from, to] : attacks) {
        d.trace.emplace_back(
            AttackStep{from, to, ranks.at(from), ranks.at(to), derivation.framework.has_attack(from, to)});
    }

    d.trace.emplace_back(SemanticsStep{Semantics::Grounded});
    d.labelling = grounded(derivation.framework);
    for (const auto& [id, label] : d.labelling.assignment) d.trace.emplace_back(LabelStep{id, label});
    d.defeat_graph = std::move(derivation.framework);
    d.prevailing = d.labelling.in_set();

    if (d.arguments.empty()) {
        d.action = CurationAction::PermitLimit;
        d.trace.emplace_back(MappingStep{std::nullopt, d.action});
        return d;
    }

    if (const auto* winner = most_protective(d.arguments, d.labelling, Label::In)) {
        d.action = action_for(winner->stance);
        d.instruments = instruments_for(d.action);
        d.trace.emplace_back(MappingStep{winner->stance, d.action});
        return d;
    }

    if (const auto* undecided = most_protective(d.arguments, d.labelling, Label::Undec)) {
        d.action = action_for(undecided->stance);
        d.instruments = instruments_for(d.action);
        if (std::find(d.instruments.begin(), d.instruments.end(), Instrument::NudgeRevise) == d.instruments.end()) {
            d.instruments.push_back(Instrument::NudgeRevise);
        }
        d.contested = true;
        auto undec = d.labelling.undec_set();
        d.trace.emplace_back(FallbackStep{{undec.begin(), undec.end()}, undecided->stance, d.action});
        return d;
    }

    // A non-empty grounded labelling always has an IN or UNDEC argument; kept total anyway.
    d.action = CurationAction::PermitLimit;
    d.trace.emplace_back(MappingStep{std::nullopt, d.action});
    return d;
}

// ---------------------------------------------------------------------------
// Trace rendering

std::string_view step_name(const TraceEntry& entry) {
    struct Names {
        std::string_view operator()(const ApplicableStep&) const { return "applicable"; }
        std::string_view operator()(const AttackStep&) const { return "attack"; }
        std::string_view operator()(const SemanticsStep&) const { return "semantics"; }
        std::string_view operator()(const LabelStep&) const { return "label"; }
        std::string_view operator()(const MappingStep&) const { return "mapping"; }
        std::string_view operator()(const FallbackStep&) const { return "fallback"; }
    };
    return std::visit(Names{}, entry);
}

namespace {

template <class Range, class F>
std::string join(const Range& items, std::string_view sep, F&& f) {
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out += sep;
        out += f(item);
        first = false;
    }
    return out;
}

struct Renderer {
    std::string operator()(const ApplicableStep& s) const {
        std::string out = "applicable: " + s.argument.str() + " [" + std::string(to_string(s.stance)) + "] promotes {" +
                          join(s.promotes, ", ", [](EthicalValue v) { return std::string(to_string(v)); }) + "} (" +
                          std::string(to_string(s.rank)) + ")";
        if (!s.premises.empty()) out += "; premises: " + join(s.premises, ", ", [](const std::string& p) { return p; });
        return out;
    }
    std::string operator()(const AttackStep& s) const {
        std::string ranks = std::string(to_string(s.attacker_rank)) + (s.defeat ? " >= " : " < ") +
                            std::string(to_string(s.target_rank));
        return "attack: " + s.attacker.str() + " -> " + s.target.str() + (s.defeat ? " kept (" : " removed (") +
               ranks + ")";
    }
    std::string operator()(const SemanticsStep& s) const {
        return "semantics: " + std::string(to_string(s.semantics));
    }
    std::string operator()(const LabelStep& s) const {
        return s.argument.str() + ": " + std::string(to_string(s.label));
    }
    std::string operator()(const MappingStep& s) const {
        if (!s.stance) {
            return "mapping: no argument applicable; user preference respected -> " + std::string(to_string(s.action));
        }
        return "mapping: " + std::string(to_string(*s.stance)) + " IN -> " + std::string(to_string(s.action));
    }
    std::string operator()(const FallbackStep& s) const {
        return "fallback: no stance-bearing argument IN; undecided: " +
               join(s.undecided, ", ", [](const ArgumentId& id) { return id.str(); }) +
               "; most protective stance " + std::string(to_string(s.chosen)) + " -> " +
               std::string(to_string(s.action)) + " (contested)";
    }
};

} // namespace

std::string render(const TraceEntry& entry) {
    return std::visit(Renderer{}, entry);
}

std::vector<std::string> explain(const Decision& decision) {
    std::vector<std::string> lines;
    lines.reserve(decision.trace.size());
    for (const auto& e : decision.trace) lines.push_back(render(e));
    return lines;
}

std::string explain_text(const Decision& decision) {
    std::string out;
    for (const auto& line : explain(decision)) out += line + "\n";
    return out;
}

} // namespace curator
