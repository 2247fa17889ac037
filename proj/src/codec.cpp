#include "curator/codec.hpp"

#include <openssl/sha.h>

#include <array>

namespace curator {

namespace {

[[noreturn]] void bad(const std::string& message) {
    throw Error(ErrorCode::BadRequest, message);
}

bool bool_field(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return false;
    if (!j.at(key).is_boolean()) bad(std::string("'") + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

std::string string_field(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return {};
    if (!j.at(key).is_string()) bad(std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

template <class Range>
Json ids_to_json(const Range& ids) {
    Json out = Json::array();
    for (const auto& id : ids) out.push_back(id.str());
    return out;
}

} // namespace

RequestContext context_from_json(const Json& j) {
    static const std::set<std::string> known = {
        "request_text", "topic_tags", "sphere", "demographic_target", "skill_specific",
        "sensitive", "harm", "diversity_preference", "situatedness",
    };
    if (!j.is_object()) bad("context must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) bad("unknown context field '" + key + "'");
    }
    RequestContext ctx;
    ctx.request_text = string_field(j, "request_text");
    ctx.situatedness = string_field(j, "situatedness");
    if (j.contains("topic_tags") && !j.at("topic_tags").is_null()) {
        const auto& tags = j.at("topic_tags");
        if (!tags.is_array()) bad("'topic_tags' must be an array of strings");
        for (const auto& t : tags) {
            if (!t.is_string()) bad("'topic_tags' must be an array of strings");
            ctx.topic_tags.insert(t.get<std::string>());
        }
    }
    if (auto s = string_field(j, "sphere"); !s.empty()) {
        auto sphere = sphere_from_string(s);
        if (!sphere) bad("unknown sphere '" + s + "'");
        ctx.sphere = *sphere;
    }
    if (auto p = string_field(j, "diversity_preference"); !p.empty()) {
        auto pref = preference_from_string(p);
        if (!pref) bad("unknown diversity_preference '" + p + "'");
        ctx.diversity_preference = *pref;
    }
    ctx.demographic_target = bool_field(j, "demographic_target");
    ctx.skill_specific = bool_field(j, "skill_specific");
    ctx.sensitive = bool_field(j, "sensitive");
    ctx.harm = bool_field(j, "harm");
    return ctx;
}

RequestContext context_from_json_text(std::string_view text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) bad("context is not valid JSON");
    return context_from_json(j);
}

Json context_to_json(const RequestContext& ctx) {
    Json j;
    j["request_text"] = ctx.request_text;
    j["topic_tags"] = Json(ctx.topic_tags);
    j["sphere"] = ctx.sphere ? Json(std::string(to_string(*ctx.sphere))) : Json(nullptr);
    j["demographic_target"] = ctx.demographic_target;
    j["skill_specific"] = ctx.skill_specific;
    j["sensitive"] = ctx.sensitive;
    j["harm"] = ctx.harm;
    j["diversity_preference"] = std::string(to_string(ctx.diversity_preference));
    j["situatedness"] = ctx.situatedness;
    return j;
}

namespace {

struct EntryJson {
    Json operator()(const ApplicableStep& s) const {
        Json j;
        j["argument"] = s.argument.str();
        j["stance"] = std::string(to_string(s.stance));
        Json promotes = Json::array();
        for (auto v : s.promotes) promotes.push_back(std::string(to_string(v)));
        j["promotes"] = std::move(promotes);
        j["rank"] = std::string(to_string(s.rank));
        j["premises"] = s.premises;
        return j;
    }
    Json operator()(const AttackStep& s) const {
        Json j;
        j["attacker"] = s.attacker.str();
        j["target"] = s.target.str();
        j["attacker_rank"] = std::string(to_string(s.attacker_rank));
        j["target_rank"] = std::string(to_string(s.target_rank));
        j["defeat"] = s.defeat;
        return j;
    }
    Json operator()(const SemanticsStep& s) const {
        Json j;
        j["semantics"] = std::string(to_string(s.semantics));
        return j;
    }
    Json operator()(const LabelStep& s) const {
        Json j;
        j["argument"] = s.argument.str();
        j["label"] = std::string(to_string(s.label));
        return j;
    }
    Json operator()(const MappingStep& s) const {
        Json j;
        j["stance"] = s.stance ? Json(std::string(to_string(*s.stance))) : Json(nullptr);
        j["action"] = std::string(to_string(s.action));
        return j;
    }
    Json operator()(const FallbackStep& s) const {
        Json j;
        j["undecided"] = ids_to_json(s.undecided);
        j["stance"] = std::string(to_string(s.chosen));
        j["action"] = std::string(to_string(s.action));
        return j;
    }
};

} // namespace

Json trace_entry_to_json(const TraceEntry& entry) {
    Json j;
    j["step"] = std::string(step_name(entry));
    const Json fields = std::visit(EntryJson{}, entry);
    for (const auto& [k, v] : fields.items()) j[k] = v;
    j["text"] = render(entry);
    return j;
}

Json decision_to_json(const Decision& decision) {
    Json j;
    j["action"] = std::string(to_string(decision.action));
    Json instruments = Json::array();
    for (auto i : decision.instruments) instruments.push_back(std::string(to_string(i)));
    j["instruments"] = std::move(instruments);
    j["prevailing"] = ids_to_json(decision.prevailing);
    Json labelling = Json::object();
    for (const auto& [id, label] : decision.labelling.assignment) labelling[id.str()] = std::string(to_string(label));
    j["labelling"] = std::move(labelling);
    j["contested"] = decision.contested;
    Json trace = Json::array();
    for (const auto& e : decision.trace) trace.push_back(trace_entry_to_json(e));
    j["trace"] = std::move(trace);
    return j;
}

std::string decision_json_text(const Decision& decision) {
    return decision_to_json(decision).dump() + "\n";
}

Json fixture_to_json(const ScenarioFixture& fixture) {
    Json j;
    j["name"] = fixture.name;
    j["context"] = context_to_json(fixture.context);
    j["expect"] = std::string(to_string(fixture.expect));
    j["note"] = fixture.note ? Json(*fixture.note) : Json(nullptr);
    return j;
}

Json coaching_to_json(const CoachingStep& step) {
    auto label_json = [](const std::optional<Label>& l) { return l ? Json(std::string(to_string(*l))) : Json(nullptr); };
    auto attacks_json = [](const std::vector<Attack>& attacks) {
        Json out = Json::array();
        for (const auto& [from, to] : attacks) out.push_back(Json::array({from.str(), to.str()}));
        return out;
    };
    Json diff;
    diff["action_changed"] = step.diff.action_changed;
    diff["before_action"] = std::string(to_string(step.diff.before_action));
    diff["after_action"] = std::string(to_string(step.diff.after_action));
    diff["contested_changed"] = step.diff.contested_changed;
    Json changes = Json::array();
    for (const auto& c : step.diff.labelling_changes) {
        Json change;
        change["argument"] = c.argument.str();
        change["before"] = label_json(c.before);
        change["after"] = label_json(c.after);
        changes.push_back(std::move(change));
    }
    diff["labelling_changes"] = std::move(changes);
    diff["new_attacks"] = attacks_json(step.diff.new_attacks);
    diff["removed_attacks"] = attacks_json(step.diff.removed_attacks);
    diff["empty"] = step.diff.empty();

    Json j;
    j["kb_version"] = step.base_version;
    j["proposed_rule"] = emit_rule(step.proposed_rule);
    j["before"] = decision_to_json(step.before);
    j["after"] = decision_to_json(step.after);
    j["diff"] = std::move(diff);
    return j;
}

Json extensions_to_json(const std::set<Extension>& extensions) {
    Json out = Json::array();
    for (const auto& e : extensions) out.push_back(ids_to_json(e));
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest.data());
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(digest.size() * 2);
    for (auto b : digest) {
        out += hex[b >> 4];
        out += hex[b & 15];
    }
    return out;
}

} // namespace curator
