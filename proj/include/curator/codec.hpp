#pragma once

// JSON forms of contexts, decisions and coaching steps. Field order is fixed
// so serialized decisions can be hashed and compared byte for byte.

#include "curator/dsl.hpp"
#include "curator/kblog.hpp"
#include "curator/rules.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace curator {

using Json = nlohmann::ordered_json;

/// snake_case keys as in RequestContext; booleans default to false and
/// diversity_preference to "unspecified". Unknown keys are rejected (bad-request).
RequestContext context_from_json(const Json& j);
RequestContext context_from_json_text(std::string_view text);
Json context_to_json(const RequestContext& ctx);

Json trace_entry_to_json(const TraceEntry& entry);

/// {action, instruments[], prevailing[], labelling{arg:label}, contested, trace[]}
Json decision_to_json(const Decision& decision);

/// Compact dump plus a trailing newline; the byte form shared by the CLI and the service.
std::string decision_json_text(const Decision& decision);

Json fixture_to_json(const ScenarioFixture& fixture);

/// {kb_version, proposed_rule, before, after, diff}
Json coaching_to_json(const CoachingStep& step);

Json extensions_to_json(const std::set<Extension>& extensions);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

} // namespace curator
