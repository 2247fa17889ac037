#pragma once

#include "curator/error.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace curator {

enum class Sphere { MaximumFreedom, SharedResources, ProtectionSensitive };

std::string_view to_string(Sphere sphere);
std::optional<Sphere> sphere_from_string(std::string_view text);

/// Topic token -> sphere. Aliases are ordinary entries.
using SphereMap = std::map<std::string, Sphere, std::less<>>;

/// leisure/sports/art, economy/politics/education, religion/health/medicine/psychology,
/// plus the alias mental-health -> protection-sensitive.
const SphereMap& default_sphere_map();

enum class DiversityPreference { Similar, Different, Unspecified };

std::string_view to_string(DiversityPreference preference);
std::optional<DiversityPreference> preference_from_string(std::string_view text);

struct RequestContext {
    std::string request_text;
    std::set<std::string> topic_tags;
    std::optional<Sphere> sphere;
    bool demographic_target = false;
    bool skill_specific = false;
    bool sensitive = false;
    bool harm = false;
    DiversityPreference diversity_preference = DiversityPreference::Unspecified;
    std::string situatedness;

    friend bool operator==(const RequestContext&, const RequestContext&) = default;
};

/// Majority vote over mapped tags; ties go to the more protective sphere.
/// Throws unclassifiable when no tag is mapped.
Sphere classify_sphere(const std::set<std::string>& topic_tags, const SphereMap& sphere_map);

/// Lowercases and trims tags, then resolves a missing sphere from them.
/// Idempotent on its own output.
RequestContext validate_context(RequestContext ctx, const SphereMap& sphere_map = default_sphere_map());

enum class CurationAction { LimitDiversity, DoNotLimit, PermitLimit, PermitLimitWithNudge, RejectRequest };

std::string_view to_string(CurationAction action);
std::optional<CurationAction> action_from_string(std::string_view text);

enum class Instrument { NudgeRevise, ScopeOptions, BlockRequest, ReportComplaint };

std::string_view to_string(Instrument instrument);

} // namespace curator
