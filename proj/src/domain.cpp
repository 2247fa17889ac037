#include "curator/domain.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace curator {

std::string_view to_string(Sphere sphere) {
    switch (sphere) {
        case Sphere::MaximumFreedom:      return "maximum-freedom";
        case Sphere::SharedResources:     return "shared-resources";
        case Sphere::ProtectionSensitive: return "protection-sensitive";
    }
    return "maximum-freedom";
}

std::optional<Sphere> sphere_from_string(std::string_view text) {
    for (auto s : {Sphere::MaximumFreedom, Sphere::SharedResources, Sphere::ProtectionSensitive}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

const SphereMap& default_sphere_map() {
    static const SphereMap map = {
        {"leisure", Sphere::MaximumFreedom},
        {"sports", Sphere::MaximumFreedom},
        {"art", Sphere::MaximumFreedom},
        {"economy", Sphere::SharedResources},
        {"politics", Sphere::SharedResources},
        {"education", Sphere::SharedResources},
        {"religion", Sphere::ProtectionSensitive},
        {"health", Sphere::ProtectionSensitive},
        {"medicine", Sphere::ProtectionSensitive},
        {"psychology", Sphere::ProtectionSensitive},
        {"mental-health", Sphere::ProtectionSensitive},
    };
    return map;
}

std::string_view to_string(DiversityPreference preference) {
    switch (preference) {
        case DiversityPreference::Similar:     return "similar";
        case DiversityPreference::Different:   return "different";
        case DiversityPreference::Unspecified: return "unspecified";
    }
    return "unspecified";
}

std::optional<DiversityPreference> preference_from_string(std::string_view text) {
    for (auto p : {DiversityPreference::Similar, DiversityPreference::Different, DiversityPreference::Unspecified}) {
        if (to_string(p) == text) return p;
    }
    return std::nullopt;
}

Sphere classify_sphere(const std::set<std::string>& topic_tags, const SphereMap& sphere_map) {
    // indexed by Sphere enumerator; later enumerators are more protective
    std::array<int, 3> votes{};
    bool any = false;
    for (const auto& tag : topic_tags) {
        if (auto it = sphere_map.find(tag); it != sphere_map.end()) {
            ++votes[static_cast<std::size_t>(it->second)];
            any = true;
        }
    }
    if (!any) throw Error(ErrorCode::Unclassifiable, "no topic tag maps to a sphere");
    std::size_t best = 0;
    for (std::size_t i = 1; i < votes.size(); ++i) {
        if (votes[i] >= votes[best]) best = i;
    }
    return static_cast<Sphere>(best);
}

static std::string normalize_tag(std::string_view tag) {
    auto first = tag.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = tag.find_last_not_of(" \t\r\n");
    std::string out(tag.substr(first, last - first + 1));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

static bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

RequestContext validate_context(RequestContext ctx, const SphereMap& sphere_map) {
    std::set<std::string> tags;
    for (const auto& t : ctx.topic_tags) {
        if (auto n = normalize_tag(t); !n.empty()) tags.insert(std::move(n));
    }
    ctx.topic_tags = std::move(tags);
    if (ctx.topic_tags.empty()) {
        if (is_blank(ctx.request_text)) throw Error(ErrorCode::EmptyRequest, "request has neither text nor topic tags");
        if (!ctx.sphere) throw Error(ErrorCode::Unclassifiable, "request has no topic tags and no explicit sphere");
    }
    if (!ctx.sphere) ctx.sphere = classify_sphere(ctx.topic_tags, sphere_map);
    return ctx;
}

std::string_view to_string(CurationAction action) {
    switch (action) {
        case CurationAction::LimitDiversity:       return "limit-diversity";
        case CurationAction::DoNotLimit:           return "do-not-limit";
        case CurationAction::PermitLimit:          return "permit-limit";
        case CurationAction::PermitLimitWithNudge: return "permit-limit-with-nudge";
        case CurationAction::RejectRequest:        return "reject-request";
    }
    return "permit-limit";
}

std::optional<CurationAction> action_from_string(std::string_view text) {
    for (auto a : {CurationAction::LimitDiversity, CurationAction::DoNotLimit, CurationAction::PermitLimit,
                   CurationAction::PermitLimitWithNudge, CurationAction::RejectRequest}) {
        if (to_string(a) == text) return a;
    }
    return std::nullopt;
}

std::string_view to_string(Instrument instrument) {
    switch (instrument) {
        case Instrument::NudgeRevise:     return "nudge-revise";
        case Instrument::ScopeOptions:    return "scope-options";
        case Instrument::BlockRequest:    return "block-request";
        case Instrument::ReportComplaint: return "report-complaint";
    }
    return "nudge-revise";
}

} // namespace curator
