#pragma once

// Rule and scenario files (.kb / .scn).
//
//   argument protection {
//     promotes: well-being, health, dignity
//     applies-if: sphere = protection-sensitive or sensitive = true
//     stance: must-limit
//   }
//
//   scenario "safe-space" {
//     topic_tags: health
//     sensitive: true
//     expect: limit-diversity
//     note: "free text"
//   }
//
// Knowledge-base files may also extend the topic map with one-line blocks:
//
//   topic mental-health: protection-sensitive
//
// Newlines end field entries, `#` starts a comment. Emission is canonical
// (two-space indent, one blank line between blocks) and drops comments.

#include "curator/domain.hpp"
#include "curator/rules.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator {

struct ScenarioFixture {
    std::string name;
    RequestContext context;
    CurationAction expect = CurationAction::PermitLimit;
    std::optional<std::string> note;
    SourceSpan span;

    friend bool operator==(const ScenarioFixture& a, const ScenarioFixture& b) {
        return a.name == b.name && a.context == b.context && a.expect == b.expect && a.note == b.note;
    }
};

/// Later rules with the same name shadow earlier ones. The KB version is the
/// number of blocks read.
KnowledgeBase parse_kb(std::string_view text);

/// Parses exactly one rule block (as submitted for coaching or appended to a log).
ArgumentRule parse_rule(std::string_view text);

std::vector<ScenarioFixture> parse_scenarios(std::string_view text);

std::string emit_rule(const ArgumentRule& rule);
std::string emit_kb(const KnowledgeBase& kb);
std::string emit_scenarios(const std::vector<ScenarioFixture>& fixtures);

/// Canonical text of the built-in knowledge base.
std::string default_kb_text();

} // namespace curator
