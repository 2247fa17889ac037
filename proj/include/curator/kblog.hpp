#pragma once

// Append-only knowledge-base log and Machine-Coaching steps.
//
// Log format (LF line endings):
//
//   kbversion 1
//   ---
//   timestamp: 2026-10-19T12:00:00Z
//   author: ethics-team
//   argument efficiency {
//     ...
//   }
//   ---
//   ...
//
// Replaying entries in order (later names shadow earlier ones) gives the
// current KnowledgeBase; its version is the number of entries replayed.
// Appends never rewrite existing bytes.

#include "curator/dsl.hpp"
#include "curator/rules.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curator {

inline constexpr std::string_view kKbLogHeader = "kbversion 1";

struct KbLogEntry {
    std::string timestamp;
    std::string author;
    std::string block;
    std::size_t line = 0;  // line of the entry's `---` separator
};

std::string utc_timestamp_now();

/// Creates a new log seeded with the rules of `seed`, one entry each. Fails if the file exists.
std::uint64_t kb_init(const std::filesystem::path& path, const KnowledgeBase& seed = default_kb(),
                      std::string_view author = "system", std::optional<std::string> timestamp = std::nullopt);

std::vector<KbLogEntry> read_kb_log(const std::filesystem::path& path);

/// Replays the whole log.
KnowledgeBase kb_load(const std::filesystem::path& path);

/// Replays only the first `version` entries: the KB exactly as it was at that version.
KnowledgeBase kb_load(const std::filesystem::path& path, std::uint64_t version);

/// Accepts either a log (detected by its header) or a plain .kb rule file.
KnowledgeBase kb_load_any(const std::filesystem::path& path);

bool is_kb_log(const std::filesystem::path& path);

/// Appends one rule entry and returns the new version.
std::uint64_t kb_append(const std::filesystem::path& path, const ArgumentRule& rule, std::string_view author,
                        std::optional<std::string> timestamp = std::nullopt);

/// Same as kb_append, but from rule DSL text. Rule errors surface as validation-error.
std::uint64_t kb_append_text(const std::filesystem::path& path, std::string_view rule_text, std::string_view author,
                             std::optional<std::string> timestamp = std::nullopt);

struct LabelChange {
    ArgumentId argument;
    std::optional<Label> before;
    std::optional<Label> after;
};

struct CoachingDiff {
    bool action_changed = false;
    CurationAction before_action = CurationAction::PermitLimit;
    CurationAction after_action = CurationAction::PermitLimit;
    bool contested_changed = false;
    std::vector<LabelChange> labelling_changes;
    std::vector<Attack> new_attacks;
    std::vector<Attack> removed_attacks;

    bool empty() const {
        return !action_changed && !contested_changed && labelling_changes.empty() && new_attacks.empty() &&
               removed_attacks.empty();
    }
};

CoachingDiff diff_decisions(const Decision& before, const Decision& after);

struct CoachingStep {
    Decision before;
    ArgumentRule proposed_rule;
    Decision after;
    CoachingDiff diff;
    std::uint64_t base_version = 0;
};

/// Previews the effect of adding `proposed_rule_text` to `kb`. Nothing is persisted.
CoachingStep coach(const RequestContext& ctx, const KnowledgeBase& kb, std::string_view proposed_rule_text);

} // namespace curator
