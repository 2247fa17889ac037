#include "curator/kblog.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

namespace curator {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

std::string render_entry(const std::string& timestamp, std::string_view author, const std::string& block) {
    return "---\ntimestamp: " + timestamp + "\nauthor: " + std::string(author) + "\n" + block;
}

void check_author(std::string_view author) {
    if (author.find_first_of("\r\n") != std::string_view::npos) {
        throw Error(ErrorCode::ValidationError, "author must be a single line");
    }
}

void append_bytes(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::IoError, "cannot append to '" + path.string() + "'");
    out << bytes;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

// Parses one entry's block and folds it into `kb`.
void replay(KnowledgeBase& kb, const KbLogEntry& entry) {
    KnowledgeBase one;
    try {
        one = parse_kb(entry.block);
    } catch (const Error& e) {
        SourceSpan span{entry.line + 3, 1};
        if (e.span()) span = {entry.line + 2 + e.span()->line, e.span()->column};
        throw Error(ErrorCode::CorruptEntry, std::string("entry does not parse: ") + e.message(), span);
    }
    if (one.version != 1) {
        throw Error(ErrorCode::CorruptEntry, "entry must hold exactly one block", SourceSpan{entry.line, 1});
    }
    for (const auto& [topic, sphere] : one.topic_extensions()) kb.add_topic(topic, sphere);
    for (const auto& rule : one.rules()) kb.add_rule(rule);
    ++kb.version;
}

KnowledgeBase replay_prefix(const std::vector<KbLogEntry>& entries, std::uint64_t version) {
    KnowledgeBase kb;
    for (std::uint64_t i = 0; i < version; ++i) replay(kb, entries[i]);
    return kb;
}

} // namespace

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::uint64_t kb_init(const fs::path& path, const KnowledgeBase& seed, std::string_view author,
                      std::optional<std::string> timestamp) {
    check_author(author);
    if (fs::exists(path)) throw Error(ErrorCode::IoError, "'" + path.string() + "' already exists");
    const auto ts = timestamp.value_or(utc_timestamp_now());
    std::string bytes = std::string(kKbLogHeader) + "\n";
    std::uint64_t version = 0;
    for (const auto& [topic, sphere] : seed.topic_extensions()) {
        bytes += render_entry(ts, author, "topic " + topic + ": " + std::string(to_string(sphere)) + "\n");
        ++version;
    }
    for (const auto& rule : seed.rules()) {
        bytes += render_entry(ts, author, emit_rule(rule));
        ++version;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot create '" + path.string() + "'");
    out << bytes;
    if (!out.flush()) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    return version;
}

std::vector<KbLogEntry> read_kb_log(const fs::path& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty() || lines.front() != kKbLogHeader) {
        throw Error(ErrorCode::BadHeader, "'" + path.string() + "' does not start with '" +
                                              std::string(kKbLogHeader) + "'", SourceSpan{1, 1});
    }
    std::vector<KbLogEntry> entries;
    std::size_t i = 1;
    while (i < lines.size()) {
        if (lines[i].empty()) {
            ++i;
            continue;
        }
        if (lines[i] != "---") {
            throw Error(ErrorCode::CorruptEntry, "expected '---' entry separator", SourceSpan{i + 1, 1});
        }
        KbLogEntry entry;
        entry.line = i + 1;
        auto field = [&](std::size_t at, std::string_view key) {
            const std::string prefix = std::string(key) + ": ";
            if (at >= lines.size() || lines[at].rfind(prefix, 0) != 0) {
                throw Error(ErrorCode::CorruptEntry, "expected '" + std::string(key) + ":' line",
                            SourceSpan{std::min(at, lines.size()) + 1, 1});
            }
            return lines[at].substr(prefix.size());
        };
        entry.timestamp = field(i + 1, "timestamp");
        entry.author = field(i + 2, "author");
        i += 3;
        while (i < lines.size() && lines[i] != "---") entry.block += lines[i++] + "\n";
        entries.push_back(std::move(entry));
    }
    return entries;
}

KnowledgeBase kb_load(const fs::path& path) {
    auto entries = read_kb_log(path);
    return replay_prefix(entries, entries.size());
}

KnowledgeBase kb_load(const fs::path& path, std::uint64_t version) {
    auto entries = read_kb_log(path);
    if (version > entries.size()) {
        throw Error(ErrorCode::ValidationError, "log has no version " + std::to_string(version) + " (latest is " +
                                                    std::to_string(entries.size()) + ")");
    }
    return replay_prefix(entries, version);
}

bool is_kb_log(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    return first == kKbLogHeader;
}

KnowledgeBase kb_load_any(const fs::path& path) {
    if (is_kb_log(path)) return kb_load(path);
    return parse_kb(read_file(path));
}

std::uint64_t kb_append(const fs::path& path, const ArgumentRule& rule, std::string_view author,
                        std::optional<std::string> timestamp) {
    validate_rule(rule);
    check_author(author);
    const auto entries = read_kb_log(path);
    // Replaying also proves the existing log is intact before we extend it.
    replay_prefix(entries, entries.size());
    append_bytes(path, render_entry(timestamp.value_or(utc_timestamp_now()), author, emit_rule(rule)));
    return entries.size() + 1;
}

std::uint64_t kb_append_text(const fs::path& path, std::string_view rule_text, std::string_view author,
                             std::optional<std::string> timestamp) {
    ArgumentRule rule = [&] {
        try {
            return parse_rule(rule_text);
        } catch (const Error& e) {
            throw Error(ErrorCode::ValidationError, std::string("rule rejected: ") + e.message(), e.span());
        }
    }();
    return kb_append(path, rule, author, std::move(timestamp));
}

CoachingDiff diff_decisions(const Decision& before, const Decision& after) {
    CoachingDiff diff;
    diff.before_action = before.action;
    diff.after_action = after.action;
    diff.action_changed = before.action != after.action;
    diff.contested_changed = before.contested != after.contested;

    std::set<ArgumentId> ids;
    for (const auto& [id, _] : before.labelling.assignment) ids.insert(id);
    for (const auto& [id, _] : after.labelling.assignment) ids.insert(id);
    for (const auto& id : ids) {
        auto lookup = [&](const Labelling& l) -> std::optional<Label> {
            auto it = l.assignment.find(id);
            if (it == l.assignment.end()) return std::nullopt;
            return it->second;
        };
        auto b = lookup(before.labelling);
        auto a = lookup(after.labelling);
        if (a != b) diff.labelling_changes.push_back({id, b, a});
    }

    const auto& ba = before.defeat_graph.attacks();
    const auto& aa = after.defeat_graph.attacks();
    std::set_difference(aa.begin(), aa.end(), ba.begin(), ba.end(), std::back_inserter(diff.new_attacks));
    std::set_difference(ba.begin(), ba.end(), aa.begin(), aa.end(), std::back_inserter(diff.removed_attacks));
    return diff;
}

CoachingStep coach(const RequestContext& ctx, const KnowledgeBase& kb, std::string_view proposed_rule_text) {
    ArgumentRule rule = parse_rule(proposed_rule_text);
    KnowledgeBase extended = kb;
    extended.add_rule(rule);
    ++extended.version;

    Decision before = decide(ctx, kb);
    Decision after = decide(ctx, extended);
    CoachingDiff diff = diff_decisions(before, after);
    return CoachingStep{std::move(before), std::move(rule), std::move(after), std::move(diff), kb.version};
}

} // namespace curator
