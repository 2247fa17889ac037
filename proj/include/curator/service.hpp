#pragma once

// JSON HTTP API over the decision engine.
//
// Each request binds one immutable KB snapshot for its whole lifetime. Rule
// commits are serialized, appended to the log, and then published by swapping
// the snapshot pointer, so a response always reflects exactly one KB version
// (reported in the X-KB-Version header and, except for /v1/decide, in the body).

#include "curator/codec.hpp"
#include "curator/kblog.hpp"
#include "curator/scenarios.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace curator {

struct KbSnapshot {
    KnowledgeBase kb;
    std::string text;  // canonical DSL
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::uint64_t kb_version = 0;
};

struct ServiceOptions {
    std::filesystem::path kb_log;
    std::filesystem::path fixtures_dir;
    /// When set, every /v1/decide call appends {kb_version, context, decision_sha256} as one JSON line.
    std::optional<std::filesystem::path> decision_log;
};

/// Maps library errors onto {status, ApiError body}.
ApiResponse error_response(const Error& error, std::uint64_t kb_version);

class CuratorService {
public:
    /// Creates the log seeded with the default KB when it does not exist yet.
    explicit CuratorService(ServiceOptions options);

    std::shared_ptr<const KbSnapshot> snapshot() const;

    ApiResponse decide(std::string_view body);
    ApiResponse get_kb() const;
    /// Body: {"rule": text, "context": {...}, "author": str, "base_version": n}.
    /// Preview needs a context and never touches the log.
    ApiResponse post_rule(std::string_view body, bool preview);
    ApiResponse get_scenarios() const;
    /// Body: {"fixtures": scn text}; without it the bundled fixtures run.
    ApiResponse run_scenarios(std::string_view body) const;
    /// Body: {"apx": text, "semantics": "grounded|complete|preferred|stable"}.
    ApiResponse af_solve(std::string_view body) const;

    void mount(httplib::Server& server);

private:
    ServiceOptions options_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const KbSnapshot> current_;
    std::mutex commit_mutex_;
    std::mutex decision_log_mutex_;

    void publish(KnowledgeBase kb);
};

} // namespace curator
