#pragma once

// Runs scenario fixtures through the decision pipeline and reports verdicts.

#include "curator/codec.hpp"
#include "curator/dsl.hpp"
#include "curator/rules.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace curator {

struct FixtureFile {
    std::string file;
    std::vector<ScenarioFixture> fixtures;
};

/// Parse errors are rethrown with the file name prefixed to the message.
FixtureFile load_fixture_file(const std::filesystem::path& path);

/// All `.scn` files in `dir`, sorted by file name.
std::vector<FixtureFile> load_fixture_dir(const std::filesystem::path& dir);

struct FixtureResult {
    std::string file;
    std::string name;
    CurationAction expected = CurationAction::PermitLimit;
    std::optional<CurationAction> actual;
    bool contested = false;
    bool passed = false;
    std::string error;
    std::vector<std::string> trace;  // kept for failures only
};

struct ScenarioReport {
    std::vector<FixtureResult> results;

    std::size_t total() const { return results.size(); }
    std::size_t passed() const;
    bool all_passed() const { return passed() == total(); }
};

/// Results follow the order of `files`; each verdict depends only on its own fixture.
ScenarioReport run_fixtures(const std::vector<FixtureFile>& files, const KnowledgeBase& kb);

std::string report_text(const ScenarioReport& report);
std::string report_tap(const ScenarioReport& report);
Json report_json(const ScenarioReport& report);

} // namespace curator
