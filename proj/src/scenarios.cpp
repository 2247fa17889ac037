#include "curator/scenarios.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace curator {

namespace fs = std::filesystem;

FixtureFile load_fixture_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
        return FixtureFile{path.filename().string(), parse_scenarios(text)};
    } catch (const Error& e) {
        throw Error(e.code(), path.filename().string() + ": " + e.message(), e.span());
    }
}

std::vector<FixtureFile> load_fixture_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "'" + dir.string() + "' is not a directory");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scn") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<FixtureFile> out;
    for (const auto& p : paths) out.push_back(load_fixture_file(p));
    return out;
}

std::size_t ScenarioReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const FixtureResult& r) { return r.passed; }));
}

ScenarioReport run_fixtures(const std::vector<FixtureFile>& files, const KnowledgeBase& kb) {
    ScenarioReport report;
    for (const auto& file : files) {
        for (const auto& fx : file.fixtures) {
            FixtureResult r;
            r.file = file.file;
            r.name = fx.name;
            r.expected = fx.expect;
            try {
                auto d = decide(fx.context, kb);
                r.actual = d.action;
                r.contested = d.contested;
                r.passed = d.action == fx.expect;
                if (!r.passed) r.trace = explain(d);
            } catch (const Error& e) {
                r.error = std::string(to_string(e.code())) + ": " + e.what();
            }
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

namespace {

std::string verdict_line(const FixtureResult& r) {
    std::string out = r.name + " (" + r.file + "): expected " + std::string(to_string(r.expected));
    if (r.actual) out += ", got " + std::string(to_string(*r.actual)) + (r.contested ? " [contested]" : "");
    if (!r.error.empty()) out += ", error " + r.error;
    return out;
}

} // namespace

std::string report_text(const ScenarioReport& report) {
    std::string out;
    for (const auto& r : report.results) {
        out += (r.passed ? "PASS " : "FAIL ") + verdict_line(r) + "\n";
        for (const auto& line : r.trace) out += "    " + line + "\n";
    }
    out += std::to_string(report.passed()) + "/" + std::to_string(report.total()) + " fixtures passed\n";
    return out;
}

std::string report_tap(const ScenarioReport& report) {
    std::string out = "TAP version 13\n1.." + std::to_string(report.total()) + "\n";
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const auto& r = report.results[i];
        out += (r.passed ? "ok " : "not ok ") + std::to_string(i + 1) + " - " + verdict_line(r) + "\n";
        if (!r.passed) {
            out += "  ---\n  trace:\n";
            for (const auto& line : r.trace) out += "    - \"" + line + "\"\n";
            out += "  ...\n";
        }
    }
    return out;
}

Json report_json(const ScenarioReport& report) {
    Json results = Json::array();
    for (const auto& r : report.results) {
        Json j;
        j["file"] = r.file;
        j["name"] = r.name;
        j["expected"] = std::string(to_string(r.expected));
        j["actual"] = r.actual ? Json(std::string(to_string(*r.actual))) : Json(nullptr);
        j["contested"] = r.contested;
        j["passed"] = r.passed;
        if (!r.error.empty()) j["error"] = r.error;
        if (!r.trace.empty()) j["trace"] = r.trace;
        results.push_back(std::move(j));
    }
    Json out;
    out["total"] = report.total();
    out["passed"] = report.passed();
    out["all_passed"] = report.all_passed();
    out["results"] = std::move(results);
    return out;
}

} // namespace curator
