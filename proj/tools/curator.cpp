// curator: command-line front end for the diversity-curation engine.
//
//   curator decide --context ctx.json [--kb rules.kb|kb.log] [--explain] [--json]
//   curator scenarios run --fixtures DIR [--kb FILE] [--report json|tap]
//   curator af solve --input graph.apx --semantics grounded|complete|preferred|stable
//   curator kb init|append|show ...
//   curator serve [--port N] [--kb kb.log] [--fixtures DIR] [--decision-log FILE]
//
// Without --kb the CURATOR_KB environment variable names the knowledge base;
// failing that the built-in default knowledge base is used.
//
// Exit codes: 0 success, 1 fixture failures, 2 input errors.

#include "curator/af.hpp"
#include "curator/codec.hpp"
#include "curator/kblog.hpp"
#include "curator/scenarios.hpp"
#include "curator/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

#ifndef CURATOR_FIXTURES_DIR
#define CURATOR_FIXTURES_DIR "fixtures"
#endif

namespace {

using namespace curator;

constexpr int kExitInputError = 2;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<std::string> kb_path_or_env(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CURATOR_KB"); env && *env) return std::string(env);
    return std::nullopt;
}

KnowledgeBase resolve_kb(const std::string& flag) {
    if (auto path = kb_path_or_env(flag)) return kb_load_any(*path);
    return default_kb();
}

void print_error(const Error& e) {
    std::cerr << "curator: " << to_string(e.code()) << ": " << e.what() << "\n";
}

std::string bracketed(const Extension& ext) {
    std::string out = "[";
    bool first = true;
    for (const auto& id : ext) {
        if (!first) out += ",";
        out += id.str();
        first = false;
    }
    return out + "]";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ethical diversity curation engine"};
    app.require_subcommand(1);

    // decide
    std::string context_path, kb_flag;
    bool explain_flag = false, json_flag = false;
    auto* decide_cmd = app.add_subcommand("decide", "Decide how to curate respondent diversity for one request");
    decide_cmd->add_option("--context", context_path, "Request context JSON file")->required();
    decide_cmd->add_option("--kb", kb_flag, "Knowledge base (.kb rules or kbversion log)");
    decide_cmd->add_flag("--explain", explain_flag, "Print the decision trace");
    decide_cmd->add_flag("--json", json_flag, "Print the Decision JSON");

    // scenarios run
    std::string fixtures_dir, report_format;
    auto* scenarios_cmd = app.add_subcommand("scenarios", "Scenario fixtures");
    scenarios_cmd->require_subcommand(1);
    auto* run_cmd = scenarios_cmd->add_subcommand("run", "Run .scn fixtures against a knowledge base");
    run_cmd->add_option("--fixtures", fixtures_dir, "Directory of .scn files")->required();
    run_cmd->add_option("--kb", kb_flag, "Knowledge base (.kb rules or kbversion log)");
    run_cmd->add_option("--report", report_format, "Report format")->check(CLI::IsMember({"json", "tap"}));

    // af solve
    std::string apx_path, semantics_name;
    auto* af_cmd = app.add_subcommand("af", "Abstract argumentation frameworks");
    af_cmd->require_subcommand(1);
    auto* solve_cmd = af_cmd->add_subcommand("solve", "Print the extensions of an apx framework");
    solve_cmd->add_option("--input", apx_path, "Framework in apx format")->required();
    solve_cmd->add_option("--semantics", semantics_name, "grounded|complete|preferred|stable")
        ->required()
        ->check(CLI::IsMember({"grounded", "complete", "preferred", "stable"}));

    // kb
    std::string log_path, rule_path, author = "cli";
    auto* kb_cmd = app.add_subcommand("kb", "Knowledge-base log maintenance");
    kb_cmd->require_subcommand(1);
    auto* init_cmd = kb_cmd->add_subcommand("init", "Create a log seeded with the default knowledge base");
    init_cmd->add_option("--log", log_path, "Log file to create")->required();
    init_cmd->add_option("--author", author, "Author recorded on each entry");
    auto* append_cmd = kb_cmd->add_subcommand("append", "Append one rule block to a log");
    append_cmd->add_option("--log", log_path, "Log file")->required();
    append_cmd->add_option("--rule", rule_path, "File holding one argument block")->required();
    append_cmd->add_option("--author", author, "Author recorded on the entry");
    auto* show_cmd = kb_cmd->add_subcommand("show", "Print the canonical knowledge base");
    show_cmd->add_option("--kb", kb_flag, "Knowledge base (.kb rules or kbversion log)");

    // serve
    int port = 8080;
    std::string host = "127.0.0.1", serve_fixtures = CURATOR_FIXTURES_DIR, decision_log;
    auto* serve_cmd = app.add_subcommand("serve", "Run the JSON HTTP API");
    serve_cmd->add_option("--port", port, "Listen port");
    serve_cmd->add_option("--host", host, "Listen address");
    serve_cmd->add_option("--kb", kb_flag, "Knowledge-base log (created with defaults if missing)");
    serve_cmd->add_option("--fixtures", serve_fixtures, "Bundled fixture directory");
    serve_cmd->add_option("--decision-log", decision_log, "Append-only decision log (JSON lines)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*decide_cmd) {
            const auto kb = resolve_kb(kb_flag);
            const auto d = decide(context_from_json_text(read_text(context_path)), kb);
            if (json_flag) {
                std::cout << decision_json_text(d);
                return 0;
            }
            std::cout << "action: " << to_string(d.action) << "\n";
            std::cout << "instruments:";
            for (auto i : d.instruments) std::cout << " " << to_string(i);
            std::cout << "\nprevailing:";
            for (const auto& id : d.prevailing) std::cout << " " << id.str();
            std::cout << "\ncontested: " << (d.contested ? "true" : "false") << "\n";
            if (explain_flag) {
                std::cout << "trace:\n";
                for (const auto& line : explain(d)) std::cout << "  " << line << "\n";
            }
            return 0;
        }

        if (*run_cmd) {
            const auto kb = resolve_kb(kb_flag);
            const auto files = load_fixture_dir(fixtures_dir);
            const auto report = run_fixtures(files, kb);
            if (report.total() == 0) std::cerr << "curator: warning: 0 fixtures found in " << fixtures_dir << "\n";
            if (report_format == "json") std::cout << report_json(report).dump(2) << "\n";
            else if (report_format == "tap") std::cout << report_tap(report);
            else std::cout << report_text(report);
            return report.all_passed() ? 0 : 1;
        }

        if (*solve_cmd) {
            const auto af = parse_apx(read_text(apx_path));
            const auto exts = extensions(af, *semantics_from_string(semantics_name));
            if (exts.empty()) {
                std::cout << "NO\n";
                return 0;
            }
            for (const auto& e : exts) std::cout << bracketed(e) << "\n";
            return 0;
        }

        if (*init_cmd) {
            std::cout << "version " << kb_init(log_path, default_kb(), author) << "\n";
            return 0;
        }
        if (*append_cmd) {
            std::cout << "version " << kb_append_text(log_path, read_text(rule_path), author) << "\n";
            return 0;
        }
        if (*show_cmd) {
            const auto kb = resolve_kb(kb_flag);
            std::cout << "# version " << kb.version << "\n" << emit_kb(kb);
            return 0;
        }

        if (*serve_cmd) {
            std::string log = kb_path_or_env(kb_flag).value_or("curator.kblog");
            ServiceOptions options{log, serve_fixtures, std::nullopt};
            if (!decision_log.empty()) options.decision_log = decision_log;
            CuratorService service(std::move(options));
            httplib::Server server;
            service.mount(server);
            std::cerr << "curator: serving KB version " << service.snapshot()->kb.version << " on " << host << ":"
                      << port << "\n";
            if (!server.listen(host, port)) {
                std::cerr << "curator: cannot listen on " << host << ":" << port << "\n";
                return kExitInputError;
            }
            return 0;
        }
    } catch (const Error& e) {
        print_error(e);
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "curator: " << e.what() << "\n";
        return kExitInputError;
    }
    return 0;
}
