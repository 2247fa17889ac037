#include "curator/service.hpp"

#include <httplib.h>

#include <fstream>

namespace curator {

namespace fs = std::filesystem;

namespace {

Json parse_body(std::string_view body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
    return j;
}

std::string required_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw Error(ErrorCode::BadRequest, std::string("'") + key + "' (string) is required");
    }
    return j.at(key).get<std::string>();
}

ApiResponse ok(Json body, std::uint64_t version) {
    return ApiResponse{200, body.dump() + "\n", version};
}

} // namespace

ApiResponse error_response(const Error& error, std::uint64_t kb_version) {
    std::string code = "internal";
    int status = 500;
    switch (error.code()) {
        case ErrorCode::BadRequest:
        case ErrorCode::EmptyRequest:
        case ErrorCode::ValidationError:
        case ErrorCode::UnknownArgument:
        case ErrorCode::TooLargeFramework:
            code = "bad-request";
            status = 400;
            break;
        case ErrorCode::Unclassifiable:
            code = "unclassifiable";
            status = 422;
            break;
        case ErrorCode::SyntaxError:
        case ErrorCode::UndeclaredArgument:
        case ErrorCode::UnknownField:
        case ErrorCode::UnknownValue:
        case ErrorCode::UnknownStance:
        case ErrorCode::EmptyPromotes:
            code = "parse-error";
            status = 400;
            break;
        case ErrorCode::KbConflict:
            code = "kb-conflict";
            status = 409;
            break;
        case ErrorCode::BadHeader:
        case ErrorCode::CorruptEntry:
        case ErrorCode::IoError:
            break;
    }
    Json err;
    err["code"] = code;
    err["message"] = error.message();
    if (error.span()) err["span"] = Json{{"line", error.span()->line}, {"column", error.span()->column}};
    Json body;
    body["error"] = std::move(err);
    body["kb_version"] = kb_version;
    return ApiResponse{status, body.dump() + "\n", kb_version};
}

CuratorService::CuratorService(ServiceOptions options) : options_(std::move(options)) {
    if (!fs::exists(options_.kb_log)) kb_init(options_.kb_log);
    publish(kb_load(options_.kb_log));
}

void CuratorService::publish(KnowledgeBase kb) {
    auto snap = std::make_shared<KbSnapshot>();
    snap->text = emit_kb(kb);
    snap->kb = std::move(kb);
    std::lock_guard lock(snapshot_mutex_);
    current_ = std::move(snap);
}

std::shared_ptr<const KbSnapshot> CuratorService::snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return current_;
}

ApiResponse CuratorService::decide(std::string_view body) {
    const auto snap = snapshot();
    try {
        Json j = parse_body(body);
        const RequestContext ctx = context_from_json(j);
        const Decision d = curator::decide(ctx, snap->kb);
        std::string text = decision_json_text(d);
        if (options_.decision_log) {
            Json line;
            line["kb_version"] = snap->kb.version;
            line["context"] = context_to_json(ctx);
            line["decision_sha256"] = sha256_hex(text);
            std::lock_guard lock(decision_log_mutex_);
            std::ofstream out(*options_.decision_log, std::ios::binary | std::ios::app);
            if (!out) throw Error(ErrorCode::IoError, "cannot write decision log");
            out << line.dump() << "\n";
        }
        return ApiResponse{200, std::move(text), snap->kb.version};
    } catch (const Error& e) {
        return error_response(e, snap->kb.version);
    }
}

ApiResponse CuratorService::get_kb() const {
    const auto snap = snapshot();
    Json body;
    body["kb_version"] = snap->kb.version;
    body["text"] = snap->text;
    return ok(std::move(body), snap->kb.version);
}

ApiResponse CuratorService::post_rule(std::string_view body, bool preview) {
    auto snap = snapshot();
    try {
        Json j = parse_body(body);
        const std::string rule_text = required_string(j, "rule");
        if (preview) {
            if (!j.contains("context")) throw Error(ErrorCode::BadRequest, "preview needs a 'context'");
            auto step = coach(context_from_json(j.at("context")), snap->kb, rule_text);
            Json out = coaching_to_json(step);
            out["preview"] = true;
            return ok(std::move(out), snap->kb.version);
        }

        ArgumentRule rule = parse_rule(rule_text);
        std::string author = "api";
        if (j.contains("author")) author = required_string(j, "author");

        std::lock_guard commit(commit_mutex_);
        snap = snapshot();
        if (j.contains("base_version")) {
            if (!j.at("base_version").is_number_unsigned() ||
                j.at("base_version").get<std::uint64_t>() != snap->kb.version) {
                throw Error(ErrorCode::KbConflict, "base_version does not match the current KB version " +
                                                       std::to_string(snap->kb.version));
            }
        }
        kb_append(options_.kb_log, rule, author);
        publish(kb_load(options_.kb_log));
        snap = snapshot();
        Json out;
        out["kb_version"] = snap->kb.version;
        out["committed"] = true;
        out["rule"] = emit_rule(rule);
        return ok(std::move(out), snap->kb.version);
    } catch (const Error& e) {
        return error_response(e, snap->kb.version);
    }
}

ApiResponse CuratorService::get_scenarios() const {
    const auto snap = snapshot();
    try {
        Json fixtures = Json::array();
        for (const auto& file : load_fixture_dir(options_.fixtures_dir)) {
            for (const auto& fx : file.fixtures) {
                Json f = fixture_to_json(fx);
                f["file"] = file.file;
                fixtures.push_back(std::move(f));
            }
        }
        Json body;
        body["kb_version"] = snap->kb.version;
        body["fixtures"] = std::move(fixtures);
        return ok(std::move(body), snap->kb.version);
    } catch (const Error& e) {
        return error_response(e, snap->kb.version);
    }
}

ApiResponse CuratorService::run_scenarios(std::string_view body) const {
    const auto snap = snapshot();
    try {
        Json j = parse_body(body);
        std::vector<FixtureFile> files;
        if (j.contains("fixtures")) {
            files.push_back(FixtureFile{"request", parse_scenarios(required_string(j, "fixtures"))});
        } else {
            files = load_fixture_dir(options_.fixtures_dir);
        }
        Json out = report_json(run_fixtures(files, snap->kb));
        out["kb_version"] = snap->kb.version;
        return ok(std::move(out), snap->kb.version);
    } catch (const Error& e) {
        return error_response(e, snap->kb.version);
    }
}

ApiResponse CuratorService::af_solve(std::string_view body) const {
    const auto version = snapshot()->kb.version;
    try {
        Json j = parse_body(body);
        const auto name = required_string(j, "semantics");
        auto semantics = semantics_from_string(name);
        if (!semantics) throw Error(ErrorCode::BadRequest, "unknown semantics '" + name + "'");
        auto af = parse_apx(required_string(j, "apx"));
        auto exts = extensions(af, *semantics);
        Json out;
        out["kb_version"] = version;
        out["semantics"] = name;
        out["extensions"] = extensions_to_json(exts);
        return ok(std::move(out), version);
    } catch (const Error& e) {
        return error_response(e, version);
    }
}

void CuratorService::mount(httplib::Server& server) {
    auto reply = [](httplib::Response& res, const ApiResponse& api) {
        res.status = api.status;
        res.set_header("X-KB-Version", std::to_string(api.kb_version));
        res.set_content(api.body, "application/json");
    };
    server.Post("/v1/decide", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, decide(req.body));
    });
    server.Get("/v1/kb", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, get_kb()); });
    server.Post("/v1/kb/rules", [this, reply](const httplib::Request& req, httplib::Response& res) {
        const bool preview = req.has_param("preview") && req.get_param_value("preview") != "0";
        reply(res, post_rule(req.body, preview));
    });
    server.Get("/v1/scenarios", [this, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, get_scenarios());
    });
    server.Post("/v1/scenarios/run", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, run_scenarios(req.body));
    });
    server.Post("/v1/af/solve", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, af_solve(req.body));
    });
    server.set_exception_handler([this, reply](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            message = e.what();
        } catch (...) {
        }
        reply(res, error_response(Error(ErrorCode::IoError, message), snapshot()->kb.version));
    });
}

} // namespace curator
