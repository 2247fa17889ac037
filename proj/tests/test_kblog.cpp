#include "curator/codec.hpp"
#include "curator/kblog.hpp"
#include "support/gen.hpp"
#include "support/tempdir.hpp"

#include <doctest.h>

using namespace curator;
using testing::slurp;
using testing::TempDir;
using testing::write_file;

namespace {

const char* kDignityRule = R"(argument dignity-first {
  promotes: dignity
  applies-if: sensitive = true
  stance: must-limit
}
)";

RequestContext shared_sensitive_skill() {
    RequestContext ctx;
    ctx.request_text = "Who passed the bar exam while working full time?";
    ctx.topic_tags = {"education"};
    ctx.sensitive = true;
    ctx.skill_specific = true;
    return ctx;
}

RequestContext exam_context() {
    RequestContext ctx;
    ctx.request_text = "Any tips for the statistics exam?";
    ctx.topic_tags = {"education"};
    ctx.skill_specific = true;
    return ctx;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::IoError;
}

} // namespace

TEST_CASE("init seeds the built-in rules") {
    TempDir dir;
    auto log = dir / "kb.log";
    CHECK(kb_init(log, default_kb(), "system", "2026-01-01T00:00:00Z") == 5);
    auto text = slurp(log);
    CHECK(text.rfind("kbversion 1\n---\ntimestamp: 2026-01-01T00:00:00Z\nauthor: system\nargument efficiency {", 0) == 0);
    CHECK(is_kb_log(log));
    auto kb = kb_load(log);
    CHECK(kb == default_kb());
    CHECK(kb.version == 5);
    CHECK(read_kb_log(log).size() == 5);
    CHECK(code_of([&] { kb_init(log); }) == ErrorCode::IoError);
}

TEST_CASE("appends bump the version and never rewrite earlier bytes") {
    TempDir dir;
    auto log = dir / "kb.log";
    kb_init(log);
    const auto before = slurp(log);

    CHECK(kb_append_text(log, kDignityRule, "ethics-team", "2026-02-01T10:00:00Z") == 6);
    auto after_one = slurp(log);
    CHECK(after_one.compare(0, before.size(), before) == 0);
    CHECK(after_one.substr(before.size()).rfind("---\ntimestamp: 2026-02-01T10:00:00Z\nauthor: ethics-team\n", 0) == 0);

    auto shadow = parse_rule(R"(argument inclusion {
  promotes: inclusion
  applies-if: sphere = shared-resources
  stance: must-not-limit
}
)");
    CHECK(kb_append(log, shadow, "ethics-team") == 7);
    CHECK(slurp(log).compare(0, after_one.size(), after_one) == 0);

    auto kb = kb_load(log);
    CHECK(kb.version == 7);
    CHECK(kb.rules().size() == 6);
    CHECK(kb.find(ArgumentId("inclusion"))->promotes == std::set<EthicalValue>{EthicalValue::Inclusion});
}

TEST_CASE("loading a past version reproduces that KB") {
    TempDir dir;
    auto log = dir / "kb.log";
    kb_init(log);
    kb_append_text(log, kDignityRule, "a");
    CHECK(kb_load(log, 5) == default_kb());
    CHECK(kb_load(log, 6).find(ArgumentId("dignity-first")) != nullptr);
    CHECK(kb_load(log, 0).rules().empty());
    CHECK(code_of([&] { kb_load(log, 7); }) == ErrorCode::ValidationError);
}

TEST_CASE("rejected appends leave the log untouched") {
    TempDir dir;
    auto log = dir / "kb.log";
    kb_init(log);
    const auto before = slurp(log);
    auto bad_value = std::string(kDignityRule);
    bad_value.replace(bad_value.find("dignity\n"), 7, "honour");
    CHECK(code_of([&] { kb_append_text(log, bad_value, "a"); }) == ErrorCode::ValidationError);
    CHECK(code_of([&] { kb_append_text(log, "argument x {", "a"); }) == ErrorCode::ValidationError);
    CHECK(code_of([&] { kb_append_text(log, kDignityRule, "two\nlines"); }) == ErrorCode::ValidationError);
    CHECK(code_of([&] {
              kb_append(log, ArgumentRule{ArgumentId("empty"), Condition::leaf(Atom::make(ContextField::Harm, false, "true")),
                                          Stance::MayLimit, {}, {}},
                        "a");
          }) == ErrorCode::ValidationError);
    CHECK(slurp(log) == before);
}

TEST_CASE("corrupt logs are reported with positions") {
    TempDir dir;
    auto bad_header = dir / "bad-header.log";
    write_file(bad_header, "kbversion 2\n");
    CHECK(code_of([&] { kb_load(bad_header); }) == ErrorCode::BadHeader);

    auto log = dir / "kb.log";
    kb_init(log);
    auto text = slurp(log);
    auto pos = text.find("stance: must-limit");
    text.replace(pos, 18, "stance: must-limits");
    write_file(log, text);
    try {
        kb_load(log);
        FAIL("expected corrupt-entry");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CorruptEntry);
        REQUIRE(e.span());
        auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n')) + 1;
        CHECK(e.span()->line == line);
    }

    auto no_author = dir / "no-author.log";
    write_file(no_author, "kbversion 1\n---\ntimestamp: x\nargument a {\n}\n");
    CHECK(code_of([&] { kb_load(no_author); }) == ErrorCode::CorruptEntry);

    auto missing = dir / "missing.log";
    CHECK(code_of([&] { kb_load(missing); }) == ErrorCode::IoError);
}

TEST_CASE("topic extensions survive init and replay") {
    TempDir dir;
    auto log = dir / "kb.log";
    auto seed = default_kb();
    seed.add_topic("chess", Sphere::MaximumFreedom);
    CHECK(kb_init(log, seed) == 6);
    auto kb = kb_load(log);
    CHECK(kb == seed);
    CHECK(kb.sphere_map().at("chess") == Sphere::MaximumFreedom);
}

TEST_CASE("plain rule files load too") {
    TempDir dir;
    auto kb_file = dir / "rules.kb";
    write_file(kb_file, default_kb_text());
    CHECK_FALSE(is_kb_log(kb_file));
    CHECK(kb_load_any(kb_file) == default_kb());
    auto log = dir / "kb.log";
    kb_init(log);
    CHECK(kb_load_any(log) == default_kb());
}

TEST_CASE("replay is deterministic for random append sequences") {
    std::mt19937_64 rng(211);
    for (int round = 0; round < 20; ++round) {
        TempDir dir;
        auto log = dir / "kb.log";
        kb_init(log);
        KnowledgeBase expected = default_kb();
        std::vector<KnowledgeBase> versions;
        for (std::size_t i = 0, n = 1 + rng() % 6; i < n; ++i) {
            auto rule = gen::random_rule(rng, "r" + std::to_string(rng() % 4));
            expected.add_rule(rule);
            kb_append(log, rule, "fuzz");
            versions.push_back(expected);
        }
        auto a = kb_load(log);
        auto b = kb_load(log);
        CHECK(a == b);
        CHECK(a == expected);
        for (std::size_t v = 0; v < versions.size(); ++v) CHECK(kb_load(log, 6 + v) == versions[v]);
    }
}

TEST_CASE("coaching a missing rule changes the outcome") {
    auto kb = default_kb();
    auto step = coach(shared_sensitive_skill(), kb, kDignityRule);
    CHECK(step.base_version == 5);
    CHECK(step.before.action == CurationAction::LimitDiversity);
    CHECK(step.before.contested);
    CHECK(step.after.action == CurationAction::LimitDiversity);
    // a second fundamental must-limit argument still ties with inclusion
    CHECK(step.after.contested);
    CHECK_FALSE(step.diff.action_changed);
    CHECK(step.diff.new_attacks.size() == 2);
    CHECK_FALSE(step.diff.empty());

    auto exam = coach(exam_context(), kb, R"(argument exam-anxiety {
  promotes: well-being
  applies-if: skill_specific = true
  stance: must-limit
}
)");
    CHECK(exam.before.action == CurationAction::DoNotLimit);
    CHECK(exam.after.action == CurationAction::LimitDiversity);
    CHECK(exam.diff.action_changed);
    CHECK(exam.diff.before_action == CurationAction::DoNotLimit);
    CHECK(exam.diff.after_action == CurationAction::LimitDiversity);
    CHECK_FALSE(exam.diff.new_attacks.empty());
    bool saw_new = false;
    for (const auto& c : exam.diff.labelling_changes)
        if (c.argument.str() == "exam-anxiety") saw_new = !c.before.has_value() && c.after.has_value();
    CHECK(saw_new);
}

TEST_CASE("coaching an inapplicable rule yields an empty diff") {
    auto step = coach(exam_context(), default_kb(), R"(argument only-when-harmful {
  promotes: dignity
  applies-if: harm = true
  stance: must-limit
}
)");
    CHECK(step.diff.empty());
    CHECK(step.before.action == step.after.action);
}

TEST_CASE("coaching rejects malformed rules and never touches the log") {
    TempDir dir;
    auto log = dir / "kb.log";
    kb_init(log);
    const auto hash = sha256_hex(slurp(log));
    auto kb = kb_load(log);
    CHECK(code_of([&] { coach(exam_context(), kb, "argument broken {\n  promotes: nope\n}"); }) ==
          ErrorCode::UnknownValue);
    coach(exam_context(), kb, kDignityRule);
    CHECK(sha256_hex(slurp(log)) == hash);
    CHECK(kb_load(log).version == 5);
}
