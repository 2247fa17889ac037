#include "curator/domain.hpp"

#include <doctest.h>

#include <vector>

using namespace curator;

namespace {

Sphere classify(std::set<std::string> tags) { return classify_sphere(tags, default_sphere_map()); }

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

TEST_CASE("default topic map") {
    const auto& m = default_sphere_map();
    for (auto t : {"leisure", "sports", "art"}) CHECK(m.at(t) == Sphere::MaximumFreedom);
    for (auto t : {"economy", "politics", "education"}) CHECK(m.at(t) == Sphere::SharedResources);
    for (auto t : {"religion", "health", "medicine", "psychology", "mental-health"})
        CHECK(m.at(t) == Sphere::ProtectionSensitive);
    CHECK(m.size() == 11);
}

TEST_CASE("sphere classification") {
    CHECK(classify({"sports"}) == Sphere::MaximumFreedom);
    CHECK(classify({"mental-health", "psychology"}) == Sphere::ProtectionSensitive);
    CHECK(classify({"sports", "leisure", "politics"}) == Sphere::MaximumFreedom);
    CHECK(classify({"sports", "politics"}) == Sphere::SharedResources);
    CHECK(classify({"art", "health"}) == Sphere::ProtectionSensitive);
    CHECK(classify({"education", "unknown-topic"}) == Sphere::SharedResources);
    CHECK(code_of([] { classify({"gardening"}); }) == ErrorCode::Unclassifiable);
    CHECK(code_of([] { classify({}); }) == ErrorCode::Unclassifiable);
}

TEST_CASE("context validation") {
    RequestContext ctx;
    ctx.topic_tags = {"  Sports ", "LEISURE"};
    auto v = validate_context(ctx);
    CHECK(v.topic_tags == std::set<std::string>{"sports", "leisure"});
    CHECK(v.sphere == Sphere::MaximumFreedom);

    RequestContext given;
    given.request_text = "hello";
    given.topic_tags = {"sports"};
    given.sphere = Sphere::ProtectionSensitive;
    CHECK(validate_context(given).sphere == Sphere::ProtectionSensitive);

    RequestContext empty;
    CHECK(code_of([&] { validate_context(empty); }) == ErrorCode::EmptyRequest);
    empty.request_text = "   ";
    CHECK(code_of([&] { validate_context(empty); }) == ErrorCode::EmptyRequest);
    empty.sphere = Sphere::MaximumFreedom;
    CHECK(code_of([&] { validate_context(empty); }) == ErrorCode::EmptyRequest);

    RequestContext text_only;
    text_only.request_text = "Anyone?";
    CHECK(code_of([&] { validate_context(text_only); }) == ErrorCode::Unclassifiable);
    text_only.sphere = Sphere::SharedResources;
    CHECK(validate_context(text_only).sphere == Sphere::SharedResources);

    RequestContext unknown;
    unknown.topic_tags = {"knitting"};
    CHECK(code_of([&] { validate_context(unknown); }) == ErrorCode::Unclassifiable);
}

TEST_CASE("validation is idempotent") {
    const std::vector<std::set<std::string>> tag_sets = {
        {"Sports"}, {" health", "ART "}, {"economy", "politics", "religion"}, {"Mental-Health"}};
    for (const auto& tags : tag_sets) {
        RequestContext ctx;
        ctx.topic_tags = tags;
        ctx.request_text = "x";
        auto once = validate_context(ctx);
        CHECK(validate_context(once) == once);
    }
}

TEST_CASE("name tables round-trip") {
    for (auto s : {Sphere::MaximumFreedom, Sphere::SharedResources, Sphere::ProtectionSensitive})
        CHECK(sphere_from_string(to_string(s)) == s);
    for (auto a : {CurationAction::LimitDiversity, CurationAction::DoNotLimit, CurationAction::PermitLimit,
                   CurationAction::PermitLimitWithNudge, CurationAction::RejectRequest})
        CHECK(action_from_string(to_string(a)) == a);
    for (auto p : {DiversityPreference::Similar, DiversityPreference::Different, DiversityPreference::Unspecified})
        CHECK(preference_from_string(to_string(p)) == p);
    CHECK(to_string(CurationAction::PermitLimitWithNudge) == "permit-limit-with-nudge");
    CHECK(to_string(Instrument::NudgeRevise) == "nudge-revise");
    CHECK_FALSE(sphere_from_string("Maximum-Freedom"));
}
