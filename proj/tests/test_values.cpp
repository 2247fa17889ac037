#include "curator/values.hpp"

#include <doctest.h>

#include <random>

using namespace curator;

namespace {

DomainArgument arg(const char* name, std::set<EthicalValue> promotes, Stance stance = Stance::MayLimit) {
    return DomainArgument{ArgumentId(name), stance, std::move(promotes), {}};
}

std::set<Attack> symmetric(const std::vector<DomainArgument>& args) {
    std::set<Attack> out;
    for (const auto& a : args)
        for (const auto& b : args)
            if (a.id != b.id) out.emplace(a.id, b.id);
    return out;
}

} // namespace

TEST_CASE("value classes follow the instrumental/fundamental split") {
    for (auto v : {EthicalValue::Inclusion, EthicalValue::Tolerance, EthicalValue::FreedomOfChoice,
                   EthicalValue::Efficiency}) {
        CHECK(rank_of(v) == ValueClass::Instrumental);
    }
    for (auto v : {EthicalValue::Autonomy, EthicalValue::WellBeing, EthicalValue::Health, EthicalValue::Dignity,
                   EthicalValue::Justice}) {
        CHECK(rank_of(v) == ValueClass::Fundamental);
    }
    CHECK(rank_of(EthicalValue::NoHarmPrinciple) == ValueClass::Paramount);
    CHECK(value_from_string("freedom-of-choice") == EthicalValue::FreedomOfChoice);
    CHECK(value_from_string("well-being") == EthicalValue::WellBeing);
    CHECK_FALSE(value_from_string("wellbeing"));
}

TEST_CASE("effective rank is the maximum promoted class") {
    CHECK(effective_rank(arg("e", {EthicalValue::Efficiency})) == ValueClass::Instrumental);
    CHECK(effective_rank(arg("i", {EthicalValue::Inclusion, EthicalValue::Justice})) == ValueClass::Fundamental);
    CHECK(effective_rank(arg("n", {EthicalValue::NoHarmPrinciple})) == ValueClass::Paramount);
    try {
        effective_rank(arg("x", {}));
        FAIL("expected empty-promotes");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyPromotes);
    }
}

TEST_CASE("defeat holds unless the attacker is strictly lower") {
    auto fundamental = arg("f", {EthicalValue::Health});
    auto instrumental = arg("i", {EthicalValue::Efficiency});
    CHECK(defeats(fundamental, instrumental));
    CHECK_FALSE(defeats(instrumental, fundamental));
    CHECK(defeats(fundamental, arg("g", {EthicalValue::Dignity})));
}

TEST_CASE("defeat graph examples") {
    auto protection = arg("protection", {EthicalValue::WellBeing, EthicalValue::Health, EthicalValue::Dignity});
    auto efficiency = arg("efficiency", {EthicalValue::Efficiency});
    auto inclusion = arg("inclusion", {EthicalValue::Inclusion, EthicalValue::Justice});
    auto no_harm = arg("no-harm", {EthicalValue::NoHarmPrinciple});

    auto d1 = derive_defeats({protection, efficiency}, symmetric({protection, efficiency}));
    CHECK(d1.framework.attacks() == std::set<Attack>{{protection.id, efficiency.id}});
    REQUIRE(d1.removed.size() == 1);
    CHECK(d1.removed[0].attacker == efficiency.id);
    CHECK(d1.removed[0].attacker_rank == ValueClass::Instrumental);
    CHECK(d1.removed[0].target_rank == ValueClass::Fundamental);

    auto g2 = derive_defeat_graph({inclusion, protection}, symmetric({inclusion, protection}));
    CHECK(g2.attacks().size() == 2);

    auto all = std::vector<DomainArgument>{no_harm, protection, efficiency, inclusion};
    auto g3 = derive_defeat_graph(all, symmetric(all));
    for (const auto& [from, to] : g3.attacks()) {
        if (to == no_harm.id) FAIL("paramount argument was defeated");
    }
    for (const auto& a : all)
        if (a.id != no_harm.id) CHECK(g3.has_attack(no_harm.id, a.id));

    CHECK_THROWS_AS(derive_defeat_graph({protection}, {{protection.id, ArgumentId("ghost")}}), Error);
}

namespace {

const std::vector<std::set<EthicalValue>> kValueSets = {
    {EthicalValue::Efficiency},
    {EthicalValue::Inclusion, EthicalValue::Tolerance},
    {EthicalValue::FreedomOfChoice},
    {EthicalValue::Health},
    {EthicalValue::Justice, EthicalValue::Inclusion},
    {EthicalValue::Autonomy, EthicalValue::Dignity},
    {EthicalValue::NoHarmPrinciple},
};

std::vector<DomainArgument> random_args(std::mt19937_64& rng, std::size_t max) {
    std::size_t n = 1 + rng() % max;
    std::vector<DomainArgument> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(DomainArgument{ArgumentId("a" + std::to_string(i)), Stance::MayLimit,
                                     kValueSets[rng() % kValueSets.size()], {}});
    }
    return out;
}

} // namespace

TEST_CASE("defeat graph properties on random argument sets") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 200; ++round) {
        auto args = random_args(rng, 7);
        std::set<Attack> raw;
        for (const auto& a : args)
            for (const auto& b : args)
                if (rng() % 2) raw.emplace(a.id, b.id);
        auto af = derive_defeat_graph(args, raw);
        CHECK(std::includes(raw.begin(), raw.end(), af.attacks().begin(), af.attacks().end()));
        CHECK(af.size() == args.size());

        // symmetric pairs of different rank leave exactly one edge, high to low
        auto sym = derive_defeat_graph(args, symmetric(args));
        for (const auto& a : args) {
            for (const auto& b : args) {
                if (a.id == b.id) continue;
                auto ra = ordinal(effective_rank(a));
                auto rb = ordinal(effective_rank(b));
                if (ra > rb) {
                    CHECK(sym.has_attack(a.id, b.id));
                    CHECK_FALSE(sym.has_attack(b.id, a.id));
                } else if (ra == rb) {
                    CHECK(sym.has_attack(a.id, b.id));
                }
            }
        }
    }
}

TEST_CASE("single-rank argument sets keep the raw graph") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 50; ++round) {
        std::vector<DomainArgument> args;
        std::size_t n = 1 + rng() % 6;
        for (std::size_t i = 0; i < n; ++i) {
            args.push_back(arg(("a" + std::to_string(i)).c_str(),
                               {i % 2 ? EthicalValue::Health : EthicalValue::Justice}));
        }
        std::set<Attack> raw;
        for (const auto& a : args)
            for (const auto& b : args)
                if (rng() % 3 == 0) raw.emplace(a.id, b.id);
        CHECK(derive_defeat_graph(args, raw).attacks() == raw);
    }
}

TEST_CASE("a paramount argument attacking everything is the whole grounded extension") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 100; ++round) {
        auto args = random_args(rng, 6);
        for (auto& a : args)
            if (a.promotes.count(EthicalValue::NoHarmPrinciple)) a.promotes = {EthicalValue::Health};
        DomainArgument top{ArgumentId("top"), Stance::RejectRequest, {EthicalValue::NoHarmPrinciple}, {}};
        args.push_back(top);
        auto af = derive_defeat_graph(args, symmetric(args));
        CHECK(grounded(af).in_set() == Extension{top.id});
    }
}
