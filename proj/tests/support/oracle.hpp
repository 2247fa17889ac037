#pragma once

// Test-only oracles. Nothing here calls into the production semantics or the
// rule pipeline; they share only the plain data types.

#include "curator/af.hpp"
#include "curator/domain.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using curator::ArgumentId;
using curator::Label;

/// Dense framework: arguments 0..n-1, adjacency matrix att[from][to].
struct DenseAf {
    std::size_t n = 0;
    std::vector<std::vector<bool>> att;

    static std::string name(std::size_t i) { return "a" + std::to_string(i); }

    curator::ArgumentationFramework to_af() const {
        curator::ArgumentationFramework af;
        for (std::size_t i = 0; i < n; ++i) af.add_argument(ArgumentId(name(i)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (att[i][j]) af.add_attack(ArgumentId(name(i)), ArgumentId(name(j)));
        return af;
    }
};

inline DenseAf random_af(std::mt19937_64& rng, std::size_t max_n = 10, double max_density = 0.5) {
    std::uniform_int_distribution<std::size_t> size(0, max_n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    DenseAf g;
    g.n = size(rng);
    const double density = unit(rng) * max_density;
    g.att.assign(g.n, std::vector<bool>(g.n, false));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) g.att[i][j] = unit(rng) < density;
    return g;
}

/// Every labelling in {IN, OUT, UNDEC}^n that satisfies the completeness conditions.
inline std::vector<std::vector<Label>> brute_complete(const DenseAf& g) {
    std::vector<std::vector<Label>> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < g.n; ++i) total *= 3;
    std::vector<Label> lab(g.n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < g.n; ++i) {
            lab[i] = static_cast<Label>(c % 3);
            c /= 3;
        }
        bool ok = true;
        for (std::size_t a = 0; a < g.n && ok; ++a) {
            bool all_out = true;
            bool some_in = false;
            for (std::size_t b = 0; b < g.n; ++b) {
                if (!g.att[b][a]) continue;
                all_out = all_out && lab[b] == Label::Out;
                some_in = some_in || lab[b] == Label::In;
            }
            ok = ((lab[a] == Label::In) == all_out) && ((lab[a] == Label::Out) == some_in);
        }
        if (ok) out.push_back(lab);
    }
    return out;
}

inline std::set<std::size_t> in_indices(const std::vector<Label>& lab) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < lab.size(); ++i)
        if (lab[i] == Label::In) s.insert(i);
    return s;
}

inline curator::Extension to_extension(const std::set<std::size_t>& s) {
    curator::Extension e;
    for (auto i : s) e.insert(ArgumentId(DenseAf::name(i)));
    return e;
}

inline curator::Labelling to_labelling(const std::vector<Label>& lab) {
    curator::Labelling l;
    for (std::size_t i = 0; i < lab.size(); ++i) l.assignment.emplace(ArgumentId(DenseAf::name(i)), lab[i]);
    return l;
}

inline bool subset(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// The complete labelling whose IN-set is contained in every other one.
inline std::vector<Label> brute_grounded(const DenseAf& g) {
    auto all = brute_complete(g);
    for (const auto& l : all) {
        auto in = in_indices(l);
        if (std::all_of(all.begin(), all.end(), [&](const auto& m) { return subset(in, in_indices(m)); })) return l;
    }
    return {};  // unreachable: a complete labelling always exists
}

inline std::set<curator::Extension> brute_complete_exts(const DenseAf& g) {
    std::set<curator::Extension> out;
    for (const auto& l : brute_complete(g)) out.insert(to_extension(in_indices(l)));
    return out;
}

inline std::set<curator::Extension> brute_preferred(const DenseAf& g) {
    auto all = brute_complete(g);
    std::set<curator::Extension> out;
    for (const auto& l : all) {
        auto in = in_indices(l);
        bool maximal = std::none_of(all.begin(), all.end(), [&](const auto& m) {
            auto other = in_indices(m);
            return other.size() > in.size() && subset(in, other);
        });
        if (maximal) out.insert(to_extension(in));
    }
    return out;
}

inline std::set<curator::Extension> brute_stable(const DenseAf& g) {
    std::set<curator::Extension> out;
    for (const auto& l : brute_complete(g)) {
        if (std::none_of(l.begin(), l.end(), [](Label x) { return x == Label::Undec; })) {
            out.insert(to_extension(in_indices(l)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decision oracle for the five built-in arguments, written straight from the
// argument texts: hand-coded applicability, stance, rank, conflicts and
// action mapping, with grounded computed by exhaustive labelling search.

struct OracleOutcome {
    curator::CurationAction action;
    bool contested;
    std::set<std::string> prevailing;
};

inline OracleOutcome decide_default(curator::Sphere sphere, bool sensitive, bool harm, bool demographic,
                                    bool skill) {
    using curator::CurationAction;
    using curator::Sphere;
    // stance codes, most protective first in `protect`
    enum S { Reject = 4, MustLimit = 3, MustNot = 2, Caution = 1, May = 0 };
    struct Arg {
        std::string name;
        S stance;
        int rank;  // 0 instrumental, 1 fundamental, 2 paramount
    };
    std::vector<Arg> args;
    if (demographic || skill) args.push_back({"efficiency", May, 0});
    if (sphere == Sphere::ProtectionSensitive || sensitive) args.push_back({"protection", MustLimit, 1});
    if (sphere == Sphere::SharedResources) args.push_back({"inclusion", MustNot, 1});
    if (sphere == Sphere::MaximumFreedom) args.push_back({"freedom-of-choice", Caution, 0});
    if (harm) args.push_back({"no-harm", Reject, 2});

    if (args.empty()) return {CurationAction::PermitLimit, false, {}};

    auto conflict = [](S a, S b) {
        if (a == b) return false;
        if (a == Reject || b == Reject) return true;
        return a == MustNot || b == MustNot;
    };
    DenseAf g;
    g.n = args.size();
    g.att.assign(g.n, std::vector<bool>(g.n, false));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            if (i != j && conflict(args[i].stance, args[j].stance) && args[i].rank >= args[j].rank) g.att[i][j] = true;

    auto lab = brute_grounded(g);
    auto action_of = [](S s) {
        switch (s) {
            case Reject:    return CurationAction::RejectRequest;
            case MustLimit: return CurationAction::LimitDiversity;
            case MustNot:   return CurationAction::DoNotLimit;
            case Caution:   return CurationAction::PermitLimitWithNudge;
            case May:       return CurationAction::PermitLimit;
        }
        return CurationAction::PermitLimit;
    };
    OracleOutcome out{CurationAction::PermitLimit, false, {}};
    int best_in = -1;
    int best_undec = -1;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (lab[i] == Label::In) {
            out.prevailing.insert(args[i].name);
            best_in = std::max(best_in, static_cast<int>(args[i].stance));
        } else if (lab[i] == Label::Undec) {
            best_undec = std::max(best_undec, static_cast<int>(args[i].stance));
        }
    }
    if (best_in >= 0) {
        out.action = action_of(static_cast<S>(best_in));
    } else if (best_undec >= 0) {
        out.action = action_of(static_cast<S>(best_undec));
        out.contested = true;
    }
    return out;
}

} // namespace oracle
