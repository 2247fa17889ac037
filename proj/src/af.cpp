#include "curator/af.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace curator {

bool is_valid_argument_name(std::string_view name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-' || c == '_';
    });
}

ArgumentId::ArgumentId(std::string name) : name_(std::move(name)) {
    if (!is_valid_argument_name(name_)) {
        throw Error(ErrorCode::ValidationError, "invalid argument name '" + name_ + "'");
    }
}

ArgumentationFramework::ArgumentationFramework(std::set<ArgumentId> arguments, std::set<Attack> attacks)
    : arguments_(std::move(arguments)) {
    for (const auto& [from, to] : attacks) add_attack(from, to);
}

void ArgumentationFramework::add_argument(ArgumentId id) {
    arguments_.insert(std::move(id));
}

void ArgumentationFramework::add_attack(const ArgumentId& attacker, const ArgumentId& target) {
    for (const auto* id : {&attacker, &target}) {
        if (!contains(*id)) {
            throw Error(ErrorCode::UnknownArgument, "attack endpoint '" + id->str() + "' is not an argument");
        }
    }
    attacks_.emplace(attacker, target);
}

bool ArgumentationFramework::has_attack(const ArgumentId& attacker, const ArgumentId& target) const {
    return attacks_.count(Attack{attacker, target}) != 0;
}

std::string_view to_string(Label label) {
    switch (label) {
        case Label::In:    return "IN";
        case Label::Out:   return "OUT";
        case Label::Undec: return "UNDEC";
    }
    return "UNDEC";
}

Label Labelling::at(const ArgumentId& id) const {
    auto it = assignment.find(id);
    if (it == assignment.end()) {
        throw Error(ErrorCode::UnknownArgument, "no label for '" + id.str() + "'");
    }
    return it->second;
}

Extension Labelling::with_label(Label label) const {
    Extension out;
    for (const auto& [id, l] : assignment) {
        if (l == label) out.insert(id);
    }
    return out;
}

std::string_view to_string(Semantics semantics) {
    switch (semantics) {
        case Semantics::Grounded:  return "grounded";
        case Semantics::Complete:  return "complete";
        case Semantics::Preferred: return "preferred";
        case Semantics::Stable:    return "stable";
    }
    return "grounded";
}

std::optional<Semantics> semantics_from_string(std::string_view text) {
    for (auto s : {Semantics::Grounded, Semantics::Complete, Semantics::Preferred, Semantics::Stable}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

namespace {

void require_member(const ArgumentationFramework& af, const ArgumentId& id) {
    if (!af.contains(id)) {
        throw Error(ErrorCode::UnknownArgument, "'" + id.str() + "' is not an argument of the framework");
    }
}

void require_subset(const ArgumentationFramework& af, const Extension& s) {
    for (const auto& id : s) require_member(af, id);
}

// Dense index form of a framework used by the labelling algorithms.
struct IndexedGraph {
    std::vector<ArgumentId> ids;
    std::vector<std::vector<std::size_t>> attackers;
    std::vector<std::vector<std::size_t>> targets;

    explicit IndexedGraph(const ArgumentationFramework& af) : ids(af.arguments().begin(), af.arguments().end()) {
        attackers.resize(ids.size());
        targets.resize(ids.size());
        auto index_of = [&](const ArgumentId& id) {
            return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (const auto& [from, to] : af.attacks()) {
            auto f = index_of(from);
            auto t = index_of(to);
            attackers[t].push_back(f);
            targets[f].push_back(t);
        }
    }

    std::size_t size() const { return ids.size(); }

    Labelling to_labelling(const std::vector<Label>& labels) const {
        Labelling out;
        for (std::size_t i = 0; i < ids.size(); ++i) out.assignment.emplace_hint(out.assignment.end(), ids[i], labels[i]);
        return out;
    }
};

std::vector<Label> grounded_labels(const IndexedGraph& g) {
    const std::size_t n = g.size();
    std::vector<Label> labels(n, Label::Undec);
    // live[i]: attackers of i not yet labelled OUT
    std::vector<std::size_t> live(n);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        live[i] = g.attackers[i].size();
        if (live[i] == 0) {
            labels[i] = Label::In;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        auto in = queue.front();
        queue.pop_front();
        for (auto t : g.targets[in]) {
            if (labels[t] != Label::Undec) continue;
            labels[t] = Label::Out;
            for (auto u : g.targets[t]) {
                if (--live[u] == 0 && labels[u] == Label::Undec) {
                    labels[u] = Label::In;
                    queue.push_back(u);
                }
            }
        }
    }
    return labels;
}

enum class Slot { Unset, In, Out, Undec };

// Local check of the completeness conditions at one argument under a partial
// assignment. Exact once the argument and all of its attackers are assigned.
bool locally_consistent(const IndexedGraph& g, const std::vector<Slot>& slots, std::size_t i) {
    if (slots[i] == Slot::Unset) return true;
    bool any_in = false;
    bool any_unset = false;
    bool all_out = true;
    for (auto a : g.attackers[i]) {
        switch (slots[a]) {
            case Slot::In:    any_in = true; all_out = false; break;
            case Slot::Unset: any_unset = true; all_out = false; break;
            case Slot::Undec: all_out = false; break;
            case Slot::Out:   break;
        }
    }
    switch (slots[i]) {
        case Slot::In:
            for (auto a : g.attackers[i]) {
                if (slots[a] != Slot::Out && slots[a] != Slot::Unset) return false;
            }
            return true;
        case Slot::Out:
            return any_in || any_unset;
        case Slot::Undec:
            return !any_in && !all_out;
        case Slot::Unset:
            return true;
    }
    return true;
}

void enumerate_complete(const IndexedGraph& g, std::vector<Slot>& slots,
                        const std::vector<std::size_t>& order, std::size_t depth,
                        std::vector<Labelling>& out) {
    if (depth == order.size()) {
        std::vector<Label> labels(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            labels[i] = slots[i] == Slot::In ? Label::In : slots[i] == Slot::Out ? Label::Out : Label::Undec;
        }
        out.push_back(g.to_labelling(labels));
        return;
    }
    const auto i = order[depth];
    for (auto choice : {Slot::In, Slot::Out, Slot::Undec}) {
        slots[i] = choice;
        bool ok = locally_consistent(g, slots, i);
        for (std::size_t k = 0; ok && k < g.targets[i].size(); ++k) {
            ok = locally_consistent(g, slots, g.targets[i][k]);
        }
        if (ok) enumerate_complete(g, slots, order, depth + 1, out);
    }
    slots[i] = Slot::Unset;
}

void require_within_cap(const ArgumentationFramework& af, std::size_t cap) {
    if (af.size() > cap) {
        throw Error(ErrorCode::TooLargeFramework, "framework has " + std::to_string(af.size()) +
                                                      " arguments; enumeration cap is " + std::to_string(cap));
    }
}

} // namespace

Extension attackers(const ArgumentationFramework& af, const ArgumentId& target) {
    require_member(af, target);
    Extension out;
    for (const auto& [from, to] : af.attacks()) {
        if (to == target) out.insert(from);
    }
    return out;
}

bool is_conflict_free(const ArgumentationFramework& af, const Extension& s) {
    require_subset(af, s);
    for (const auto& [from, to] : af.attacks()) {
        if (s.count(from) && s.count(to)) return false;
    }
    return true;
}

Extension characteristic(const ArgumentationFramework& af, const Extension& s) {
    require_subset(af, s);
    Extension out;
    for (const auto& a : af.arguments()) {
        bool defended = true;
        for (const auto& b : attackers(af, a)) {
            bool countered = std::any_of(s.begin(), s.end(), [&](const ArgumentId& c) { return af.has_attack(c, b); });
            if (!countered) {
                defended = false;
                break;
            }
        }
        if (defended) out.insert(a);
    }
    return out;
}

bool is_admissible(const ArgumentationFramework& af, const Extension& s) {
    if (!is_conflict_free(af, s)) return false;
    auto defended = characteristic(af, s);
    return std::includes(defended.begin(), defended.end(), s.begin(), s.end());
}

Labelling grounded(const ArgumentationFramework& af) {
    IndexedGraph g(af);
    return g.to_labelling(grounded_labels(g));
}

Extension grounded_fixpoint(const ArgumentationFramework& af) {
    Extension current;
    for (;;) {
        auto next = characteristic(af, current);
        if (next == current) return current;
        current = std::move(next);
    }
}

Labelling labelling_from_extension(const ArgumentationFramework& af, const Extension& in) {
    require_subset(af, in);
    Labelling out;
    for (const auto& a : af.arguments()) out.assignment.emplace(a, in.count(a) ? Label::In : Label::Undec);
    for (const auto& [from, to] : af.attacks()) {
        if (in.count(from) && !in.count(to)) out.assignment[to] = Label::Out;
    }
    return out;
}

bool is_complete_labelling(const ArgumentationFramework& af, const Labelling& labelling) {
    if (labelling.assignment.size() != af.size()) return false;
    for (const auto& a : af.arguments()) {
        if (!labelling.assignment.count(a)) return false;
    }
    for (const auto& a : af.arguments()) {
        bool all_out = true;
        bool some_in = false;
        for (const auto& b : attackers(af, a)) {
            auto l = labelling.at(b);
            all_out = all_out && l == Label::Out;
            some_in = some_in || l == Label::In;
        }
        auto l = labelling.at(a);
        if ((l == Label::In) != all_out) return false;
        if ((l == Label::Out) != some_in) return false;
    }
    return true;
}

std::vector<Labelling> complete_labellings(const ArgumentationFramework& af, std::size_t cap) {
    require_within_cap(af, cap);
    IndexedGraph g(af);
    // Every complete labelling extends the grounded one, so only its UNDEC
    // arguments need to be searched.
    auto base = grounded_labels(g);
    std::vector<Slot> slots(g.size(), Slot::Unset);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (base[i] == Label::In) slots[i] = Slot::In;
        else if (base[i] == Label::Out) slots[i] = Slot::Out;
        else order.push_back(i);
    }
    std::vector<Labelling> out;
    enumerate_complete(g, slots, order, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Extension> preferred(const ArgumentationFramework& af, std::size_t cap) {
    std::vector<Extension> ins;
    for (const auto& l : complete_labellings(af, cap)) ins.push_back(l.in_set());
    std::set<Extension> out;
    for (const auto& e : ins) {
        bool maximal = std::none_of(ins.begin(), ins.end(), [&](const Extension& f) {
            return f.size() > e.size() && std::includes(f.begin(), f.end(), e.begin(), e.end());
        });
        if (maximal) out.insert(e);
    }
    return out;
}

std::set<Extension> stable(const ArgumentationFramework& af, std::size_t cap) {
    std::set<Extension> out;
    for (const auto& l : complete_labellings(af, cap)) {
        if (l.undec_set().empty()) out.insert(l.in_set());
    }
    return out;
}

std::set<Extension> extensions(const ArgumentationFramework& af, Semantics semantics, std::size_t cap) {
    switch (semantics) {
        case Semantics::Grounded:
            return {grounded(af).in_set()};
        case Semantics::Complete: {
            std::set<Extension> out;
            for (const auto& l : complete_labellings(af, cap)) out.insert(l.in_set());
            return out;
        }
        case Semantics::Preferred:
            return preferred(af, cap);
        case Semantics::Stable:
            return stable(af, cap);
    }
    return {};
}

// ---------------------------------------------------------------------------
// apx

namespace {

struct ApxCursor {
    std::string_view line;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::SyntaxError, what, SourceSpan{line_no, pos + 1});
    }
    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= line.size() || line[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (line.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    std::string name() {
        skip_ws();
        auto start = pos;
        while (pos < line.size() && is_valid_argument_name(line.substr(pos, 1))) ++pos;
        if (start == pos) fail("expected argument name");
        return std::string(line.substr(start, pos - start));
    }
    void expect_end() {
        skip_ws();
        if (pos != line.size()) fail("unexpected trailing characters");
    }
};

} // namespace

ArgumentationFramework parse_apx(std::string_view text) {
    ArgumentationFramework af;
    struct PendingAttack {
        std::string from, to;
        SourceSpan span;
    };
    std::vector<PendingAttack> pending;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (auto c = line.find('%'); c != std::string_view::npos) line = line.substr(0, c);

        ApxCursor cur{line, 0, line_no};
        cur.skip_ws();
        if (cur.pos < line.size()) {
            if (cur.accept_word("arg")) {
                cur.expect('(');
                auto name = cur.name();
                cur.expect(')');
                cur.expect('.');
                cur.expect_end();
                af.add_argument(ArgumentId(name));
            } else if (cur.accept_word("att")) {
                cur.expect('(');
                auto from_col = cur.pos + 1;
                auto from = cur.name();
                cur.expect(',');
                auto to = cur.name();
                cur.expect(')');
                cur.expect('.');
                cur.expect_end();
                pending.push_back({from, to, SourceSpan{line_no, from_col}});
            } else {
                cur.fail("expected 'arg(...)' or 'att(...)'");
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }

    for (const auto& p : pending) {
        for (const auto* n : {&p.from, &p.to}) {
            if (!af.contains(ArgumentId(*n))) {
                throw Error(ErrorCode::UndeclaredArgument, "attack references undeclared argument '" + *n + "'", p.span);
            }
        }
        af.add_attack(ArgumentId(p.from), ArgumentId(p.to));
    }
    return af;
}

std::string emit_apx(const ArgumentationFramework& af) {
    std::string out;
    for (const auto& a : af.arguments()) out += "arg(" + a.str() + ").\n";
    for (const auto& [from, to] : af.attacks()) out += "att(" + from.str() + "," + to.str() + ").\n";
    return out;
}

} // namespace curator
