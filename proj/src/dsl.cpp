#include "curator/dsl.hpp"

#include <cctype>
#include <set>

namespace curator {

namespace {

enum class Tok { Word, String, LBrace, RBrace, Colon, Comma, LParen, RParen, Eq, Neq, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

std::string_view describe(Tok kind) {
    switch (kind) {
        case Tok::Word:    return "word";
        case Tok::String:  return "string";
        case Tok::LBrace:  return "'{'";
        case Tok::RBrace:  return "'}'";
        case Tok::Colon:   return "':'";
        case Tok::Comma:   return "','";
        case Tok::LParen:  return "'('";
        case Tok::RParen:  return "')'";
        case Tok::Eq:      return "'='";
        case Tok::Neq:     return "'!='";
        case Tok::Newline: return "end of line";
        case Tok::End:     return "end of input";
    }
    return "token";
}

bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        col += n;
    };
    while (i < text.size()) {
        const unsigned char c = text[i];
        const SourceSpan here{line, col};
        if (c == '\n') {
            out.push_back({Tok::Newline, "\n", here});
            ++i;
            ++line;
            col = 1;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
        } else if (is_word_char(c)) {
            auto start = i;
            while (i < text.size() && is_word_char(static_cast<unsigned char>(text[i]))) advance(1);
            out.push_back({Tok::Word, std::string(text.substr(start, i - start)), here});
        } else if (c == '"') {
            advance(1);
            std::string value;
            for (;;) {
                if (i >= text.size() || text[i] == '\n') {
                    throw Error(ErrorCode::SyntaxError, "unterminated string", here);
                }
                char ch = text[i];
                if (ch == '"') {
                    advance(1);
                    break;
                }
                if (ch == '\\') {
                    if (i + 1 >= text.size()) throw Error(ErrorCode::SyntaxError, "unterminated string", here);
                    char esc = text[i + 1];
                    switch (esc) {
                        case '"':  value += '"'; break;
                        case '\\': value += '\\'; break;
                        case 'n':  value += '\n'; break;
                        case 't':  value += '\t'; break;
                        default:
                            throw Error(ErrorCode::SyntaxError, std::string("unknown escape '\\") + esc + "'",
                                        SourceSpan{line, col});
                    }
                    advance(2);
                    continue;
                }
                value += ch;
                advance(1);
            }
            out.push_back({Tok::String, std::move(value), here});
        } else if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::Neq, "!=", here});
            advance(2);
        } else {
            Tok kind;
            switch (c) {
                case '{': kind = Tok::LBrace; break;
                case '}': kind = Tok::RBrace; break;
                case ':': kind = Tok::Colon; break;
                case ',': kind = Tok::Comma; break;
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case '=': kind = Tok::Eq; break;
                default: {
                    std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                                        : "\\x" + std::string(1, "0123456789abcdef"[c >> 4]) +
                                                              std::string(1, "0123456789abcdef"[c & 15]);
                    throw Error(ErrorCode::SyntaxError, "unexpected character '" + shown + "'", here);
                }
            }
            out.push_back({kind, std::string(1, static_cast<char>(c)), here});
            advance(1);
        }
    }
    out.push_back({Tok::End, "", SourceSpan{line, col}});
    return out;
}

const std::set<std::string, std::less<>>& scenario_fields() {
    static const std::set<std::string, std::less<>> fields = {
        "request_text", "topic_tags", "sphere", "demographic_target", "skill_specific",
        "sensitive", "harm", "diversity_preference", "situatedness",
    };
    return fields;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    struct Document {
        std::vector<ArgumentRule> rules;
        std::vector<std::pair<std::string, Sphere>> topics;
        std::vector<ScenarioFixture> fixtures;
        std::optional<SourceSpan> first_topic;
        // block kinds in file order: 'a' argument, 't' topic, 's' scenario
        std::string order;
    };

    Document document() {
        Document doc;
        for (;;) {
            skip_newlines();
            const Token& t = peek();
            if (t.kind == Tok::End) break;
            if (t.kind != Tok::Word) fail("expected 'argument', 'scenario' or 'topic'");
            if (t.text == "argument") {
                doc.rules.push_back(rule_block());
                doc.order += 'a';
            } else if (t.text == "scenario") {
                doc.fixtures.push_back(scenario_block());
                doc.order += 's';
            } else if (t.text == "topic") {
                if (!doc.first_topic) doc.first_topic = t.span;
                doc.topics.push_back(topic_block());
                doc.order += 't';
            } else {
                fail("expected 'argument', 'scenario' or 'topic', found '" + t.text + "'");
            }
        }
        return doc;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& message, ErrorCode code = ErrorCode::SyntaxError) const {
        throw Error(code, message, peek().span);
    }

    std::string found() const {
        const Token& t = peek();
        if (t.kind == Tok::Word) return "'" + t.text + "'";
        if (t.kind == Tok::String) return "string";
        return std::string(describe(t.kind));
    }

    const Token& expect(Tok kind) {
        if (peek().kind != kind) fail("expected " + std::string(describe(kind)) + ", found " + found());
        return next();
    }

    void skip_newlines() {
        while (peek().kind == Tok::Newline) next();
    }

    // A field entry ends at a newline or right before the closing brace.
    void end_of_entry() {
        if (peek().kind == Tok::Newline) {
            skip_newlines();
            return;
        }
        if (peek().kind != Tok::RBrace) fail("expected end of line, found " + found());
    }

    void expect_key(std::string_view key, bool (*is_known)(std::string_view)) {
        const Token& t = peek();
        if (t.kind != Tok::Word) fail("expected '" + std::string(key) + ":', found " + found());
        if (t.text != key) {
            if (is_known(t.text)) fail("expected '" + std::string(key) + ":', found '" + t.text + "'");
            fail("unknown field '" + t.text + "'", ErrorCode::UnknownField);
        }
        next();
        expect(Tok::Colon);
    }

    static bool is_rule_key(std::string_view k) {
        return k == "promotes" || k == "applies-if" || k == "stance";
    }

    ArgumentRule rule_block() {
        const SourceSpan start = next().span;  // 'argument'
        const Token& name = expect(Tok::Word);
        if (!is_valid_argument_name(name.text)) fail("invalid argument name");
        ArgumentId id(name.text);
        expect(Tok::LBrace);
        skip_newlines();

        expect_key("promotes", is_rule_key);
        std::set<EthicalValue> promotes;
        for (;;) {
            const Token& v = peek();
            if (v.kind != Tok::Word) fail("expected value name, found " + found());
            auto value = value_from_string(v.text);
            if (!value) fail("unknown value '" + v.text + "'", ErrorCode::UnknownValue);
            promotes.insert(*value);
            next();
            if (peek().kind != Tok::Comma) break;
            next();
        }
        end_of_entry();

        expect_key("applies-if", is_rule_key);
        Condition cond = disjunction();
        end_of_entry();

        expect_key("stance", is_rule_key);
        const Token& s = peek();
        if (s.kind != Tok::Word) fail("expected stance, found " + found());
        auto stance = stance_from_string(s.text);
        if (!stance) fail("unknown stance '" + s.text + "'", ErrorCode::UnknownStance);
        next();
        end_of_entry();
        expect(Tok::RBrace);
        end_of_block();

        return ArgumentRule{std::move(id), std::move(cond), *stance, std::move(promotes), start};
    }

    void end_of_block() {
        if (peek().kind != Tok::Newline && peek().kind != Tok::End) {
            fail("expected end of line after block, found " + found());
        }
    }

    Condition disjunction() {
        std::vector<Condition> parts{conjunction()};
        while (peek().kind == Tok::Word && peek().text == "or") {
            next();
            parts.push_back(conjunction());
        }
        return Condition::any_of(std::move(parts));
    }

    Condition conjunction() {
        std::vector<Condition> parts{negation()};
        while (peek().kind == Tok::Word && peek().text == "and") {
            next();
            parts.push_back(negation());
        }
        return Condition::all_of(std::move(parts));
    }

    Condition negation() {
        if (peek().kind == Tok::Word && peek().text == "not") {
            next();
            return Condition::negation(atom());
        }
        return atom();
    }

    Condition atom() {
        if (peek().kind == Tok::LParen) {
            next();
            Condition inner = disjunction();
            expect(Tok::RParen);
            return inner;
        }
        const Token& f = peek();
        if (f.kind != Tok::Word) fail("expected condition, found " + found());
        auto field = context_field_from_string(f.text);
        if (!field) fail("unknown field '" + f.text + "'", ErrorCode::UnknownField);
        const SourceSpan span = f.span;
        next();
        bool negated = false;
        if (peek().kind == Tok::Neq) negated = true;
        else if (peek().kind != Tok::Eq) fail("expected '=' or '!=', found " + found());
        next();
        const Token& lit = peek();
        if (lit.kind != Tok::Word) fail("expected value, found " + found());
        try {
            Atom a = Atom::make(*field, negated, lit.text, span);
            next();
            return Condition::leaf(std::move(a));
        } catch (const Error& e) {
            throw Error(e.code(), "'" + lit.text + "' is not a valid value for " + f.text, lit.span);
        }
    }

    std::pair<std::string, Sphere> topic_block() {
        next();  // 'topic'
        const Token& name = expect(Tok::Word);
        std::string topic = name.text;
        for (auto& ch : topic) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        expect(Tok::Colon);
        const Token& s = peek();
        if (s.kind != Tok::Word) fail("expected sphere, found " + found());
        auto sphere = sphere_from_string(s.text);
        if (!sphere) fail("unknown sphere '" + s.text + "'", ErrorCode::UnknownValue);
        next();
        end_of_block();
        return {std::move(topic), *sphere};
    }

    std::string text_literal() {
        const Token& t = peek();
        if (t.kind != Tok::String && t.kind != Tok::Word) fail("expected string, found " + found());
        return next().text;
    }

    bool bool_literal() {
        const Token& t = peek();
        if (t.kind == Tok::Word && (t.text == "true" || t.text == "false")) return next().text == "true";
        if (t.kind == Tok::Word) fail("'" + t.text + "' is not a boolean", ErrorCode::UnknownValue);
        fail("expected true or false, found " + found());
    }

    ScenarioFixture scenario_block() {
        ScenarioFixture fx;
        fx.span = next().span;  // 'scenario'
        const Token& name = peek();
        if (name.kind != Tok::String) fail("expected quoted scenario name, found " + found());
        if (name.text.empty()) fail("scenario name is empty");
        fx.name = next().text;
        expect(Tok::LBrace);
        skip_newlines();

        std::set<std::string> seen;
        bool have_expect = false;
        while (peek().kind != Tok::RBrace) {
            const Token& key = peek();
            if (key.kind != Tok::Word) fail("expected field name, found " + found());
            const std::string k = key.text;
            if (have_expect) {
                if (k != "note") {
                    fail(scenario_fields().count(k) ? "field '" + k + "' after 'expect:'" : "unknown field '" + k + "'",
                         scenario_fields().count(k) ? ErrorCode::SyntaxError : ErrorCode::UnknownField);
                }
                if (fx.note) fail("duplicate field 'note'");
                next();
                expect(Tok::Colon);
                fx.note = text_literal();
                end_of_entry();
                continue;
            }
            if (k == "expect") {
                next();
                expect(Tok::Colon);
                const Token& a = peek();
                if (a.kind != Tok::Word) fail("expected curation action, found " + found());
                auto action = action_from_string(a.text);
                if (!action) fail("unknown action '" + a.text + "'", ErrorCode::UnknownValue);
                next();
                fx.expect = *action;
                have_expect = true;
                end_of_entry();
                continue;
            }
            if (k == "note") fail("'note:' must follow 'expect:'");
            if (!scenario_fields().count(k)) fail("unknown field '" + k + "'", ErrorCode::UnknownField);
            if (!seen.insert(k).second) fail("duplicate field '" + k + "'");
            next();
            expect(Tok::Colon);
            context_field(k, fx.context);
            end_of_entry();
        }
        if (!have_expect) fail("scenario '" + fx.name + "' is missing 'expect:'");
        next();  // '}'
        end_of_block();
        return fx;
    }

    void context_field(const std::string& key, RequestContext& ctx) {
        if (key == "request_text") {
            ctx.request_text = text_literal();
        } else if (key == "situatedness") {
            ctx.situatedness = text_literal();
        } else if (key == "topic_tags") {
            for (;;) {
                ctx.topic_tags.insert(text_literal());
                if (peek().kind != Tok::Comma) break;
                next();
            }
        } else if (key == "sphere") {
            const Token& t = peek();
            if (t.kind != Tok::Word) fail("expected sphere, found " + found());
            auto s = sphere_from_string(t.text);
            if (!s) fail("unknown sphere '" + t.text + "'", ErrorCode::UnknownValue);
            next();
            ctx.sphere = *s;
        } else if (key == "diversity_preference") {
            const Token& t = peek();
            if (t.kind != Tok::Word) fail("expected preference, found " + found());
            auto p = preference_from_string(t.text);
            if (!p) fail("unknown preference '" + t.text + "'", ErrorCode::UnknownValue);
            next();
            ctx.diversity_preference = *p;
        } else if (key == "demographic_target") {
            ctx.demographic_target = bool_literal();
        } else if (key == "skill_specific") {
            ctx.skill_specific = bool_literal();
        } else if (key == "sensitive") {
            ctx.sensitive = bool_literal();
        } else if (key == "harm") {
            ctx.harm = bool_literal();
        }
    }
};

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"':  out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:   out += c;
        }
    }
    return out + "\"";
}

std::string tag_literal(const std::string& tag) {
    bool word = !tag.empty();
    for (unsigned char c : tag) word = word && is_word_char(c);
    return word ? tag : quote(tag);
}

} // namespace

KnowledgeBase parse_kb(std::string_view text) {
    auto doc = Parser(text).document();
    if (!doc.fixtures.empty()) {
        throw Error(ErrorCode::SyntaxError, "scenario block in a knowledge-base file", doc.fixtures.front().span);
    }
    KnowledgeBase kb;
    std::size_t r = 0;
    std::size_t t = 0;
    for (char kind : doc.order) {
        if (kind == 'a') kb.add_rule(std::move(doc.rules[r++]));
        else {
            kb.add_topic(doc.topics[t].first, doc.topics[t].second);
            ++t;
        }
    }
    kb.version = doc.order.size();
    return kb;
}

ArgumentRule parse_rule(std::string_view text) {
    auto doc = Parser(text).document();
    if (doc.order != "a") {
        throw Error(ErrorCode::SyntaxError, "expected exactly one argument block", SourceSpan{1, 1});
    }
    validate_rule(doc.rules.front());
    return std::move(doc.rules.front());
}

std::vector<ScenarioFixture> parse_scenarios(std::string_view text) {
    auto doc = Parser(text).document();
    if (!doc.rules.empty()) {
        throw Error(ErrorCode::SyntaxError, "argument block in a scenario file", doc.rules.front().span);
    }
    if (!doc.topics.empty()) throw Error(ErrorCode::SyntaxError, "topic block in a scenario file", doc.first_topic);
    return std::move(doc.fixtures);
}

std::string emit_rule(const ArgumentRule& rule) {
    std::string out = "argument " + rule.name.str() + " {\n  promotes: ";
    bool first = true;
    for (auto v : rule.promotes) {
        if (!first) out += ", ";
        out += to_string(v);
        first = false;
    }
    out += "\n  applies-if: " + to_string(rule.applies_if) + "\n";
    out += "  stance: " + std::string(to_string(rule.stance)) + "\n}\n";
    return out;
}

std::string emit_kb(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& [topic, sphere] : kb.topic_extensions()) {
        out += "topic " + topic + ": " + std::string(to_string(sphere)) + "\n";
    }
    for (const auto& rule : kb.rules()) {
        if (!out.empty()) out += "\n";
        out += emit_rule(rule);
    }
    return out;
}

std::string emit_scenarios(const std::vector<ScenarioFixture>& fixtures) {
    std::string out;
    for (const auto& fx : fixtures) {
        if (!out.empty()) out += "\n";
        const auto& c = fx.context;
        out += "scenario " + quote(fx.name) + " {\n";
        if (!c.request_text.empty()) out += "  request_text: " + quote(c.request_text) + "\n";
        if (!c.topic_tags.empty()) {
            out += "  topic_tags: ";
            bool first = true;
            for (const auto& t : c.topic_tags) {
                if (!first) out += ", ";
                out += tag_literal(t);
                first = false;
            }
            out += "\n";
        }
        if (c.sphere) out += "  sphere: " + std::string(to_string(*c.sphere)) + "\n";
        auto flag = [&](const char* key, bool v) { out += std::string("  ") + key + ": " + (v ? "true" : "false") + "\n"; };
        flag("demographic_target", c.demographic_target);
        flag("skill_specific", c.skill_specific);
        flag("sensitive", c.sensitive);
        flag("harm", c.harm);
        out += "  diversity_preference: " + std::string(to_string(c.diversity_preference)) + "\n";
        if (!c.situatedness.empty()) out += "  situatedness: " + quote(c.situatedness) + "\n";
        out += "  expect: " + std::string(to_string(fx.expect)) + "\n";
        if (fx.note) out += "  note: " + quote(*fx.note) + "\n";
        out += "}\n";
    }
    return out;
}

std::string default_kb_text() {
    return emit_kb(default_kb());
}

} // namespace curator
