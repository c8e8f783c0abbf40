#include "activedl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace activedl {

namespace {

enum class Tok : std::uint8_t {
    Ident,     // predicate or constant
    Variable,  // uppercase or '_' start
    Quoted,    // "..."
    Not,
    LParen,
    RParen,
    Comma,
    Dot,
    Question,
    Plus,
    Minus,
    Eq,
    Neq,
    If,  // :-
    End,
};

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Variable: return "variable";
        case Tok::Quoted: return "quoted constant";
        case Tok::Not: return "'not'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Question: return "'?'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Eq: return "'='";
        case Tok::Neq: return "'!='";
        case Tok::If: return "':-'";
        case Tok::End: return "end of input";
    }
    return "token";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(const SourceText& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= text().size()) {
                out.push_back(t);
                return out;
            }
            char c = text()[pos_];
            if (c == '@' || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                advance();
                while (pos_ < text().size() && ident_char(text()[pos_])) advance();
                t.text = text().substr(start, pos_ - start);
                if (t.text == "not")
                    t.kind = Tok::Not;
                else if (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                    t.kind = Tok::Variable;
                else
                    t.kind = Tok::Ident;
            } else if (c == '"') {
                std::size_t start = pos_;
                advance();
                for (;;) {
                    if (pos_ >= text().size() || text()[pos_] == '\n')
                        fail(t.line, t.column, "unterminated quoted constant");
                    if (text()[pos_] == '\\' && pos_ + 1 < text().size()) {
                        advance();
                        advance();
                        continue;
                    }
                    if (text()[pos_] == '"') break;
                    advance();
                }
                advance();
                t.kind = Tok::Quoted;
                t.text = text().substr(start, pos_ - start);
            } else {
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '.': t.kind = Tok::Dot; break;
                    case '?': t.kind = Tok::Question; break;
                    case '+': t.kind = Tok::Plus; break;
                    case '-': t.kind = Tok::Minus; break;
                    case '=': t.kind = Tok::Eq; break;
                    case '!':
                        if (peek(1) != '=') fail(t.line, t.column, "expected '!='");
                        advance();
                        t.kind = Tok::Neq;
                        break;
                    case ':':
                        if (peek(1) != '-') fail(t.line, t.column, "expected ':-'");
                        advance();
                        t.kind = Tok::If;
                        break;
                    default:
                        fail(t.line, t.column, std::string("unexpected character '") + c + "'");
                }
                advance();
            }
            out.push_back(std::move(t));
        }
    }

    [[noreturn]] void fail(int line, int col, const std::string& msg) const {
        throw ParseError(src_.origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

private:
    const std::string& text() const { return src_.text; }
    char peek(std::size_t k) const { return pos_ + k < text().size() ? text()[pos_ + k] : '\0'; }

    void advance() {
        if (text()[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text().size()) {
            char c = text()[pos_];
            if (c == '%') {
                while (pos_ < text().size() && text()[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const SourceText& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const SourceText& src, bool allow_reserved)
        : src_(src), toks_(Lexer(src).run()), allow_reserved_(allow_reserved) {}

    bool done() const { return cur().kind == Tok::End; }
    const Token& cur() const { return toks_[i_]; }
    const Token& ahead(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }

    bool accept(Tok k) {
        if (cur().kind != k) return false;
        ++i_;
        return true;
    }

    const Token& expect(Tok k, std::string_view what = {}) {
        if (cur().kind != k)
            fail(cur(), "expected " + std::string(what.empty() ? describe(k) : what) + ", found " +
                            found(cur()));
        return toks_[i_++];
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(src_.origin + ":" + std::to_string(t.line) + ":" + std::to_string(t.column) +
                         ": " + msg);
    }

    std::string loc(const Token& t) const {
        return src_.origin + ":" + std::to_string(t.line) + ":" + std::to_string(t.column) + ": ";
    }

    Term term() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Variable: ++i_; return Term::variable(t.text);
            case Tok::Ident:
                if (t.text.front() == names::kReserved) fail(t, "'@' is not allowed in constants");
                ++i_;
                return Term::constant(t.text);
            case Tok::Quoted: ++i_; return Term::constant(t.text);
            default: fail(t, "expected a term, found " + found(t));
        }
    }

    Atom atom() {
        const Token& t = cur();
        if (t.kind != Tok::Ident) fail(t, "expected a predicate, found " + found(t));
        if (std::isdigit(static_cast<unsigned char>(t.text.front())))
            fail(t, "predicate names must start with a lowercase letter");
        if (t.text.front() == names::kReserved && !allow_reserved_)
            fail(t, "predicate '" + t.text + "' uses the reserved '@' prefix");
        ++i_;
        Atom a{t.text, {}};
        if (accept(Tok::LParen)) {
            a.args.push_back(term());
            while (accept(Tok::Comma)) a.args.push_back(term());
            expect(Tok::RParen, "',' or ')'");
        }
        return a;
    }

    Literal literal() {
        bool negated = accept(Tok::Not);
        if (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            Polarity p = cur().kind == Tok::Plus ? Polarity::Insert : Polarity::Delete;
            ++i_;
            return Literal::update(p, atom(), negated);
        }
        bool is_builtin = cur().kind == Tok::Variable || cur().kind == Tok::Quoted ||
                          (cur().kind == Tok::Ident && (ahead(1).kind == Tok::Eq || ahead(1).kind == Tok::Neq));
        if (is_builtin) {
            if (negated) fail(cur(), "'not' cannot precede a comparison");
            Term l = term();
            BuiltinOp op;
            if (accept(Tok::Eq))
                op = BuiltinOp::Eq;
            else if (accept(Tok::Neq))
                op = BuiltinOp::Neq;
            else
                fail(cur(), "expected '=' or '!=', found " + found(cur()));
            Term r = term();
            return Literal::builtin(op, std::move(l), std::move(r));
        }
        return Literal::standard(atom(), negated);
    }

    Rule rule() {
        Rule r;
        const Token& start = cur();
        r.origin = SourceLoc{src_.origin, start.line, start.column};
        if (accept(Tok::Plus))
            r.head.update = Polarity::Insert;
        else if (accept(Tok::Minus))
            r.head.update = Polarity::Delete;
        r.head.atom = atom();
        if (accept(Tok::If)) {
            r.body.push_back(literal());
            while (accept(Tok::Comma)) r.body.push_back(literal());
        }
        expect(Tok::Dot, "',' or '.'");
        return r;
    }

    std::string found(const Token& t) const {
        if (t.kind == Tok::End) return "end of input";
        if (!t.text.empty()) return "'" + t.text + "'";
        return std::string(describe(t.kind));
    }

private:
    const SourceText& src_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    bool allow_reserved_;
};

template <class Fn>
void with_location(const std::string& where, Fn&& fn) {
    try {
        fn();
    } catch (const ConflictError& e) {
        throw ConflictError(where + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(where + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(where + e.what());
    }
}

std::string join(const std::vector<Term>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) s += ',';
        s += ts[i].name;
    }
    return s;
}

}  // namespace

SourceText read_source(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return SourceText{ss.str(), path};
}

Program parse_program(const SourceText& src, const ParseOptions& opts) {
    Parser p(src, opts.allow_reserved);
    Program prog;
    while (!p.done()) prog.rules.push_back(p.rule());
    if (opts.validate) validate_program(prog, ValidationOptions{opts.allow_reserved});
    return prog;
}

Database parse_database(const SourceText& src) {
    Parser p(src, false);
    Database db;
    while (!p.done()) {
        const Token start = p.cur();
        Atom a = p.atom();
        bool unknown = false;
        if (p.accept(Tok::Question))
            unknown = true;
        else
            p.expect(Tok::Dot, "'.' or '?'");
        with_location(p.loc(start), [&] {
            if (unknown)
                db.add_unknown(a);
            else
                db.add_true(a);
        });
    }
    return db;
}

DeltaSet parse_delta(const SourceText& src) {
    Parser p(src, false);
    DeltaSet delta;
    while (!p.done()) {
        const Token start = p.cur();
        Polarity pol;
        if (p.accept(Tok::Plus))
            pol = Polarity::Insert;
        else if (p.accept(Tok::Minus))
            pol = Polarity::Delete;
        else
            p.fail(start, "expected '+' or '-', found " + p.found(start));
        Atom a = p.atom();
        p.expect(Tok::Dot);
        with_location(p.loc(start), [&] { delta.add(pol, a); });
    }
    return delta;
}

Interpretation parse_interpretation(const SourceText& src) {
    Parser p(src, true);
    std::vector<std::pair<Atom, TruthValue>> items;
    std::set<Atom> universe;
    while (!p.done()) {
        const Token start = p.cur();
        bool negated = p.accept(Tok::Not);
        Atom a = p.atom();
        if (!a.is_ground()) p.fail(start, "interpretation atoms must be ground");
        TruthValue v;
        if (p.accept(Tok::Question)) {
            if (negated) p.fail(start, "'not' cannot mark an undefined atom");
            v = TruthValue::Undefined;
        } else {
            p.expect(Tok::Dot, "'.' or '?'");
            v = negated ? TruthValue::False : TruthValue::True;
        }
        if (!universe.insert(a).second) p.fail(start, "atom " + render(a) + " listed twice");
        items.emplace_back(std::move(a), v);
    }
    auto table = std::make_shared<AtomTable>(universe);
    Interpretation I(table);
    for (const auto& [a, v] : items) I.set(*table->find(a), v);
    return I;
}

// ---------------------------------------------------------------------------

std::string render(const Term& t) { return t.name; }

std::string render(const Atom& a) {
    if (a.args.empty()) return a.predicate;
    return a.predicate + "(" + join(a.args) + ")";
}

std::string render(const UpdateAtom& u) {
    return (u.polarity == Polarity::Insert ? "+" : "-") + render(u.atom);
}

std::string render(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Builtin:
            return l.left.name + (l.op == BuiltinOp::Eq ? " = " : " != ") + l.right.name;
        case Literal::Kind::Update:
            return (l.negated ? "not " : "") + render(UpdateAtom{l.atom, l.polarity});
        case Literal::Kind::Standard:
            return (l.negated ? "not " : "") + render(l.atom);
    }
    return {};
}

std::string render(const Rule& r) {
    std::string s;
    if (r.head.is_update())
        s = render(UpdateAtom{r.head.atom, *r.head.update});
    else
        s = render(r.head.atom);
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        s += i == 0 ? " :- " : ", ";
        s += render(r.body[i]);
    }
    return s + ".";
}

std::string render(const Program& p) {
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(p.rules.size());
    for (const auto& r : p.rules) lines.emplace_back(r.head.atom.predicate, render(r));
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    std::string out;
    for (const auto& [pred, text] : lines) out += text + "\n";
    return out;
}

std::string render(const Database& d) {
    std::map<Atom, bool> all;
    for (const auto& a : d.true_facts()) all.emplace(a, true);
    for (const auto& a : d.unknown_facts()) all.emplace(a, false);
    std::string out;
    for (const auto& [a, is_true] : all) out += render(a) + (is_true ? ".\n" : "?\n");
    return out;
}

std::string render(const DeltaSet& d) {
    std::string out;
    for (const auto& u : d.updates()) out += render(u) + ".\n";
    return out;
}

std::string render(const Interpretation& I) {
    std::map<Atom, TruthValue> sorted = I.to_map();
    std::string out;
    for (const auto& [a, v] : sorted) {
        if (!out.empty()) out += ' ';
        switch (v) {
            case TruthValue::True: out += render(a) + "."; break;
            case TruthValue::False: out += "not " + render(a) + "."; break;
            case TruthValue::Undefined: out += render(a) + "?"; break;
        }
    }
    return out;
}

}  // namespace activedl
