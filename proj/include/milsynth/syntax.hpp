#pragma once

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "milsynth/bk.hpp"
#include "milsynth/metarule.hpp"
#include "milsynth/program.hpp"
#include "milsynth/term.hpp"

namespace mil {

/// Syntax error with source location.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_, col_;
};

namespace syntax_detail {

enum class Tok {
    Ident,     // lowercase-led identifier
    Variable,  // uppercase- or underscore-led
    Int,
    String,
    CharLit,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Neck,   // :-
    Slash,
    End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t number = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_layout();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::islower(static_cast<unsigned char>(c))) {
            tok_.kind = Tok::Ident;
            tok_.text = read_word();
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Tok::Variable;
            tok_.text = read_word();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            tok_.kind = Tok::Int;
            bool negative = c == '-';
            if (negative) bump();
            std::int64_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                n = n * 10 + (src_[pos_] - '0');
                bump();
            }
            tok_.number = negative ? -n : n;
            return;
        }
        switch (c) {
            case '(': bump(); tok_.kind = Tok::LParen; return;
            case ')': bump(); tok_.kind = Tok::RParen; return;
            case '[': bump(); tok_.kind = Tok::LBracket; return;
            case ']': bump(); tok_.kind = Tok::RBracket; return;
            case ',': bump(); tok_.kind = Tok::Comma; return;
            case '.': bump(); tok_.kind = Tok::Dot; return;
            case '/': bump(); tok_.kind = Tok::Slash; return;
            case ':':
                bump();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    bump();
                    tok_.kind = Tok::Neck;
                    return;
                }
                fail("expected ':-'");
                return;
            case '"': {
                bump();
                while (pos_ < src_.size() && src_[pos_] != '"') tok_.text += take_char();
                if (pos_ >= src_.size()) fail("unterminated string");
                bump();
                tok_.kind = Tok::String;
                return;
            }
            case '\'': {
                bump();
                if (pos_ >= src_.size()) fail("unterminated character literal");
                tok_.text = std::string(1, take_char());
                if (pos_ >= src_.size() || src_[pos_] != '\'')
                    fail("unterminated character literal");
                bump();
                tok_.kind = Tok::CharLit;
                return;
            }
            default: fail(std::string("unexpected character '") + c + "'");
        }
    }

    void skip_layout() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string read_word() {
        std::string out;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            out += take_char();
        return out;
    }

    char take_char() {
        char c = src_[pos_];
        bump();
        return c;
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(line_, col_, msg); }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

}  // namespace syntax_detail

/// Parsed task file: examples, prim declarations, and any inline metarule or
/// interpreted-BK clauses.
struct TaskFile {
    std::string name;  // target predicate name
    PredSym target;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    std::vector<PredSym> prim_decls;
    std::vector<Metarule> inline_metarules;
    std::vector<HigherOrderDefinition> inline_ibk;
};

/// Parsed compiled-BK file: user clauses plus prim declarations.
struct BkFile {
    std::vector<Clause> clauses;
    std::vector<PredSym> prim_decls;
};

namespace syntax_detail {

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    // ---- term / atom layer -------------------------------------------------

    struct ClauseScope {
        std::map<std::string, int> vars;  // name -> id
        std::map<int, std::string> names;
        VarSupply supply;
        std::set<int> higher_order;  // ids classified higher-order
    };

    Value parse_ground_value() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Int: return Value::integer(lex_.take().number);
            case Tok::Ident: return Value::symbol(lex_.take().text);
            case Tok::CharLit: return Value::character(lex_.take().text[0]);
            case Tok::String: {
                Token s = lex_.take();
                std::vector<Value> chars;
                for (char c : s.text) chars.push_back(Value::symbol(std::string(1, c)));
                return Value::list(std::move(chars));
            }
            case Tok::LBracket: {
                lex_.take();
                std::vector<Value> items;
                if (lex_.peek().kind != Tok::RBracket) {
                    items.push_back(parse_ground_value());
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        items.push_back(parse_ground_value());
                    }
                }
                expect(Tok::RBracket, "']'");
                return Value::list(std::move(items));
            }
            case Tok::LParen: {
                lex_.take();
                std::vector<Value> items;
                items.push_back(parse_ground_value());
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    items.push_back(parse_ground_value());
                }
                expect(Tok::RParen, "')'");
                return Value::tuple(std::move(items));
            }
            default: fail("expected a ground value");
        }
    }

    Term parse_arg(ClauseScope& scope) {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Variable) {
            Token v = lex_.take();
            return Term::var(scope_var(scope, v.text));
        }
        return Term::value(parse_ground_value());
    }

    /// Atom whose predicate may be an identifier or a variable; `not(...)`
    /// wraps a negated atom.
    Atom parse_atom(ClauseScope& scope) {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Ident && t.text == "not") {
            lex_.take();
            expect(Tok::LParen, "'('");
            Atom inner = parse_atom(scope);
            expect(Tok::RParen, "')'");
            if (inner.negated) fail("nested negation is not supported");
            inner.negated = true;
            return inner;
        }
        Atom out;
        if (t.kind == Tok::Variable) {
            Token v = lex_.take();
            int id = scope_var(scope, v.text);
            scope.higher_order.insert(id);
            out.pred = Term::hvar(id);
        } else if (t.kind == Tok::Ident) {
            Token name = lex_.take();
            out.pred = Term::pred(name.text, 0);
        } else {
            fail("expected an atom");
        }
        expect(Tok::LParen, "'('");
        out.args.push_back(parse_arg(scope));
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            out.args.push_back(parse_arg(scope));
        }
        expect(Tok::RParen, "')'");
        if (out.pred.is_pred())
            out.pred = Term::pred(out.pred.get_pred().name, out.arity());
        return out;
    }

    /// head [:- body] — the textual clause form.
    Clause parse_clause_text(ClauseScope& scope) {
        Clause c;
        c.head = parse_atom(scope);
        if (c.head.negated) fail("clause head cannot be negated");
        if (lex_.peek().kind == Tok::Neck) {
            lex_.take();
            if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "true") {
                lex_.take();
            } else {
                c.body.push_back(parse_atom(scope));
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    c.body.push_back(parse_atom(scope));
                }
            }
        }
        return c;
    }

    // ---- directives --------------------------------------------------------

    PredSym parse_pred_indicator() {
        Token name = expect(Tok::Ident, "predicate name");
        expect(Tok::Slash, "'/'");
        Token arity = expect(Tok::Int, "arity");
        if (arity.number < 1) fail("arity must be positive");
        return PredSym{name.text, static_cast<int>(arity.number)};
    }

    TaskFile parse_task() {
        TaskFile task;
        while (lex_.peek().kind != Tok::End) {
            Token head = expect(Tok::Ident, "directive");
            if (head.text == "pos" || head.text == "neg") {
                expect(Tok::LParen, "'('");
                ClauseScope scope;
                Atom a = parse_atom(scope);
                expect(Tok::RParen, "')'");
                expect(Tok::Dot, "'.'");
                if (!is_ground(a))
                    throw SyntaxError(head.line, head.col, "example atoms must be ground");
                if (a.negated)
                    throw SyntaxError(head.line, head.col, "example atoms cannot be negated");
                (head.text == "pos" ? task.pos : task.neg).push_back(a);
            } else if (head.text == "prim") {
                expect(Tok::LParen, "'('");
                task.prim_decls.push_back(parse_pred_indicator());
                expect(Tok::RParen, "')'");
                expect(Tok::Dot, "'.'");
            } else if (head.text == "metarule") {
                task.inline_metarules.push_back(parse_metarule_directive());
            } else if (head.text == "ibk") {
                parse_ibk_directive(ibk_buffer_);
            } else {
                throw SyntaxError(head.line, head.col,
                                  "unknown task directive '" + head.text + "'");
            }
        }
        task.inline_ibk = group_ibk(ibk_buffer_);
        finalise_task(task);
        return task;
    }

    BkFile parse_bk() {
        BkFile out;
        while (lex_.peek().kind != Tok::End) {
            const Token& t = lex_.peek();
            if (t.kind == Tok::Ident && t.text == "prim") {
                lex_.take();
                expect(Tok::LParen, "'('");
                out.prim_decls.push_back(parse_pred_indicator());
                expect(Tok::RParen, "')'");
                expect(Tok::Dot, "'.'");
                continue;
            }
            ClauseScope scope;
            Clause c = parse_clause_text(scope);
            expect(Tok::Dot, "'.'");
            if (!scope.higher_order.empty())
                fail("compiled clauses cannot contain higher-order variables");
            out.clauses.push_back(c);
        }
        return out;
    }

    std::vector<Metarule> parse_metarules() {
        std::vector<Metarule> out;
        while (lex_.peek().kind != Tok::End) {
            Token head = expect(Tok::Ident, "metarule directive");
            if (head.text != "metarule")
                throw SyntaxError(head.line, head.col, "expected 'metarule'");
            out.push_back(parse_metarule_directive());
        }
        return out;
    }

    std::vector<HigherOrderDefinition> parse_ibk() {
        std::vector<Clause> clauses;
        while (lex_.peek().kind != Tok::End) {
            Token head = expect(Tok::Ident, "ibk directive");
            if (head.text != "ibk") throw SyntaxError(head.line, head.col, "expected 'ibk'");
            parse_ibk_directive(clauses);
        }
        return group_ibk(clauses);
    }

    /// Program text: a sequence of clauses. Identifier arguments naming a
    /// clause head, a compiled predicate, or an interpreted definition are
    /// resolved to predicate symbols of the recorded arity.
    std::vector<Clause> parse_program(const CompiledRegistry* reg, const IbkLibrary* ibk) {
        std::vector<Clause> clauses;
        while (lex_.peek().kind != Tok::End) {
            ClauseScope scope;
            Clause c = parse_clause_text(scope);
            expect(Tok::Dot, "'.'");
            clauses.push_back(c);
        }
        resolve_predicate_args(clauses, reg, ibk);
        return clauses;
    }

private:
    // metarule(name, [Vars], (Head :- Body)).
    Metarule parse_metarule_directive() {
        expect(Tok::LParen, "'('");
        Token name = expect(Tok::Ident, "metarule name");
        expect(Tok::Comma, "','");
        expect(Tok::LBracket, "'['");
        ClauseScope scope;
        std::vector<int> existentials;
        if (lex_.peek().kind != Tok::RBracket) {
            existentials.push_back(metarule_existential(scope));
            while (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                existentials.push_back(metarule_existential(scope));
            }
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Comma, "','");
        expect(Tok::LParen, "'('");
        Clause c = parse_clause_text(scope);
        expect(Tok::RParen, "')'");
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        // Existential variables are higher-order everywhere they occur.
        c = reclassify(c, scope);
        Metarule m;
        try {
            m = detail::make_metarule(name.text, existentials, c);
        } catch (const std::invalid_argument& e) {
            throw SyntaxError(name.line, name.col, e.what());
        }
        return m;
    }

    int metarule_existential(ClauseScope& scope) {
        Token v = expect(Tok::Variable, "existential variable");
        int id = scope_var(scope, v.text);
        scope.higher_order.insert(id);
        return id;
    }

    // ibk((Head :- Body)). or ibk(Head).
    void parse_ibk_directive(std::vector<Clause>& sink) {
        expect(Tok::LParen, "'('");
        ClauseScope scope;
        Clause c;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            c = parse_clause_text(scope);
            expect(Tok::RParen, "')'");
        } else {
            c = parse_clause_text(scope);
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        if (!c.head.pred.is_pred()) fail("interpreted BK clause head must be named");
        sink.push_back(reclassify(c, scope));
    }

    /// Rebuild a clause applying the scope's higher-order classification to
    /// argument positions (predicate positions are already higher-order).
    Clause reclassify(const Clause& c, const ClauseScope& scope) {
        auto fix_term = [&](const Term& t) {
            if (t.is_var() && scope.higher_order.count(t.var_id()))
                return Term::hvar(t.var_id());
            return t;
        };
        auto fix_atom = [&](const Atom& a) {
            Atom out;
            out.negated = a.negated;
            out.pred = fix_term(a.pred);
            for (const auto& arg : a.args) out.args.push_back(fix_term(arg));
            return out;
        };
        Clause out;
        out.head = fix_atom(c.head);
        for (const auto& a : c.body) out.body.push_back(fix_atom(a));
        return out;
    }

    /// Group interpreted-BK clauses into definitions by head name/arity and
    /// propagate higher-order argument positions across the clauses of each
    /// definition (the base clause of map/3 does not apply F itself, but the
    /// position is higher-order because the recursive clause's is).
    std::vector<HigherOrderDefinition> group_ibk(const std::vector<Clause>& clauses) {
        std::vector<HigherOrderDefinition> defs;
        auto def_for = [&](const PredSym& sig) -> HigherOrderDefinition& {
            for (auto& d : defs)
                if (d.name == sig.name && d.arity == sig.arity) return d;
            defs.push_back(HigherOrderDefinition{sig.name, sig.arity, {}});
            return defs.back();
        };
        for (const auto& c : clauses) def_for(c.head.pred.get_pred()).clauses.push_back(c);

        for (auto& d : defs) {
            std::vector<bool> ho_position(static_cast<std::size_t>(d.arity), false);
            for (const auto& c : d.clauses)
                for (int i = 0; i < d.arity; ++i)
                    if (c.head.args[static_cast<std::size_t>(i)].is_hvar() ||
                        c.head.args[static_cast<std::size_t>(i)].is_pred())
                        ho_position[static_cast<std::size_t>(i)] = true;
            for (auto& c : d.clauses) {
                std::set<int> promote;
                for (int i = 0; i < d.arity; ++i) {
                    const Term& t = c.head.args[static_cast<std::size_t>(i)];
                    if (ho_position[static_cast<std::size_t>(i)] && t.is_var())
                        promote.insert(t.var_id());
                }
                if (promote.empty()) continue;
                ClauseScope fake;
                fake.higher_order = promote;
                c = reclassify(c, fake);
            }
        }
        return defs;
    }

    void finalise_task(TaskFile& task) {
        const Atom* first = !task.pos.empty() ? &task.pos.front()
                            : !task.neg.empty() ? &task.neg.front()
                                                : nullptr;
        if (first) {
            task.target = first->pred.get_pred();
            task.name = task.target.name;
        }
        for (const auto& a : task.pos)
            if (a.pred.get_pred() != task.target)
                throw SyntaxError(1, 1, "example atoms must share the target predicate " +
                                            task.target.to_string());
        for (const auto& a : task.neg)
            if (a.pred.get_pred() != task.target)
                throw SyntaxError(1, 1, "example atoms must share the target predicate " +
                                            task.target.to_string());
        for (const auto& p : task.pos)
            for (const auto& n : task.neg)
                if (p == n)
                    throw SyntaxError(1, 1,
                                      "positive and negative examples overlap on " +
                                          p.pred.get_pred().name);
    }

    void resolve_predicate_args(std::vector<Clause>& clauses, const CompiledRegistry* reg,
                                const IbkLibrary* ibk) {
        std::map<std::string, int> arity_of;
        for (const auto& c : clauses) {
            const PredSym& sig = c.head.pred.get_pred();
            arity_of[sig.name] = sig.arity;
        }
        if (reg)
            for (const auto& sig : reg->whitelist()) arity_of.emplace(sig.name, sig.arity);
        if (ibk)
            for (const auto& d : ibk->defs()) arity_of.emplace(d.name, d.arity);
        auto fix = [&](Atom& a) {
            for (auto& t : a.args) {
                if (!t.is_value() || !t.get_value().is_symbol()) continue;
                auto it = arity_of.find(t.get_value().symbol_name());
                if (it != arity_of.end()) t = Term::pred(it->first, it->second);
            }
        };
        for (auto& c : clauses) {
            fix(c.head);
            for (auto& a : c.body) fix(a);
        }
    }

    int scope_var(ClauseScope& scope, const std::string& name) {
        if (name == "_") {
            int id = scope.supply.fresh();
            scope.names[id] = "_";
            return id;
        }
        auto it = scope.vars.find(name);
        if (it != scope.vars.end()) return it->second;
        int id = scope.supply.fresh();
        scope.vars.emplace(name, id);
        scope.names[id] = name;
        return id;
    }

    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            fail("expected " + what);
        return lex_.take();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(lex_.peek().line, lex_.peek().col, msg);
    }

    Lexer lex_;
    std::vector<Clause> ibk_buffer_;
};

}  // namespace syntax_detail

inline TaskFile parse_task(const std::string& text) {
    return syntax_detail::Parser(text).parse_task();
}

inline BkFile parse_bk(const std::string& text) {
    return syntax_detail::Parser(text).parse_bk();
}

inline std::vector<Metarule> parse_metarules(const std::string& text) {
    return syntax_detail::Parser(text).parse_metarules();
}

inline std::vector<HigherOrderDefinition> parse_ibk(const std::string& text) {
    return syntax_detail::Parser(text).parse_ibk();
}

inline std::vector<Clause> parse_program(const std::string& text,
                                         const CompiledRegistry* reg = nullptr,
                                         const IbkLibrary* ibk = nullptr) {
    return syntax_detail::Parser(text).parse_program(reg, ibk);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace syntax_detail {

/// Letter names in the conventional style: A,B,C,... for first-order
/// variables and P,Q,R,... for higher-order ones.
class VarNamer {
public:
    std::string name(const Term& t) {
        bool ho = t.is_hvar();
        auto& pool = ho ? ho_names_ : fo_names_;
        auto it = pool.find(t.var_id());
        if (it != pool.end()) return it->second;
        std::string n = ho ? ho_letter(ho_count_++) : fo_letter(fo_count_++);
        pool.emplace(t.var_id(), n);
        return n;
    }

private:
    static std::string fo_letter(int i) {
        // A..O, then A1, B1, ...
        if (i < 15) return std::string(1, static_cast<char>('A' + i));
        return std::string(1, static_cast<char>('A' + i % 15)) + std::to_string(i / 15);
    }
    static std::string ho_letter(int i) {
        if (i < 11) return std::string(1, static_cast<char>('P' + i));
        return std::string(1, static_cast<char>('P' + i % 11)) + std::to_string(i / 11);
    }

    std::map<int, std::string> fo_names_, ho_names_;
    int fo_count_ = 0, ho_count_ = 0;
};

inline void write_term(std::ostream& out, const Term& t, VarNamer& names) {
    switch (t.kind()) {
        case Term::Kind::Var:
        case Term::Kind::HVar: out << names.name(t); break;
        case Term::Kind::Value: t.get_value().write(out); break;
        case Term::Kind::Pred: out << t.get_pred().name; break;
    }
}

inline void write_atom(std::ostream& out, const Atom& a, VarNamer& names) {
    if (a.negated) out << "not(";
    write_term(out, a.pred, names);
    out << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i > 0) out << ',';
        write_term(out, a.args[i], names);
    }
    out << ')';
    if (a.negated) out << ')';
}

}  // namespace syntax_detail

/// One clause in surface syntax (no terminating dot).
inline std::string print_clause(const Clause& c) {
    std::ostringstream out;
    syntax_detail::VarNamer names;
    syntax_detail::write_atom(out, c.head, names);
    if (!c.body.empty()) {
        out << ":-";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i > 0) out << ',';
            syntax_detail::write_atom(out, c.body[i], names);
        }
    }
    return out.str();
}

inline std::string print_clauses(const std::vector<Clause>& clauses) {
    std::ostringstream out;
    for (const auto& c : clauses) out << print_clause(c) << ".\n";
    return out.str();
}

/// Learned program in surface syntax: one clause per line, record order.
inline std::string print_program(const Program& p, const MetaruleLibrary& lib) {
    return print_clauses(project(p, lib));
}

inline std::string print_metarule(const Metarule& m) {
    std::ostringstream out;
    syntax_detail::VarNamer names;
    out << "metarule(" << m.name << ",[";
    for (std::size_t i = 0; i < m.existential_vars.size(); ++i) {
        if (i > 0) out << ',';
        out << names.name(Term::hvar(m.existential_vars[i]));
    }
    out << "],(";
    syntax_detail::write_atom(out, m.clause_template.head, names);
    out << ":-";
    if (m.clause_template.body.empty()) out << "true";
    for (std::size_t i = 0; i < m.clause_template.body.size(); ++i) {
        if (i > 0) out << ',';
        syntax_detail::write_atom(out, m.clause_template.body[i], names);
    }
    out << ")).";
    return out.str();
}

/// Structural equality of clause lists modulo variable renaming, used for
/// round-trip checks.
inline bool clauses_equivalent(const std::vector<Clause>& a, const std::vector<Clause>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // Reuse the variant test over a synthetic atom packing head+body.
        auto pack = [](const Clause& c) {
            Atom all;
            all.pred = Term::pred("$clause", 0);
            all.args.push_back(c.head.pred);
            for (const auto& t : c.head.args) all.args.push_back(t);
            for (const auto& atom : c.body) {
                all.args.push_back(Term::value(Value::symbol(atom.negated ? "$neg" : "$pos")));
                all.args.push_back(atom.pred);
                for (const auto& t : atom.args) all.args.push_back(t);
            }
            return all;
        };
        if (!variant(pack(a[i]), pack(b[i]))) return false;
    }
    return true;
}

}  // namespace mil
