#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "hypermon/errors.hpp"
#include "hypermon/syntax.hpp"
#include "hypermon/trace.hpp"

namespace hypermon {

namespace detail {

struct Token {
    enum class Kind {
        Ident, KwForall, KwExists, KwMax, KwTT, KwFF,
        Meet, Join, Amp, LBox, RBox, LParen, RParen, Dot, End
    };
    Kind kind;
    std::string text;
    int line;
    int col;
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
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            consume_char();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", line, col};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                word += src_[pos_];
                consume_char();
            }
            Token::Kind k = Token::Kind::Ident;
            if (word == "A") k = Token::Kind::KwForall;
            else if (word == "E") k = Token::Kind::KwExists;
            else if (word == "max") k = Token::Kind::KwMax;
            else if (word == "tt") k = Token::Kind::KwTT;
            else if (word == "ff") k = Token::Kind::KwFF;
            tok_ = {k, word, line, col};
            return;
        }
        if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\\') {
            consume_char(); consume_char();
            tok_ = {Token::Kind::Meet, "/\\", line, col};
            return;
        }
        if (c == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
            consume_char(); consume_char();
            tok_ = {Token::Kind::Join, "\\/", line, col};
            return;
        }
        Token::Kind k;
        switch (c) {
        case '&': k = Token::Kind::Amp; break;
        case '[': k = Token::Kind::LBox; break;
        case ']': k = Token::Kind::RBox; break;
        case '(': k = Token::Kind::LParen; break;
        case ')': k = Token::Kind::RParen; break;
        case '.': k = Token::Kind::Dot; break;
        default:
            throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
        consume_char();
        tok_ = {k, std::string(1, c), line, col};
    }

    void consume_char() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Token::Kind::End, "", 1, 1};
};

class FormulaParser {
public:
    FormulaParser(const std::string& src, const Alphabet& alphabet)
        : lex_(src), alphabet_(alphabet) {}

    HyperPtr parse_hyper_top() {
        HyperPtr f = parse_meet();
        expect(Token::Kind::End, "end of input");
        return f;
    }

    ShmlPtr parse_shml_top() {
        ShmlPtr f = parse_conj({});
        expect(Token::Kind::End, "end of input");
        check(f);
        return f;
    }

private:
    HyperPtr parse_meet() {
        HyperPtr f = parse_join();
        while (lex_.peek().kind == Token::Kind::Meet) {
            lex_.take();
            f = hyper::meet(f, parse_join());
        }
        return f;
    }

    HyperPtr parse_join() {
        HyperPtr f = parse_atom();
        while (lex_.peek().kind == Token::Kind::Join) {
            lex_.take();
            f = hyper::join(f, parse_atom());
        }
        return f;
    }

    HyperPtr parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Token::Kind::KwForall:
        case Token::Kind::KwExists: {
            bool forall = t.kind == Token::Kind::KwForall;
            lex_.take();
            Token var = expect(Token::Kind::Ident, "trace variable");
            expect(Token::Kind::Dot, "'.'");
            ShmlPtr body = parse_conj({});
            check(body);
            return forall ? hyper::forall(var.text, body) : hyper::exists(var.text, body);
        }
        case Token::Kind::LParen: {
            lex_.take();
            HyperPtr f = parse_meet();
            expect(Token::Kind::RParen, "')'");
            return f;
        }
        default:
            throw parse_error("expected quantifier or '('", t.line, t.col);
        }
    }

    ShmlPtr parse_conj(const std::vector<std::string>& scope) {
        ShmlPtr f = parse_unit(scope);
        while (lex_.peek().kind == Token::Kind::Amp) {
            lex_.take();
            f = shml::conj(f, parse_unit(scope));
        }
        return f;
    }

    ShmlPtr parse_unit(const std::vector<std::string>& scope) {
        Token t = lex_.take();
        switch (t.kind) {
        case Token::Kind::KwTT: return shml::tt();
        case Token::Kind::KwFF: return shml::ff();
        case Token::Kind::LBox: {
            Token act = expect(Token::Kind::Ident, "action");
            if (!alphabet_.contains(act.text))
                throw parse_error("unknown action: " + act.text, act.line, act.col);
            expect(Token::Kind::RBox, "']'");
            return shml::box(act.text, parse_unit(scope));
        }
        case Token::Kind::KwMax: {
            Token var = expect(Token::Kind::Ident, "recursion variable");
            expect(Token::Kind::Dot, "'.'");
            std::vector<std::string> inner = scope;
            inner.push_back(var.text);
            return shml::max(var.text, parse_unit(inner));
        }
        case Token::Kind::Ident: {
            bool bound = false;
            for (const auto& v : scope) bound = bound || v == t.text;
            if (!bound)
                throw parse_error("unbound recursion variable: " + t.text, t.line, t.col);
            return shml::var(t.text);
        }
        case Token::Kind::LParen: {
            ShmlPtr f = parse_conj(scope);
            expect(Token::Kind::RParen, "')'");
            return f;
        }
        case Token::Kind::KwForall:
        case Token::Kind::KwExists:
            throw parse_error("quantifier not allowed inside a trace formula", t.line, t.col);
        default:
            throw parse_error("expected trace formula, got '" + t.text + "'", t.line, t.col);
        }
    }

    void check(const ShmlPtr& f) {
        // closedness is already enforced while parsing; guardedness is not
        if (auto v = unguarded_variable(f)) {
            const Token& t = lex_.peek();
            throw parse_error("unguarded recursion variable: " + *v, t.line, t.col);
        }
    }

    Token expect(Token::Kind k, const std::string& what) {
        const Token& t = lex_.peek();
        if (t.kind != k)
            throw parse_error("expected " + what + ", got '" +
                                  (t.kind == Token::Kind::End ? std::string("<eof>") : t.text) + "'",
                              t.line, t.col);
        return lex_.take();
    }

    Lexer lex_;
    const Alphabet& alphabet_;
};

} // namespace detail

inline HyperPtr parse_hyper(const std::string& text, const Alphabet& alphabet) {
    return detail::FormulaParser(text, alphabet).parse_hyper_top();
}

inline ShmlPtr parse_shml(const std::string& text, const Alphabet& alphabet) {
    return detail::FormulaParser(text, alphabet).parse_shml_top();
}

// Trace-suite files: a line "alphabet a b ...", then one "trace u... | v..."
// line per trace. Blank lines and '#' comment lines are skipped.
inline TraceSuite parse_suite(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_alphabet = false;
    Alphabet alphabet;
    std::vector<LassoTrace> traces;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "alphabet") {
            if (have_alphabet) throw parse_error("duplicate alphabet line", lineno, 1);
            std::vector<Action> acts;
            std::string a;
            while (ls >> a) acts.push_back(a);
            if (acts.empty()) throw parse_error("empty alphabet", lineno, 1);
            alphabet = Alphabet(acts);
            have_alphabet = true;
        } else if (head == "trace") {
            if (!have_alphabet)
                throw parse_error("trace line before alphabet line", lineno, 1);
            std::vector<Action> u, v;
            bool in_loop = false;
            std::string a;
            while (ls >> a) {
                if (a == "|") {
                    if (in_loop) throw parse_error("duplicate '|' in trace line", lineno, 1);
                    in_loop = true;
                    continue;
                }
                if (!alphabet.contains(a))
                    throw parse_error("action not in alphabet: " + a, lineno, 1);
                (in_loop ? v : u).push_back(a);
            }
            if (!in_loop) throw parse_error("missing '|' in trace line", lineno, 1);
            if (v.empty()) throw parse_error("empty loop part", lineno, 1);
            traces.emplace_back(std::move(u), std::move(v));
        } else {
            throw parse_error("expected 'alphabet' or 'trace', got '" + head + "'", lineno, 1);
        }
    }
    if (!have_alphabet) throw parse_error("missing alphabet line", lineno, 1);
    if (traces.empty()) throw parse_error("suite contains no traces", lineno, 1);
    return TraceSuite(std::move(alphabet), std::move(traces));
}

} // namespace hypermon
