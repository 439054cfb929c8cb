#include "verinum/parser.hpp"

#include <cctype>
#include <vector>

namespace verinum {

namespace {

enum class Tok { number, name, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
    bool integer = false;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
            bool seen_dot = false;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) != 0 || (s[i] == '.' && !seen_dot))) {
                seen_dot = seen_dot || s[i] == '.';
                ++i;
            }
            std::string text(s.substr(start, i - start));
            if (text == "." || text.back() == '.') {
                throw ParseError("malformed number '" + text + "'", start);
            }
            out.push_back({Tok::number, text, start, !seen_dot});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) != 0 || s[i] == '_')) {
                ++i;
            }
            out.push_back({Tok::name, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Tok kind{};
        switch (c) {
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '/': kind = Tok::slash; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

const std::map<std::string, Op>& functions()
{
    static const std::map<std::string, Op> table = {
        {"sqrt", Op::sqrt}, {"sin", Op::sin}, {"cos", Op::cos}, {"tan", Op::tan},
        {"exp", Op::exp},   {"ln", Op::ln},   {"atan", Op::atan}, {"abs", Op::abs},
    };
    return table;
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : toks_(tokenize(text)), opts_(opts) {}

    Expr run()
    {
        Expr e = expr();
        if (peek().kind != Tok::end) {
            throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        }
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    const Token& advance() { return toks_[pos_++]; }

    void expect(Tok kind, const char* what)
    {
        if (peek().kind != kind) {
            throw ParseError(std::string("expected ") + what, peek().pos);
        }
        ++pos_;
    }

    Expr expr()
    {
        Expr e = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool plus = advance().kind == Tok::plus;
            Expr rhs = term();
            e = plus ? e + rhs : e - rhs;
        }
        return e;
    }

    Expr term()
    {
        Expr e = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const bool star = advance().kind == Tok::star;
            Expr rhs = unary();
            e = star ? e * rhs : e / rhs;
        }
        return e;
    }

    Expr unary()
    {
        if (peek().kind == Tok::plus) {
            advance();
            return unary();
        }
        if (peek().kind == Tok::minus) {
            advance();
            if (peek().kind == Tok::number) {
                Expr e = power();
                // A bare literal folds; "-2^2" stays a negated power.
                if (e.is_constant()) {
                    return Expr::constant(-e.value());
                }
                return -e;
            }
            return -unary();
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        while (peek().kind == Tok::caret) {
            advance();
            bool negative = false;
            if (peek().kind == Tok::minus && opts_.negative_exponents) {
                advance();
                negative = true;
            }
            const Token& t = peek();
            if (t.kind != Tok::number || !t.integer) {
                throw ParseError("exponent must be a natural number literal", t.pos);
            }
            advance();
            unsigned long k = 0;
            try {
                k = std::stoul(t.text);
            } catch (const std::exception&) {
                throw ParseError("exponent too large", t.pos);
            }
            base = negative ? Expr::constant(1) / pow(base, k) : pow(base, k);
        }
        return base;
    }

    Expr primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            const bool after_divide = pos_ > 0 && toks_[pos_ - 1].kind == Tok::slash;
            advance();
            if (t.integer && !after_divide && peek().kind == Tok::slash && peek(1).kind == Tok::number && peek(1).integer &&
                peek(2).kind != Tok::caret) {
                advance();
                const Token& den = advance();
                const Rational d = Rational::parse(den.text);
                if (d.is_zero()) {
                    throw ParseError("zero denominator in rational literal", den.pos);
                }
                return Expr::constant(Rational::parse(t.text) / d);
            }
            return Expr::constant(Rational::parse(t.text));
        }
        case Tok::name: {
            advance();
            if (const auto f = functions().find(t.text); f != functions().end()) {
                expect(Tok::lparen, "'(' after function name");
                Expr arg = expr();
                expect(Tok::rparen, "')'");
                return Expr::unary(f->second, std::move(arg));
            }
            if (peek().kind == Tok::lparen) {
                throw ParseError("unknown function '" + t.text + "'", t.pos);
            }
            if (t.text == "pi") {
                return Expr::pi();
            }
            if (opts_.constants != nullptr) {
                if (const auto c = opts_.constants->find(t.text); c != opts_.constants->end()) {
                    return c->second;
                }
            }
            return Expr::variable(t.text);
        }
        case Tok::lparen: {
            advance();
            Expr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::end: throw ParseError("unexpected end of input", t.pos);
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ParseOptions& opts_;
};

} // namespace

Expr parse(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

Rational parse_rational_constant(std::string_view text, const ParseOptions& opts)
{
    const Expr e = parse(text, opts);
    auto v = fold_rational(e);
    if (!v) {
        throw ParseError("'" + std::string(text) + "' is not a rational constant", 0);
    }
    return *v;
}

} // namespace verinum
