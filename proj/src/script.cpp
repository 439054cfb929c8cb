#include "verinum/script.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "verinum/certificate.hpp"
#include "verinum/parser.hpp"

namespace verinum {

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

bool is_identifier(const std::string& s)
{
    if (s.empty() || (std::isalpha(static_cast<unsigned char>(s[0])) == 0 && s[0] != '_')) {
        return false;
    }
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') {
            return false;
        }
    }
    return true;
}

bool is_reserved(const std::string& s)
{
    static const char* const words[] = {"pi", "sqrt", "sin", "cos", "tan", "exp", "ln", "atan", "abs", "in", "with"};
    for (const char* w : words) {
        if (s == w) {
            return true;
        }
    }
    return false;
}

// Positions are at nesting depth zero for () and [].
std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        } else if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

// Finds a keyword delimited by whitespace at depth zero.
std::optional<std::size_t> find_keyword(std::string_view s, std::string_view word)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        } else if (depth == 0 && s.substr(i, word.size()) == word) {
            const bool left = i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1])) != 0;
            const std::size_t end = i + word.size();
            const bool right = end < s.size() && (std::isspace(static_cast<unsigned char>(s[end])) != 0 || s[end] == '[');
            if (left && right) {
                return i;
            }
        }
    }
    return std::nullopt;
}

unsigned parse_natural(const std::string& s, std::size_t line, const char* what)
{
    if (s.empty() || s.size() > 9) {
        throw ScriptError(std::string("expected a natural number for ") + what, line);
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            throw ScriptError(std::string("expected a natural number for ") + what + ", got '" + s + "'", line);
        }
    }
    return static_cast<unsigned>(std::stoul(s));
}

bool parse_switch(const std::string& s, std::size_t line)
{
    if (s == "on" || s == "true") {
        return true;
    }
    if (s == "off" || s == "false") {
        return false;
    }
    throw ScriptError("expected on/off, got '" + s + "'", line);
}

class ScriptParser {
public:
    explicit ScriptParser(const ProverConfig& base) : config_(base) {}

    void statement(const std::string& text, std::size_t line)
    {
        const std::size_t space = text.find_first_of(" \t");
        const std::string head = text.substr(0, space);
        const std::string rest = space == std::string::npos ? "" : trim(std::string_view(text).substr(space));
        try {
            if (head == "const") {
                declare_const(rest, line);
            } else if (head == "var") {
                declare_var(rest, line);
            } else if (head == "option") {
                option(rest, line);
            } else if (head == "assert") {
                assertion(rest, text, line);
            } else {
                throw ScriptError("unknown statement '" + head + "'", line);
            }
        } catch (const ParseError& e) {
            throw ScriptError(e.what(), line);
        } catch (const std::invalid_argument& e) {
            throw ScriptError(e.what(), line);
        }
    }

    std::vector<Assertion> take() { return std::move(asserts_); }

private:
    ParseOptions expr_options() const
    {
        ParseOptions o;
        o.constants = &constants_;
        return o;
    }

    ParseOptions const_options() const
    {
        ParseOptions o = expr_options();
        o.negative_exponents = true;
        return o;
    }

    void check_new_name(const std::string& name, std::size_t line) const
    {
        if (!is_identifier(name) || is_reserved(name)) {
            throw ScriptError("invalid name '" + name + "'", line);
        }
        if (constants_.count(name) != 0 || vars_.contains(name)) {
            throw ScriptError("'" + name + "' is already declared", line);
        }
    }

    void declare_const(const std::string& rest, std::size_t line)
    {
        const std::size_t eq = rest.find('=');
        if (eq == std::string::npos) {
            throw ScriptError("expected 'const NAME = EXPR'", line);
        }
        const std::string name = trim(std::string_view(rest).substr(0, eq));
        check_new_name(name, line);
        const Expr e = parse(trim(std::string_view(rest).substr(eq + 1)), const_options());
        // Declared variables may occur; the definition then acts as a macro.
        for (const auto& v : free_vars(e)) {
            if (!vars_.contains(v)) {
                throw ScriptError("constant '" + name + "' uses unknown identifier '" + v + "'", line);
            }
        }
        const auto folded = fold_rational(e);
        constants_.emplace(name, folded ? Expr::constant(*folded) : e);
    }

    Interval parse_target(const std::string& text, std::size_t line) const
    {
        if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
            throw ScriptError("expected an interval '[A, B]'", line);
        }
        const auto parts = split_top(std::string_view(text).substr(1, text.size() - 2), ',');
        if (parts.size() != 2) {
            throw ScriptError("expected an interval '[A, B]'", line);
        }
        const Rational a = parse_rational_constant(parts[0], const_options());
        const Rational b = parse_rational_constant(parts[1], const_options());
        if (b < a) {
            throw ScriptError("interval [" + a.str() + ", " + b.str() + "] is empty", line);
        }
        return {a, b};
    }

    void declare_var(const std::string& rest, std::size_t line)
    {
        const auto in = find_keyword(rest, "in");
        if (!in) {
            throw ScriptError("expected 'var NAME in [A, B]'", line);
        }
        const std::string name = trim(std::string_view(rest).substr(0, *in));
        check_new_name(name, line);
        vars_.bind(name, parse_target(trim(std::string_view(rest).substr(*in + 2)), line));
    }

    static void apply_option(ProverConfig& cfg, const std::string& key, const std::string& value, std::size_t line)
    {
        if (key == "approx") {
            cfg.approx = parse_natural(value, line, "approx");
        } else if (key == "splits") {
            cfg.default_splits = parse_natural(value, line, "splits");
            if (cfg.default_splits == 0) {
                throw ScriptError("splits must be at least 1", line);
            }
        } else if (key == "round_bits") {
            if (value == "off") {
                cfg.round_bits.reset();
            } else {
                cfg.round_bits = parse_natural(value, line, "round_bits");
                if (*cfg.round_bits == 0) {
                    throw ScriptError("round_bits must be at least 1", line);
                }
            }
        } else if (key == "rewrites") {
            cfg.rewrite_exact = parse_switch(value, line);
        } else if (key == "simplify") {
            cfg.simplify = parse_switch(value, line);
        } else if (key == "taylor") {
            cfg.taylor_degree = parse_natural(value, line, "taylor");
        } else if (key == "taylor_scope") {
            if (value == "global") {
                cfg.taylor_scope = TaylorScope::global;
            } else if (value == "per-tile" || value == "per_tile") {
                cfg.taylor_scope = TaylorScope::per_tile;
            } else {
                throw ScriptError("taylor_scope is 'global' or 'per-tile'", line);
            }
        } else {
            throw ScriptError("unknown option '" + key + "'", line);
        }
    }

    void option(const std::string& rest, std::size_t line)
    {
        const std::size_t eq = rest.find('=');
        if (eq == std::string::npos) {
            throw ScriptError("expected 'option KEY = VALUE'", line);
        }
        apply_option(config_, trim(std::string_view(rest).substr(0, eq)), trim(std::string_view(rest).substr(eq + 1)),
                     line);
    }

    std::string declared_var(const std::string& name, std::size_t line) const
    {
        if (!vars_.contains(name)) {
            throw ScriptError("'" + name + "' is not a declared variable", line);
        }
        return name;
    }

    void clause(ProverConfig& cfg, const std::string& text, std::size_t line) const
    {
        const std::size_t open = text.find('(');
        if (open == std::string::npos || text.back() != ')') {
            throw ScriptError("malformed clause '" + text + "'", line);
        }
        const std::string name = trim(std::string_view(text).substr(0, open));
        const auto args = split_top(std::string_view(text).substr(open + 1, text.size() - open - 2), ',');
        if (name == "taylor") {
            if (args.size() < 2 || args.size() > 3) {
                throw ScriptError("expected taylor(VAR, DEGREE[, CENTER])", line);
            }
            cfg.taylor_var = declared_var(args[0], line);
            cfg.taylor_degree = parse_natural(args[1], line, "taylor degree");
            if (args.size() == 3) {
                cfg.taylor_center = parse_rational_constant(args[2], const_options());
            }
        } else if (name == "split") {
            if (args.size() != 2) {
                throw ScriptError("expected split(VAR, K)", line);
            }
            const unsigned k = parse_natural(args[1], line, "split");
            if (k == 0) {
                throw ScriptError("split count must be at least 1", line);
            }
            cfg.splits[declared_var(args[0], line)] = k;
        } else if (name == "approx" && args.size() == 1) {
            cfg.approx = parse_natural(args[0], line, "approx");
        } else if (name == "round_bits" && args.size() == 1) {
            apply_option(cfg, "round_bits", args[0], line);
        } else {
            throw ScriptError("unknown clause '" + text + "'", line);
        }
    }

    void assertion(std::string body, const std::string& source, std::size_t line)
    {
        Assertion a;
        a.line = line;
        a.source = source;
        a.config = config_;

        if (const std::size_t colon = body.find(':'); colon != std::string::npos) {
            const std::string label = trim(std::string_view(body).substr(0, colon));
            if (!is_identifier(label)) {
                throw ScriptError("invalid assertion label '" + label + "'", line);
            }
            a.label = label;
            body = trim(std::string_view(body).substr(colon + 1));
        }
        if (const auto with = find_keyword(body, "with")) {
            for (const auto& c : split_top(std::string_view(body).substr(*with + 4), ',')) {
                clause(a.config, c, line);
            }
            body = trim(std::string_view(body).substr(0, *with));
        }

        if (const auto in = find_keyword(body, "in")) {
            a.proposition = Membership{parse(trim(std::string_view(body).substr(0, *in)), expr_options()),
                                       parse_target(trim(std::string_view(body).substr(*in + 2)), line)};
        } else {
            std::optional<std::size_t> at;
            std::size_t len = 0;
            int depth = 0;
            for (std::size_t i = 0; i < body.size(); ++i) {
                const char c = body[i];
                if (c == '(' || c == '[') {
                    ++depth;
                } else if (c == ')' || c == ']') {
                    --depth;
                } else if (depth == 0 && (c == '<' || c == '>')) {
                    if (at) {
                        throw ScriptError("more than one relation in assertion", line);
                    }
                    at = i;
                    len = i + 1 < body.size() && body[i + 1] == '=' ? 2 : 1;
                    i += len - 1;
                }
            }
            if (!at) {
                throw ScriptError("assertion needs a relation (<, <=, >, >=) or 'in [A, B]'", line);
            }
            a.proposition = Relational{parse(trim(std::string_view(body).substr(0, *at)), expr_options()),
                                       parse_relation(body.substr(*at, len)),
                                       parse(trim(std::string_view(body).substr(*at + len)), expr_options())};
        }

        std::set<std::string> used;
        if (const auto* r = std::get_if<Relational>(&a.proposition)) {
            used = free_vars(r->lhs);
            used.merge(free_vars(r->rhs));
        } else {
            used = free_vars(std::get<Membership>(a.proposition).expr);
        }
        for (const auto& v : used) {
            const Interval* x = vars_.find(v);
            if (x == nullptr) {
                throw ScriptError("unknown identifier '" + v + "'", line);
            }
            a.context.bind(v, *x);
        }
        for (const auto& [v, k] : a.config.splits) {
            if (!a.context.contains(v)) {
                throw ScriptError("split variable '" + v + "' does not occur in the assertion", line);
            }
        }
        if (a.config.taylor_var && !a.context.contains(*a.config.taylor_var)) {
            throw ScriptError("Taylor variable '" + *a.config.taylor_var + "' does not occur in the assertion", line);
        }
        asserts_.push_back(std::move(a));
    }

    ProverConfig config_;
    std::map<std::string, Expr> constants_;
    Context vars_;
    std::vector<Assertion> asserts_;
};

} // namespace

std::vector<Assertion> parse_script(std::string_view text, const ProverConfig& base)
{
    ScriptParser p(base);
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        for (const auto& stmt : split_top(raw, ';')) {
            if (!stmt.empty()) {
                p.statement(stmt, line);
            }
        }
        pos = end + 1;
        ++line;
    }
    return p.take();
}

} // namespace verinum
