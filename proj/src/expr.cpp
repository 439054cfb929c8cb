#include "verinum/expr.hpp"

#include <cctype>

#include "verinum/interval_functions.hpp"

namespace verinum {

Expr Expr::constant(Rational value)
{
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name)
{
    auto n = std::make_shared<Node>();
    n->op = Op::variable;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::pi()
{
    static const Expr p = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::pi;
        return Expr(std::move(n));
    }();
    return p;
}

Expr Expr::unary(Op op, Expr arg)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args[0] = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args[0] = std::move(lhs);
    n->args[1] = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, unsigned long exponent)
{
    auto n = std::make_shared<Node>();
    n->op = Op::pow;
    n->exponent = exponent;
    n->args[0] = std::move(base);
    return Expr(std::move(n));
}

std::size_t Expr::arity() const
{
    switch (op()) {
    case Op::constant:
    case Op::variable:
    case Op::pi: return 0;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: return 2;
    default: return 1;
    }
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (!a.node_ || !b.node_ || a.op() != b.op()) {
        return false;
    }
    switch (a.op()) {
    case Op::constant: return a.value() == b.value();
    case Op::variable: return a.name() == b.name();
    case Op::pi: return true;
    case Op::pow:
        if (a.exponent() != b.exponent()) {
            return false;
        }
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.arg(i) == b.arg(i))) {
            return false;
        }
    }
    return true;
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Op::add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Op::sub, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::unary(Op::neg, std::move(a)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Op::mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Op::div, std::move(a), std::move(b)); }

Expr pow(Expr base, unsigned long exponent) { return Expr::power(std::move(base), exponent); }
Expr abs(Expr e) { return Expr::unary(Op::abs, std::move(e)); }
Expr sqrt(Expr e) { return Expr::unary(Op::sqrt, std::move(e)); }
Expr sin(Expr e) { return Expr::unary(Op::sin, std::move(e)); }
Expr cos(Expr e) { return Expr::unary(Op::cos, std::move(e)); }
Expr tan(Expr e) { return Expr::unary(Op::tan, std::move(e)); }
Expr exp(Expr e) { return Expr::unary(Op::exp, std::move(e)); }
Expr ln(Expr e) { return Expr::unary(Op::ln, std::move(e)); }
Expr atan(Expr e) { return Expr::unary(Op::atan, std::move(e)); }

std::string op_name(Op op)
{
    switch (op) {
    case Op::constant: return "const";
    case Op::variable: return "var";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::neg: return "neg";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::abs: return "abs";
    case Op::pow: return "^";
    case Op::sqrt: return "sqrt";
    case Op::pi: return "pi";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::tan: return "tan";
    case Op::exp: return "exp";
    case Op::ln: return "ln";
    case Op::atan: return "atan";
    }
    return "?";
}

namespace {

// Printing precedence: 1 sums, 2 products, 3 negation, 4 powers, 5 atoms.
int precedence(const Expr& e)
{
    switch (e.op()) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
    }
}

std::string print(const Expr& e, int min_prec);

std::string print_constant(const Rational& v)
{
    if (v.is_integer() && v.sign() >= 0) {
        return v.str();
    }
    return "(" + v.str() + ")";
}

std::string print_raw(const Expr& e)
{
    switch (e.op()) {
    case Op::constant: return print_constant(e.value());
    case Op::variable: return e.name();
    case Op::pi: return "pi";
    case Op::add: return print(e.arg(0), 1) + " + " + print(e.arg(1), 2);
    case Op::sub: return print(e.arg(0), 1) + " - " + print(e.arg(1), 2);
    case Op::mul: return print(e.arg(0), 2) + "*" + print(e.arg(1), 3);
    case Op::div: {
        // "2/3" between bare literals would read back as one constant.
        const std::string lhs = print(e.arg(0), 2);
        std::string rhs = print(e.arg(1), 3);
        if (std::isdigit(static_cast<unsigned char>(lhs.back())) != 0 &&
            std::isdigit(static_cast<unsigned char>(rhs.front())) != 0) {
            rhs = "(" + rhs + ")";
        }
        return lhs + "/" + rhs;
    }
    case Op::neg:
        if (e.arg().is_constant()) {
            // "-3" would read back as the constant -3.
            std::string s = print_constant(e.arg().value());
            return s.front() == '(' ? "-" + s : "-(" + s + ")";
        }
        return "-" + print(e.arg(), 3);
    case Op::pow: return print(e.arg(), 5) + "^" + std::to_string(e.exponent());
    default: return op_name(e.op()) + "(" + print(e.arg(), 0) + ")";
    }
}

std::string print(const Expr& e, int min_prec)
{
    std::string s = print_raw(e);
    if (precedence(e) < min_prec) {
        return "(" + s + ")";
    }
    return s;
}

void collect_vars(const Expr& e, std::set<std::string>& out)
{
    if (e.op() == Op::variable) {
        out.insert(e.name());
        return;
    }
    for (std::size_t i = 0; i < e.arity(); ++i) {
        collect_vars(e.arg(i), out);
    }
}

} // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

std::set<std::string> free_vars(const Expr& e)
{
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

bool is_total(const Expr& e)
{
    switch (e.op()) {
    case Op::div:
    case Op::sqrt:
    case Op::ln:
    case Op::tan: return false;
    default: break;
    }
    for (std::size_t i = 0; i < e.arity(); ++i) {
        if (!is_total(e.arg(i))) {
            return false;
        }
    }
    return true;
}

std::size_t node_count(const Expr& e)
{
    std::size_t n = 1;
    for (std::size_t i = 0; i < e.arity(); ++i) {
        n += node_count(e.arg(i));
    }
    return n;
}

Context::Context(std::initializer_list<std::pair<const std::string, Interval>> init)
{
    for (const auto& [name, x] : init) {
        bind(name, x);
    }
}

void Context::bind(const std::string& name, Interval x)
{
    if (x.is_empty()) {
        throw std::invalid_argument("context interval for '" + name + "' is empty");
    }
    bindings_.insert_or_assign(name, std::move(x));
}

const Interval* Context::find(const std::string& name) const
{
    const auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
}

namespace {

Interval eval_node(const Expr& e, const Context& ctx, const EvalOptions& opts);

Interval eval_rounded(const Expr& e, const Context& ctx, const EvalOptions& opts)
{
    Interval r = eval_node(e, ctx, opts);
    if (opts.round_bits) {
        return round_outward(r, *opts.round_bits);
    }
    return r;
}

Interval eval_node(const Expr& e, const Context& ctx, const EvalOptions& opts)
{
    const ApproxParam n = opts.approx;
    switch (e.op()) {
    case Op::constant: return Interval(e.value());
    case Op::variable: {
        const Interval* x = ctx.find(e.name());
        if (x == nullptr) {
            throw UnboundVariable("unbound variable '" + e.name() + "'");
        }
        return *x;
    }
    case Op::pi: return pi_interval(n);
    case Op::add: return eval_rounded(e.arg(0), ctx, opts) + eval_rounded(e.arg(1), ctx, opts);
    case Op::sub: return eval_rounded(e.arg(0), ctx, opts) - eval_rounded(e.arg(1), ctx, opts);
    case Op::mul: return eval_rounded(e.arg(0), ctx, opts) * eval_rounded(e.arg(1), ctx, opts);
    case Op::div: return eval_rounded(e.arg(0), ctx, opts) / eval_rounded(e.arg(1), ctx, opts);
    case Op::neg: return -eval_rounded(e.arg(), ctx, opts);
    case Op::abs: return abs(eval_rounded(e.arg(), ctx, opts));
    case Op::pow: return pow(eval_rounded(e.arg(), ctx, opts), e.exponent());
    case Op::sqrt: return sqrt(eval_rounded(e.arg(), ctx, opts), n);
    case Op::sin: return sin(eval_rounded(e.arg(), ctx, opts), n);
    case Op::cos: return cos(eval_rounded(e.arg(), ctx, opts), n);
    case Op::tan: return tan(eval_rounded(e.arg(), ctx, opts), n);
    case Op::exp: return exp(eval_rounded(e.arg(), ctx, opts), n);
    case Op::ln: return ln(eval_rounded(e.arg(), ctx, opts), n);
    case Op::atan: return atan(eval_rounded(e.arg(), ctx, opts), n);
    }
    return Interval::empty();
}

} // namespace

Interval eval_interval(const Expr& e, const Context& ctx, const EvalOptions& opts)
{
    return eval_rounded(e, ctx, opts);
}

Interval eval_interval(const Expr& e, const Context& ctx, ApproxParam n)
{
    return eval_interval(e, ctx, EvalOptions{n, std::nullopt});
}

std::optional<Rational> fold_rational(const Expr& e)
{
    switch (e.op()) {
    case Op::constant: return e.value();
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
        auto a = fold_rational(e.arg(0));
        if (!a) {
            return std::nullopt;
        }
        auto b = fold_rational(e.arg(1));
        if (!b) {
            return std::nullopt;
        }
        switch (e.op()) {
        case Op::add: return *a + *b;
        case Op::sub: return *a - *b;
        case Op::mul: return *a * *b;
        default:
            if (b->is_zero()) {
                return std::nullopt;
            }
            return *a / *b;
        }
    }
    case Op::neg: {
        auto a = fold_rational(e.arg());
        return a ? std::optional<Rational>(-*a) : std::nullopt;
    }
    case Op::abs: {
        auto a = fold_rational(e.arg());
        return a ? std::optional<Rational>(abs(*a)) : std::nullopt;
    }
    case Op::pow: {
        auto a = fold_rational(e.arg());
        return a ? std::optional<Rational>(pow_nat(*a, e.exponent())) : std::nullopt;
    }
    default: return std::nullopt;
    }
}

} // namespace verinum
