#include "verinum/symbolic.hpp"

#include <map>

namespace verinum {

namespace {

// c * var^degree; an empty var means a constant.
struct Monomial {
    Rational coef;
    std::string var;
    unsigned long degree = 0;
};

std::optional<Monomial> as_monomial(const Expr& e)
{
    switch (e.op()) {
    case Op::constant: return Monomial{e.value(), "", 0};
    case Op::variable: return Monomial{Rational(1), e.name(), 1};
    case Op::neg: {
        auto m = as_monomial(e.arg());
        if (m) {
            m->coef = -m->coef;
        }
        return m;
    }
    case Op::mul: {
        auto a = as_monomial(e.arg(0));
        if (!a) {
            return std::nullopt;
        }
        auto b = as_monomial(e.arg(1));
        if (!b || (!a->var.empty() && !b->var.empty() && a->var != b->var)) {
            return std::nullopt;
        }
        return Monomial{a->coef * b->coef, a->var.empty() ? b->var : a->var, a->degree + b->degree};
    }
    case Op::div: {
        if (!e.arg(1).is_constant() || e.arg(1).value().is_zero()) {
            return std::nullopt;
        }
        auto a = as_monomial(e.arg(0));
        if (a) {
            a->coef /= e.arg(1).value();
        }
        return a;
    }
    case Op::pow: {
        auto a = as_monomial(e.arg());
        if (a) {
            a->coef = pow_nat(a->coef, e.exponent());
            a->degree *= e.exponent();
            if (a->degree == 0) {
                a->var.clear();
            }
        }
        return a;
    }
    default: return std::nullopt;
    }
}

Expr var_power(const std::string& var, unsigned long degree)
{
    Expr x = Expr::variable(var);
    return degree == 1 ? x : pow(x, degree);
}

// var^degree * inner with unit and constant factors tidied.
Expr times_power(const std::string& var, unsigned long degree, const Expr& inner)
{
    Expr xp = var_power(var, degree);
    if (inner.is_constant()) {
        const Rational& c = inner.value();
        if (c == Rational(1)) {
            return xp;
        }
        if (c == Rational(-1)) {
            return -xp;
        }
        return Expr::constant(c) * xp;
    }
    return xp * inner;
}

using Poly = std::map<unsigned long, Rational>; // degree -> nonzero coefficient

Expr horner(const std::string& var, const Poly& p)
{
    const unsigned long low = p.begin()->first;
    if (low > 0) {
        Poly shifted;
        for (const auto& [d, c] : p) {
            shifted.emplace(d - low, c);
        }
        return times_power(var, low, horner(var, shifted));
    }
    const Rational c0 = p.begin()->second;
    if (p.size() == 1) {
        return Expr::constant(c0);
    }
    const unsigned long gap = std::next(p.begin())->first;
    Poly rest;
    const bool negative = std::next(p.begin())->second.sign() < 0;
    for (auto it = std::next(p.begin()); it != p.end(); ++it) {
        rest.emplace(it->first - gap, negative ? -it->second : it->second);
    }
    Expr tail = times_power(var, gap, horner(var, rest));
    return negative ? Expr::constant(c0) - tail : Expr::constant(c0) + tail;
}

Expr render_monomial(const Monomial& m)
{
    if (m.var.empty() || m.degree == 0 || m.coef.is_zero()) {
        return Expr::constant(m.coef);
    }
    return times_power(m.var, m.degree, Expr::constant(m.coef));
}

// mag * body for a positive mag, written as a quotient for unit fractions.
Expr scaled(const Rational& mag, const Expr& body)
{
    if (mag == Rational(1)) {
        return body;
    }
    if (mag.numerator() == 1) {
        return body / Expr::constant(Rational(mag.denominator(), mpz_class(1)));
    }
    return Expr::constant(mag) * body;
}

Expr signed_scaled(const Rational& k, const Expr& body)
{
    return k.sign() < 0 ? -scaled(-k, body) : scaled(k, body);
}

// e = coefficient * rest
std::pair<Rational, Expr> split_coefficient(const Expr& e)
{
    switch (e.op()) {
    case Op::constant: return {e.value(), Expr::constant(1)};
    case Op::neg: {
        auto [k, r] = split_coefficient(e.arg());
        return {-k, r};
    }
    case Op::mul: {
        auto [ka, ra] = split_coefficient(e.arg(0));
        auto [kb, rb] = split_coefficient(e.arg(1));
        if (ra.is_constant(1)) {
            return {ka * kb, rb};
        }
        if (rb.is_constant(1)) {
            return {ka * kb, ra};
        }
        return {ka * kb, ra * rb};
    }
    case Op::div: {
        auto [ka, ra] = split_coefficient(e.arg(0));
        if (e.arg(1).is_constant() && !e.arg(1).value().is_zero()) {
            return {ka / e.arg(1).value(), ra};
        }
        return {ka, ra / e.arg(1)};
    }
    default: return {Rational(1), e};
    }
}

void flatten_sum(const Expr& e, const Rational& sign, std::vector<std::pair<Rational, Expr>>& terms)
{
    switch (e.op()) {
    case Op::add:
        flatten_sum(e.arg(0), sign, terms);
        flatten_sum(e.arg(1), sign, terms);
        return;
    case Op::sub:
        flatten_sum(e.arg(0), sign, terms);
        flatten_sum(e.arg(1), -sign, terms);
        return;
    case Op::neg: flatten_sum(e.arg(), -sign, terms); return;
    default: {
        auto [k, r] = split_coefficient(e);
        terms.emplace_back(sign * k, r);
    }
    }
}

Expr combine_terms(const std::vector<std::pair<Rational, Expr>>& terms)
{
    std::map<std::string, Poly> polys;
    Rational constant;
    std::vector<std::pair<Rational, Expr>> atoms;
    for (const auto& [k, r] : terms) {
        if (auto m = as_monomial(r)) {
            const Rational c = k * m->coef;
            if (m->var.empty()) {
                constant += c;
            } else {
                polys[m->var][m->degree] += c;
            }
            continue;
        }
        bool merged = false;
        for (auto& [ak, ar] : atoms) {
            if (ar == r) {
                ak += k;
                merged = true;
                break;
            }
        }
        if (!merged) {
            atoms.emplace_back(k, r);
        }
    }
    for (auto& [var, p] : polys) {
        std::erase_if(p, [](const auto& entry) { return entry.second.is_zero(); });
    }
    std::erase_if(polys, [](const auto& entry) { return entry.second.empty(); });
    if (polys.size() == 1 && !constant.is_zero()) {
        polys.begin()->second[0] += constant;
        constant = Rational(0);
    }

    // Pieces are added as (coefficient, body).
    std::vector<std::pair<Rational, Expr>> pieces;
    for (const auto& [var, p] : polys) {
        pieces.emplace_back(Rational(1), horner(var, p));
    }
    if (!constant.is_zero()) {
        pieces.emplace_back(constant, Expr::constant(1));
    }
    for (const auto& [k, r] : atoms) {
        if (k.is_zero() && is_total(r)) {
            continue;
        }
        pieces.emplace_back(k, r);
    }
    if (pieces.empty()) {
        return Expr::constant(0);
    }

    std::optional<Expr> acc;
    for (const auto& [k, body] : pieces) {
        const bool negative = k.sign() < 0;
        const Rational mag = abs(k);
        Expr term = body;
        if (body.is_constant(1)) {
            term = Expr::constant(acc ? mag : k);
        } else if (k.is_zero()) {
            term = Expr::constant(0) * body;
        } else {
            term = scaled(mag, body);
        }
        if (!acc) {
            acc = negative && !body.is_constant(1) ? -term : term;
        } else {
            acc = negative ? *acc - term : *acc + term;
        }
    }
    return *acc;
}

Expr simplify_sum(const Expr& e)
{
    std::vector<std::pair<Rational, Expr>> terms;
    flatten_sum(e, Rational(1), terms);
    return combine_terms(terms);
}

Expr simplify_node(const Expr& e)
{
    if (!e.is_constant()) {
        if (auto v = fold_rational(e)) {
            return Expr::constant(*v);
        }
    }
    switch (e.op()) {
    case Op::add:
    case Op::sub: return simplify_sum(e);
    case Op::neg:
        if (e.arg().op() == Op::neg) {
            return e.arg().arg();
        }
        if (e.arg().op() == Op::add || e.arg().op() == Op::sub) {
            return simplify_sum(e);
        }
        return e;
    case Op::mul: {
        const Expr& a = e.arg(0);
        const Expr& b = e.arg(1);
        if ((a.is_constant(0) && is_total(b)) || (b.is_constant(0) && is_total(a))) {
            return Expr::constant(0);
        }
        if (auto m = as_monomial(e)) {
            return render_monomial(*m);
        }
        auto [k, r] = split_coefficient(e);
        if (k.is_zero()) {
            return e;
        }
        return signed_scaled(k, r);
    }
    case Op::div: {
        const Expr& b = e.arg(1);
        if (b.is_constant() && !b.value().is_zero()) {
            auto [k, r] = split_coefficient(e);
            if (auto m = as_monomial(r)) {
                m->coef *= k;
                return render_monomial(*m);
            }
            return signed_scaled(k, r);
        }
        return e;
    }
    case Op::pow: {
        const Expr& base = e.arg();
        const unsigned long k = e.exponent();
        if (k == 0 && is_total(base)) {
            return Expr::constant(1);
        }
        if (k == 1) {
            return base;
        }
        if (auto m = as_monomial(e)) {
            return render_monomial(*m);
        }
        if (base.op() == Op::pow) {
            return pow(base.arg(), base.exponent() * k);
        }
        if (base.op() == Op::neg) {
            return k % 2 == 0 ? pow(base.arg(), k) : -pow(base.arg(), k);
        }
        return e;
    }
    case Op::abs:
        if (e.arg().op() == Op::neg) {
            return abs(e.arg().arg());
        }
        return e;
    default: return e;
    }
}

Expr rebuild(const Expr& e, const Expr& a0, const Expr& a1)
{
    if (e.op() == Op::pow) {
        return pow(a0, e.exponent());
    }
    if (e.arity() == 1) {
        return Expr::unary(e.op(), a0);
    }
    return Expr::binary(e.op(), a0, a1);
}

bool depends_on(const Expr& e, const std::string& var)
{
    if (e.op() == Op::variable) {
        return e.name() == var;
    }
    for (std::size_t i = 0; i < e.arity(); ++i) {
        if (depends_on(e.arg(i), var)) {
            return true;
        }
    }
    return false;
}

// Dense polynomial view of e in var with rational coefficients.
std::optional<Poly> as_polynomial(const Expr& e, const std::string& var)
{
    const auto mul = [](const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& [da, ca] : a) {
            for (const auto& [db, cb] : b) {
                out[da + db] += ca * cb;
            }
        }
        return out;
    };
    const auto add = [](Poly a, const Poly& b, const Rational& sign) {
        for (const auto& [d, c] : b) {
            a[d] += sign * c;
        }
        return a;
    };
    switch (e.op()) {
    case Op::constant: return Poly{{0, e.value()}};
    case Op::variable:
        if (e.name() != var) {
            return std::nullopt;
        }
        return Poly{{1, Rational(1)}};
    case Op::neg: {
        auto a = as_polynomial(e.arg(), var);
        if (a) {
            for (auto& [d, c] : *a) {
                c = -c;
            }
        }
        return a;
    }
    case Op::add:
    case Op::sub:
    case Op::mul: {
        auto a = as_polynomial(e.arg(0), var);
        auto b = a ? as_polynomial(e.arg(1), var) : std::nullopt;
        if (!b) {
            return std::nullopt;
        }
        if (e.op() == Op::mul) {
            return mul(*a, *b);
        }
        return add(*a, *b, Rational(e.op() == Op::add ? 1 : -1));
    }
    case Op::div: {
        auto k = fold_rational(e.arg(1));
        if (!k || k->is_zero()) {
            return std::nullopt;
        }
        auto a = as_polynomial(e.arg(0), var);
        if (a) {
            for (auto& [d, c] : *a) {
                c /= *k;
            }
        }
        return a;
    }
    case Op::pow: {
        auto a = as_polynomial(e.arg(), var);
        if (!a || e.exponent() > 64) {
            return std::nullopt;
        }
        Poly out{{0, Rational(1)}};
        for (unsigned long i = 0; i < e.exponent(); ++i) {
            out = mul(out, *a);
        }
        return out;
    }
    default: return std::nullopt;
    }
}

Expr render_polynomial(const std::string& var, Poly p)
{
    std::erase_if(p, [](const auto& entry) { return entry.second.is_zero(); });
    return p.empty() ? Expr::constant(0) : horner(var, p);
}

Expr derive(const Expr& e, const std::string& var)
{
    if (auto p = as_polynomial(e, var)) {
        // Differentiated exactly, so factored forms do not turn into
        // product-rule towers.
        Poly dp;
        for (const auto& [d, c] : *p) {
            if (d > 0) {
                dp[d - 1] += c * Rational(static_cast<long>(d));
            }
        }
        return render_polynomial(var, dp);
    }
    if (!depends_on(e, var)) {
        return Expr::constant(0);
    }
    const Expr one = Expr::constant(1);
    switch (e.op()) {
    case Op::variable: return one;
    case Op::add: return derive(e.arg(0), var) + derive(e.arg(1), var);
    case Op::sub: return derive(e.arg(0), var) - derive(e.arg(1), var);
    case Op::neg: return -derive(e.arg(), var);
    case Op::mul: {
        const Expr& a = e.arg(0);
        const Expr& b = e.arg(1);
        if (!depends_on(a, var)) {
            return a * derive(b, var);
        }
        if (!depends_on(b, var)) {
            return derive(a, var) * b;
        }
        return derive(a, var) * b + a * derive(b, var);
    }
    case Op::div: {
        const Expr& a = e.arg(0);
        const Expr& b = e.arg(1);
        if (!depends_on(b, var)) {
            return derive(a, var) / b;
        }
        if (!depends_on(a, var)) {
            return -(a * derive(b, var)) / pow(b, 2);
        }
        return (derive(a, var) * b - a * derive(b, var)) / pow(b, 2);
    }
    case Op::pow: {
        const unsigned long k = e.exponent();
        const Expr& a = e.arg();
        if (k == 1) {
            return derive(a, var);
        }
        return Expr::constant(Rational(static_cast<long>(k))) * pow(a, k - 1) * derive(a, var);
    }
    case Op::abs: throw UnsupportedDerivative("abs is not differentiable in '" + var + "'");
    case Op::sqrt: return derive(e.arg(), var) / (Expr::constant(2) * e);
    case Op::sin: return cos(e.arg()) * derive(e.arg(), var);
    case Op::cos: return -(sin(e.arg()) * derive(e.arg(), var));
    case Op::tan: return (one + pow(e, 2)) * derive(e.arg(), var);
    case Op::exp: return e * derive(e.arg(), var);
    case Op::ln: return derive(e.arg(), var) / e.arg();
    case Op::atan: return derive(e.arg(), var) / (one + pow(e.arg(), 2));
    default: return Expr::constant(0);
    }
}

struct Exact {
    Rational q;
    unsigned radical = 1; // value is q * sqrt(radical)
};

Expr render_exact(const Exact& v)
{
    if (v.radical == 1 || v.q.is_zero()) {
        return Expr::constant(v.q);
    }
    Expr s = sqrt(Expr::constant(Rational(static_cast<long>(v.radical))));
    const Rational mag = abs(v.q);
    const Rational num(mag.numerator(), mpz_class(1));
    const Rational den(mag.denominator(), mpz_class(1));
    if (num != Rational(1)) {
        s = Expr::constant(num) * s;
    }
    if (den != Rational(1)) {
        s = s / Expr::constant(den);
    }
    return v.q.sign() < 0 ? -s : s;
}

// sin(t * 15 degrees) for t in [0, 24), on multiples of 30 and 45 degrees.
std::optional<Exact> sin_twelfths(long t)
{
    const Rational half(1, 2);
    switch (t) {
    case 0:
    case 12: return Exact{Rational(0)};
    case 2:
    case 10: return Exact{half};
    case 3:
    case 9: return Exact{half, 2};
    case 4:
    case 8: return Exact{half, 3};
    case 6: return Exact{Rational(1)};
    case 14:
    case 22: return Exact{-half};
    case 15:
    case 21: return Exact{-half, 2};
    case 16:
    case 20: return Exact{-half, 3};
    case 18: return Exact{Rational(-1)};
    default: return std::nullopt;
    }
}

std::optional<Exact> tan_twelfths(long t)
{
    switch (t % 12) {
    case 0: return Exact{Rational(0)};
    case 2: return Exact{Rational(1, 3), 3};
    case 3: return Exact{Rational(1)};
    case 4: return Exact{Rational(1), 3};
    case 8: return Exact{Rational(-1), 3};
    case 9: return Exact{Rational(-1)};
    case 10: return Exact{Rational(-1, 3), 3};
    default: return std::nullopt;
    }
}

// e = r * pi for a rational r read off the syntax.
std::optional<Rational> as_pi_multiple(const Expr& e)
{
    switch (e.op()) {
    case Op::pi: return Rational(1);
    case Op::constant:
        if (e.value().is_zero()) {
            return Rational(0);
        }
        return std::nullopt;
    case Op::neg: {
        auto r = as_pi_multiple(e.arg());
        return r ? std::optional<Rational>(-*r) : std::nullopt;
    }
    case Op::add:
    case Op::sub: {
        auto a = as_pi_multiple(e.arg(0));
        auto b = a ? as_pi_multiple(e.arg(1)) : std::nullopt;
        if (!b) {
            return std::nullopt;
        }
        return e.op() == Op::add ? *a + *b : *a - *b;
    }
    case Op::mul: {
        for (int i = 0; i < 2; ++i) {
            const Expr& c = e.arg(i);
            if (auto k = fold_rational(c)) {
                if (auto r = as_pi_multiple(e.arg(1 - i))) {
                    return *k * *r;
                }
            }
        }
        return std::nullopt;
    }
    case Op::div: {
        auto k = fold_rational(e.arg(1));
        if (!k || k->is_zero()) {
            return std::nullopt;
        }
        auto r = as_pi_multiple(e.arg(0));
        return r ? std::optional<Rational>(*r / *k) : std::nullopt;
    }
    default: return std::nullopt;
    }
}

std::optional<Expr> notable_value(Op fn, const Rational& r)
{
    // Reduce r to [0, 2) and express the angle in units of 15 degrees.
    const Rational two(2);
    const Rational reduced = r - two * Rational(floor(r / two), mpz_class(1));
    const Rational t = reduced * Rational(12);
    if (!t.is_integer()) {
        return std::nullopt;
    }
    const long twelfths = t.numerator().get_si();
    std::optional<Exact> v;
    switch (fn) {
    case Op::sin: v = sin_twelfths(twelfths); break;
    case Op::cos: v = sin_twelfths((twelfths + 6) % 24); break;
    case Op::tan: v = tan_twelfths(twelfths); break;
    default: break;
    }
    if (!v) {
        return std::nullopt;
    }
    return render_exact(*v);
}

} // namespace

namespace {

bool is_additive(const Expr& e)
{
    return e.op() == Op::add || e.op() == Op::sub ||
           (e.op() == Op::neg && (e.arg().op() == Op::add || e.arg().op() == Op::sub));
}

// Leaves of a whole additive chain are simplified first and the chain is
// combined once, so intermediate partial sums never turn into opaque atoms.
void collect_simplified_terms(const Expr& e, const Rational& sign, std::vector<std::pair<Rational, Expr>>& terms)
{
    switch (e.op()) {
    case Op::add:
        collect_simplified_terms(e.arg(0), sign, terms);
        collect_simplified_terms(e.arg(1), sign, terms);
        return;
    case Op::sub:
        collect_simplified_terms(e.arg(0), sign, terms);
        collect_simplified_terms(e.arg(1), -sign, terms);
        return;
    case Op::neg: collect_simplified_terms(e.arg(), -sign, terms); return;
    default: flatten_sum(simplify(e), sign, terms);
    }
}

} // namespace

namespace {

Expr simplify_pass(const Expr& e)
{
    if (e.arity() == 0) {
        return e;
    }
    if (is_additive(e)) {
        std::vector<std::pair<Rational, Expr>> terms;
        collect_simplified_terms(e, Rational(1), terms);
        return combine_terms(terms);
    }
    const Expr a0 = simplify_pass(e.arg(0));
    const Expr a1 = e.arity() == 2 ? simplify_pass(e.arg(1)) : Expr();
    return simplify_node(rebuild(e, a0, a1));
}

} // namespace

// A rewrite can expose a new redex above it (e.g. (-1)*sum becomes -sum),
// so passes repeat until the tree is stable.
Expr simplify(const Expr& e)
{
    constexpr int max_passes = 16;
    Expr current = simplify_pass(e);
    for (int i = 1; i < max_passes; ++i) {
        Expr next = simplify_pass(current);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return current;
}

Expr diff(const Expr& e, const std::string& var) { return simplify(derive(e, var)); }

std::vector<Expr> derivative_chain(const Expr& e, const std::string& var, unsigned order)
{
    std::vector<Expr> chain{e};
    for (unsigned i = 0; i < order; ++i) {
        chain.push_back(diff(chain.back(), var));
    }
    return chain;
}

Expr rewrite_exact(const Expr& e)
{
    if (e.arity() == 0) {
        return e;
    }
    const Expr a0 = rewrite_exact(e.arg(0));
    const Expr a1 = e.arity() == 2 ? rewrite_exact(e.arg(1)) : Expr();
    if (e.op() == Op::sin || e.op() == Op::cos || e.op() == Op::tan) {
        if (auto r = as_pi_multiple(a0)) {
            if (auto v = notable_value(e.op(), *r)) {
                return *v;
            }
        }
    }
    return rebuild(e, a0, a1);
}

} // namespace verinum
