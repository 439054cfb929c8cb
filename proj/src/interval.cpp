#include "verinum/interval.hpp"

#include <ostream>
#include <stdexcept>

namespace verinum {

Rel negate(Rel r)
{
    switch (r) {
    case Rel::lt: return Rel::ge;
    case Rel::le: return Rel::gt;
    case Rel::gt: return Rel::le;
    case Rel::ge: return Rel::lt;
    }
    return Rel::lt;
}

std::string to_string(Rel r)
{
    switch (r) {
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::gt: return ">";
    case Rel::ge: return ">=";
    }
    return "?";
}

bool operator==(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) {
        return a.is_empty() && b.is_empty();
    }
    return a.lb_ == b.lb_ && a.ub_ == b.ub_;
}

std::string Interval::str() const
{
    if (is_empty()) {
        return "empty";
    }
    return "[" + lb_.str() + ", " + ub_.str() + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.str(); }

Interval operator+(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    return {x.lb() + y.lb(), x.ub() + y.ub()};
}

Interval operator-(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    return {x.lb() - y.ub(), x.ub() - y.lb()};
}

Interval operator-(const Interval& x)
{
    if (x.is_empty()) {
        return Interval::empty();
    }
    return {-x.ub(), -x.lb()};
}

Interval operator*(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    const Rational& a = x.lb();
    const Rational& b = x.ub();
    const Rational& c = y.lb();
    const Rational& d = y.ub();
    const int sa = a.sign();
    const int sb = b.sign();
    const int sc = c.sign();
    const int sd = d.sign();

    if (sa >= 0) {
        // x >= 0
        if (sc >= 0) {
            return {a * c, b * d};
        }
        if (sd <= 0) {
            return {b * c, a * d};
        }
        return {b * c, b * d};
    }
    if (sb <= 0) {
        // x <= 0
        if (sc >= 0) {
            return {a * d, b * c};
        }
        if (sd <= 0) {
            return {b * d, a * c};
        }
        return {a * d, a * c};
    }
    // x straddles 0
    if (sc >= 0) {
        return {a * d, b * d};
    }
    if (sd <= 0) {
        return {b * c, a * c};
    }
    return {min(a * d, b * c), max(a * c, b * d)};
}

Interval mul_by_products(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return Interval::empty();
    }
    const Rational p[] = {x.lb() * y.lb(), x.lb() * y.ub(), x.ub() * y.lb(), x.ub() * y.ub()};
    Rational lo = p[0];
    Rational hi = p[0];
    for (const auto& v : p) {
        lo = min(lo, v);
        hi = max(hi, v);
    }
    return {lo, hi};
}

Interval operator/(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty() || (y.lb() * y.ub()).sign() <= 0) {
        return Interval::empty();
    }
    return x * Interval(Rational(1) / y.ub(), Rational(1) / y.lb());
}

Interval abs(const Interval& x)
{
    if (x.is_empty()) {
        return Interval::empty();
    }
    const Rational a = verinum::abs(x.lb());
    const Rational b = verinum::abs(x.ub());
    if ((x.lb() * x.ub()).sign() >= 0) {
        return {min(a, b), max(a, b)};
    }
    return {Rational(0), max(a, b)};
}

Interval pow(const Interval& x, unsigned long n)
{
    if (x.is_empty()) {
        return Interval::empty();
    }
    if (n == 0) {
        return Interval(Rational(1));
    }
    const bool odd = n % 2 == 1;
    if (x.lb().sign() >= 0 || odd) {
        return {pow_nat(x.lb(), n), pow_nat(x.ub(), n)};
    }
    if (x.ub().sign() <= 0) {
        return {pow_nat(x.ub(), n), pow_nat(x.lb(), n)};
    }
    return {Rational(0), max(pow_nat(x.lb(), n), pow_nat(x.ub(), n))};
}

Interval hull(const Interval& x, const Interval& y)
{
    if (x.is_empty()) {
        return y;
    }
    if (y.is_empty()) {
        return x;
    }
    return {min(x.lb(), y.lb()), max(x.ub(), y.ub())};
}

bool compare(const Interval& x, Rel rel, const Rational& a)
{
    if (x.is_empty()) {
        return true;
    }
    switch (rel) {
    case Rel::lt: return x.ub() < a;
    case Rel::le: return x.ub() <= a;
    case Rel::gt: return x.lb() > a;
    case Rel::ge: return x.lb() >= a;
    }
    return false;
}

bool subset(const Interval& x, const Interval& y)
{
    if (x.is_empty()) {
        return true;
    }
    if (y.is_empty()) {
        return false;
    }
    return y.lb() <= x.lb() && x.ub() <= y.ub();
}

bool contains(const Interval& x, const Rational& v) { return !x.is_empty() && x.lb() <= v && v <= x.ub(); }

bool disjoint(const Interval& x, const Interval& y)
{
    if (x.is_empty() || y.is_empty()) {
        return true;
    }
    return x.ub() < y.lb() || y.ub() < x.lb();
}

std::vector<Interval> split_even(const Interval& x, unsigned k)
{
    if (x.is_empty()) {
        throw std::domain_error("split_even of the empty interval");
    }
    if (k == 0) {
        throw std::invalid_argument("split_even requires k >= 1");
    }
    std::vector<Interval> tiles;
    tiles.reserve(k);
    const Rational step = x.width() / Rational(static_cast<long>(k));
    Rational lo = x.lb();
    for (unsigned i = 1; i <= k; ++i) {
        Rational hi = i == k ? x.ub() : x.lb() + step * Rational(static_cast<long>(i));
        tiles.emplace_back(lo, hi);
        lo = std::move(hi);
    }
    return tiles;
}

Rational midpoint(const Interval& x)
{
    if (x.is_empty()) {
        throw std::domain_error("midpoint of the empty interval");
    }
    return (x.lb() + x.ub()) / Rational(2);
}

Interval round_outward(const Interval& x, unsigned bits)
{
    if (x.is_empty()) {
        return x;
    }
    return {round_dyadic(x.lb(), bits, RoundDir::down), round_dyadic(x.ub(), bits, RoundDir::up)};
}

} // namespace verinum
