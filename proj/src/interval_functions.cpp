#include "verinum/interval_functions.hpp"

namespace verinum {

namespace {

const Rational half(1, 2);

Interval unit_range() { return {Rational(-1), Rational(1)}; }

} // namespace

Interval sqrt(const Interval& x, ApproxParam n)
{
    if (x.is_empty() || x.lb().sign() < 0) {
        return Interval::empty();
    }
    return {sqrt_bounds(x.lb(), n).lb, sqrt_bounds(x.ub(), n).ub};
}

Interval atan(const Interval& x, ApproxParam n)
{
    if (x.is_empty()) {
        return x;
    }
    return {atan_bounds(x.lb(), n).lb, atan_bounds(x.ub(), n).ub};
}

Interval exp(const Interval& x, ApproxParam n)
{
    if (x.is_empty()) {
        return x;
    }
    return {exp_bounds(x.lb(), n).lb, exp_bounds(x.ub(), n).ub};
}

Interval ln(const Interval& x, ApproxParam n)
{
    if (x.is_empty() || x.lb().sign() <= 0) {
        return Interval::empty();
    }
    return {ln_bounds(x.lb(), n).lb, ln_bounds(x.ub(), n).ub};
}

Interval pi_interval(ApproxParam n)
{
    const Bounds pi = pi_bounds(n);
    return {pi.lb, pi.ub};
}

Interval sin(const Interval& x, ApproxParam n)
{
    if (x.is_empty()) {
        return x;
    }
    const Bounds pi = pi_bounds(n);
    const Rational half_lo = pi.lb * half;
    if (subset(x, {-half_lo, half_lo})) {
        return {sin_bounds(x.lb(), n).lb, sin_bounds(x.ub(), n).ub};
    }
    if (subset(x, {pi.ub * half, pi.lb})) {
        return {sin_bounds(x.ub(), n).lb, sin_bounds(x.lb(), n).ub};
    }
    if (subset(x, {Rational(0), pi.lb})) {
        return {min(sin_bounds(x.lb(), n).lb, sin_bounds(x.ub(), n).lb), Rational(1)};
    }
    if (subset(x, {-pi.lb, Rational(0)})) {
        return -sin(-x, n);
    }
    return unit_range();
}

Interval cos(const Interval& x, ApproxParam n)
{
    if (x.is_empty()) {
        return x;
    }
    const Bounds pi = pi_bounds(n);
    if (subset(x, {Rational(0), pi.lb})) {
        return {cos_bounds(x.ub(), n).lb, cos_bounds(x.lb(), n).ub};
    }
    if (subset(x, {-pi.lb, Rational(0)})) {
        return cos(-x, n);
    }
    const Rational half_lo = pi.lb * half;
    if (subset(x, {-half_lo, half_lo})) {
        return {min(cos_bounds(x.lb(), n).lb, cos_bounds(x.ub(), n).lb), Rational(1)};
    }
    return unit_range();
}

Bounds tan_point_bounds(const Rational& x, ApproxParam m)
{
    if (x.sign() < 0) {
        const Bounds b = tan_point_bounds(-x, m);
        return {-b.ub, -b.lb};
    }
    const Bounds s = sin_bounds(x, m);
    const Bounds c = cos_bounds(x, m);
    if (c.lb.sign() <= 0) {
        throw DomainError("cosine lower bound not positive at " + x.str());
    }
    const Rational& lo_den = s.lb.sign() >= 0 ? c.ub : c.lb;
    return {s.lb / lo_den, s.ub / c.lb};
}

Interval tan(const Interval& x, ApproxParam n)
{
    if (x.is_empty()) {
        return x;
    }
    const ApproxParam m = n + 5;
    const Rational half_lo = pi_bounds(m).lb * half;
    if (!subset(x, {-half_lo, half_lo})) {
        return Interval::empty();
    }
    try {
        return {tan_point_bounds(x.lb(), m).lb, tan_point_bounds(x.ub(), m).ub};
    } catch (const DomainError&) {
        return Interval::empty();
    }
}

} // namespace verinum
