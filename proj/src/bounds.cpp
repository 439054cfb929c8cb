#include "verinum/bounds.hpp"

#include <map>
#include <mutex>

namespace verinum {

namespace series {

Rational sin_partial(const Rational& x, unsigned k)
{
    const Rational minus_x2 = -(x * x);
    Rational term = x;
    Rational sum;
    for (unsigned i = 1; i <= k; ++i) {
        sum += term;
        term *= minus_x2 / Rational(static_cast<long>(2 * i) * static_cast<long>(2 * i + 1));
    }
    return sum;
}

Rational cos_partial(const Rational& x, unsigned k)
{
    const Rational minus_x2 = -(x * x);
    Rational term = minus_x2 / Rational(2);
    Rational sum = 1;
    for (unsigned i = 1; i <= k; ++i) {
        sum += term;
        term *= minus_x2 / Rational(static_cast<long>(2 * i + 1) * static_cast<long>(2 * i + 2));
    }
    return sum;
}

Rational atan_partial(const Rational& x, unsigned k)
{
    const Rational minus_x2 = -(x * x);
    Rational power = x;
    Rational sum;
    for (unsigned i = 0; i <= k; ++i) {
        sum += power / Rational(static_cast<long>(2 * i + 1));
        power *= minus_x2;
    }
    return sum;
}

Rational exp_partial(const Rational& x, unsigned k)
{
    Rational term = 1;
    Rational sum = 1;
    for (unsigned i = 1; i <= k; ++i) {
        term *= x / Rational(static_cast<long>(i));
        sum += term;
    }
    return sum;
}

Rational ln_partial(const Rational& x, unsigned k)
{
    const Rational y = x - Rational(1);
    Rational power = y;
    Rational sum;
    for (unsigned i = 1; i <= k; ++i) {
        const Rational term = power / Rational(static_cast<long>(i));
        if (i % 2 == 1) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= y;
    }
    return sum;
}

} // namespace series

namespace {

Bounds negate(const Bounds& b) { return {-b.ub, -b.lb}; }

// 0 < x <= 1: the alternating series brackets atan(x).
Bounds atan_unit(const Rational& x, ApproxParam n)
{
    return {series::atan_partial(x, 2 * n + 1), series::atan_partial(x, 2 * n)};
}

Bounds compute_pi(ApproxParam n)
{
    const Bounds a5 = atan_unit(Rational(1, 5), n);
    const Bounds a239 = atan_unit(Rational(1, 239), n);
    return {Rational(4) * (Rational(4) * a5.lb - a239.ub), Rational(4) * (Rational(4) * a5.ub - a239.lb)};
}

// -1 <= x < 0
Bounds exp_core(const Rational& x, ApproxParam n)
{
    return {series::exp_partial(x, 2 * (n + 1) + 1), series::exp_partial(x, 2 * (n + 1))};
}

// 1 < x <= 2
Bounds ln_core(const Rational& x, ApproxParam n)
{
    return {series::ln_partial(x, 2 * n), series::ln_partial(x, 2 * n + 1)};
}

} // namespace

Bounds sqrt_bounds(const Rational& x, ApproxParam n)
{
    if (x.sign() < 0) {
        throw DomainError("sqrt of negative rational " + x.str());
    }
    Rational ub = x + Rational(1);
    for (ApproxParam i = 0; i < n; ++i) {
        ub = (ub + x / ub) / Rational(2);
    }
    return {x / ub, ub};
}

Bounds sin_bounds(const Rational& x, ApproxParam n)
{
    if (x.sign() < 0) {
        return negate(sin_bounds(-x, n));
    }
    return {series::sin_partial(x, 2 * n + 2), series::sin_partial(x, 2 * n + 1)};
}

Bounds cos_bounds(const Rational& x, ApproxParam n)
{
    return {series::cos_partial(x, 2 * n + 1), series::cos_partial(x, 2 * n + 2)};
}

Bounds pi_bounds(ApproxParam n)
{
    static std::mutex mutex;
    static std::map<ApproxParam, Bounds> cache;
    const std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, compute_pi(n)).first;
    }
    return it->second;
}

Bounds atan_bounds(const Rational& x, ApproxParam n)
{
    if (x.is_zero()) {
        return {0, 0};
    }
    if (x.sign() < 0) {
        return negate(atan_bounds(-x, n));
    }
    if (x <= Rational(1)) {
        return atan_unit(x, n);
    }
    const Bounds pi = pi_bounds(n);
    const Bounds inv = atan_unit(Rational(1) / x, n);
    return {pi.lb / Rational(2) - inv.ub, pi.ub / Rational(2) - inv.lb};
}

Bounds exp_bounds(const Rational& x, ApproxParam n)
{
    if (x.is_zero()) {
        return {1, 1};
    }
    if (x.sign() > 0) {
        const Bounds neg = exp_bounds(-x, n);
        return {Rational(1) / neg.ub, Rational(1) / neg.lb};
    }
    if (x >= Rational(-1)) {
        return exp_core(x, n);
    }
    // x < -1: exp(x) = exp(x / k)^k with k = -floor(x), x / k in [-1, 0).
    const mpz_class k = -floor(x);
    const Bounds base = exp_core(x / Rational(k, mpz_class(1)), n);
    const unsigned long power = k.get_ui();
    return {pow_nat(base.lb, power), pow_nat(base.ub, power)};
}

LnNat lnnat(const Rational& x, const Rational& k)
{
    if (x < Rational(1) || k <= Rational(1)) {
        throw DomainError("lnnat requires x >= 1 and k > 1");
    }
    LnNat r{0, x};
    while (r.y >= k) {
        r.y /= k;
        ++r.m;
    }
    return r;
}

Bounds ln_bounds(const Rational& x, ApproxParam n)
{
    if (x.sign() <= 0) {
        throw DomainError("ln of non-positive rational " + x.str());
    }
    if (x == Rational(1)) {
        return {0, 0};
    }
    if (x < Rational(1)) {
        return negate(ln_bounds(Rational(1) / x, n));
    }
    if (x <= Rational(2)) {
        return ln_core(x, n);
    }
    const LnNat split = lnnat(x, Rational(2));
    const Bounds ln2 = ln_core(Rational(2), n);
    const Bounds rest = ln_bounds(split.y, n);
    const Rational m(static_cast<long>(split.m));
    return {m * ln2.lb + rest.lb, m * ln2.ub + rest.ub};
}

} // namespace verinum
