#pragma once

// High-precision reference values for tests: MPFR at 256 bits, completely
// independent of the rational series used by the library.

#include <mpfr.h>

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "verinum/expr.hpp"

namespace oracle {

using verinum::Expr;
using verinum::Interval;
using verinum::Op;
using verinum::Rational;

inline constexpr mpfr_prec_t precision = 256;
inline constexpr long slack_exponent = -150;

class Real {
public:
    Real() { mpfr_init2(v_, precision); }
    explicit Real(const Rational& q) : Real() { mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN); }
    explicit Real(double d) : Real() { mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(const Real& o) : Real() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real& operator=(const Real& o)
    {
        mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static Real pi()
    {
        Real r;
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

template <class F>
Real apply(const Real& a, F f)
{
    Real r;
    f(r.get(), a.get(), MPFR_RNDN);
    return r;
}

template <class F>
Real apply(const Real& a, const Real& b, F f)
{
    Real r;
    f(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

inline Real sin(const Real& x) { return apply(x, mpfr_sin); }
inline Real cos(const Real& x) { return apply(x, mpfr_cos); }
inline Real tan(const Real& x) { return apply(x, mpfr_tan); }
inline Real atan(const Real& x) { return apply(x, mpfr_atan); }
inline Real exp(const Real& x) { return apply(x, mpfr_exp); }
inline Real log(const Real& x) { return apply(x, mpfr_log); }
inline Real sqrt(const Real& x) { return apply(x, mpfr_sqrt); }

// Slack 2^-150 * (1 + |v|) absorbs the oracle's own rounding.
inline Real slack(const Real& v)
{
    Real s;
    mpfr_abs(s.get(), v.get(), MPFR_RNDN);
    mpfr_add_ui(s.get(), s.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(s.get(), s.get(), slack_exponent, MPFR_RNDN);
    return s;
}

// lb - slack <= v <= ub + slack
inline bool encloses(const Rational& lb, const Rational& ub, const Real& v)
{
    const Real s = slack(v);
    const Real hi = apply(v, s, mpfr_add);
    const Real lo = apply(v, s, mpfr_sub);
    return mpfr_cmp_q(hi.get(), lb.raw().get_mpq_t()) >= 0 && mpfr_cmp_q(lo.get(), ub.raw().get_mpq_t()) <= 0;
}

inline bool encloses(const Interval& x, const Real& v) { return !x.is_empty() && encloses(x.lb(), x.ub(), v); }

// |a - b| < 2^-150 * (1 + |a|)
inline bool close(const Real& a, const Real& b)
{
    const Real d = apply(a, b, mpfr_sub);
    Real ad;
    mpfr_abs(ad.get(), d.get(), MPFR_RNDN);
    return mpfr_cmp(ad.get(), slack(a).get()) < 0;
}

using Point = std::map<std::string, Rational>;

// Real value at a point, nullopt where a side condition fails.
inline std::optional<Real> eval(const Expr& e, const Point& at)
{
    switch (e.op()) {
    case Op::constant: return Real(e.value());
    case Op::variable: return Real(at.at(e.name()));
    case Op::pi: return Real::pi();
    default: break;
    }
    const auto a = eval(e.arg(0), at);
    if (!a) {
        return std::nullopt;
    }
    if (e.arity() == 2) {
        const auto b = eval(e.arg(1), at);
        if (!b) {
            return std::nullopt;
        }
        switch (e.op()) {
        case Op::add: return apply(*a, *b, mpfr_add);
        case Op::sub: return apply(*a, *b, mpfr_sub);
        case Op::mul: return apply(*a, *b, mpfr_mul);
        default:
            if (b->is_zero()) {
                return std::nullopt;
            }
            return apply(*a, *b, mpfr_div);
        }
    }
    switch (e.op()) {
    case Op::neg: return apply(*a, mpfr_neg);
    case Op::abs: return apply(*a, mpfr_abs);
    case Op::pow: {
        Real r;
        mpfr_pow_ui(r.get(), a->get(), e.exponent(), MPFR_RNDN);
        return r;
    }
    case Op::sqrt:
        if (a->sign() < 0) {
            return std::nullopt;
        }
        return sqrt(*a);
    case Op::sin: return sin(*a);
    case Op::cos: return cos(*a);
    case Op::tan: {
        const Real c = cos(*a);
        if (c.is_zero()) {
            return std::nullopt;
        }
        return tan(*a);
    }
    case Op::exp: return exp(*a);
    case Op::ln:
        if (a->sign() <= 0) {
            return std::nullopt;
        }
        return log(*a);
    case Op::atan: return atan(*a);
    default: return std::nullopt;
    }
}

// Random rationals with bounded denominators, reproducible from a seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform-ish rational in [lo, hi] with denominator dividing 2^bits * 3^k.
    Rational in(const Rational& lo, const Rational& hi, unsigned bits = 20)
    {
        const long scale = 1L << bits;
        std::uniform_int_distribution<long> d(0, scale);
        Rational t(d(rng_), scale);
        if (coin(0.2)) {
            std::uniform_int_distribution<long> small(0, 9);
            t = Rational(small(rng_), 9);
        }
        return lo + (hi - lo) * t;
    }

    Interval interval(const Rational& lo, const Rational& hi, double point_prob = 0.1)
    {
        Rational a = in(lo, hi);
        Rational b = coin(point_prob) ? a : in(lo, hi);
        if (b < a) {
            std::swap(a, b);
        }
        return {a, b};
    }

    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    unsigned natural(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
